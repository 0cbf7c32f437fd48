// SPDX-License-Identifier: Apache-2.0
//
// kpcsim - limited-feedback FD-MIMO beamforming and link-level simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef KPCSIM_QUANTIZER_HPP
#define KPCSIM_QUANTIZER_HPP

#include <complex>
#include <span>
#include <utility>

#include "kpcsim/codebook.hpp"

namespace kpcsim {

/// Outcome of noncoherent PSK sequence detection: the canonical codeword and
/// the objective |y^H x|^2 / L it attains (L = codeword length, so the
/// denominator is ||x||^2 for unit-modulus entries).
struct DetectionResult {
    PskCodeword codeword;
    double metric = 0.0;
};

/// Splits a length m_th*m_tv channel into the sub-vectors that carry the
/// horizontal and vertical phase profiles: the first array row, and the
/// first antenna of every row (stride m_th).
std::pair<Cvec, Cvec> decompose_channel(std::span<const std::complex<double>> h, int m_th,
                                        int m_tv);

/// Maximizes |y^H x|^2 over all length-L sequences x of N-PSK symbols with
/// the crossover-angle sweep: round the scaled phases, sort the rounding
/// residuals, and walk the L+1 decision states reachable as the unknown
/// channel phase rotates through one constellation step. O(L log L).
/// Throws std::invalid_argument for zero or non-finite entries.
DetectionResult ncsd_detect(std::span<const std::complex<double>> y, int n_const);

/// Brute-force reference for ncsd_detect: enumerates every canonical
/// codeword (N^(L-1) candidates, cap-checked), ties broken toward the
/// lexicographically smallest index vector.
DetectionResult exhaustive_psk_detect(std::span<const std::complex<double>> y, int n_const,
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// Quantized channel state: the assembled beamformer, the two sub-vectors it
/// was derived from, and the feedback bit count.
struct QuantizedCsi {
    KpcBeamformer beamformer;
    Cvec h_hat_h;
    Cvec h_hat_v;
    int bits = 0;
};

/// Full quantization pipeline: decompose, detect each factor, assemble.
/// Detection runs on the conjugated sub-vectors so that the beamformer
/// co-phases the channel: |h w| is maximal when w carries the conjugate
/// phase profile, while the detector returns the codeword matching its
/// input's phases.
QuantizedCsi quantize_csi(std::span<const std::complex<double>> h, const CodebookSpec& spec);

/// Optimal-search reference: argmax of |h v|^2 over the whole Kronecker
/// product codebook, ties broken by enumeration order.
KpcBeamformer exhaustive_kpc_search(std::span<const std::complex<double>> h,
                                    const CodebookSpec& spec,
                                    std::uint64_t cap = kDefaultEnumerationCap);

/// Received power |sum_k h[k] w[k]|^2 of a beamformer against a channel row.
double beamforming_gain(std::span<const std::complex<double>> h,
                        std::span<const std::complex<double>> w);

} // namespace kpcsim

#endif // KPCSIM_QUANTIZER_HPP
