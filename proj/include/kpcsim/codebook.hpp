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

#ifndef KPCSIM_CODEBOOK_HPP
#define KPCSIM_CODEBOOK_HPP

#include <cstdint>
#include <vector>

#include "kpcsim/channel.hpp"

namespace kpcsim {

/// PSK phase-index sequence: complex entry k is exp(j 2 pi g[k] / n_const).
/// Canonical form has g[0] == 0.
struct PskCodeword {
    std::vector<int> g;
    int n_const = 2;

    int length() const { return static_cast<int>(g.size()); }
    bool is_canonical() const { return !g.empty() && g.front() == 0; }
};

/// Rotate all indices so g[0] == 0 and every index lies in [0, n_const).
PskCodeword canonicalize(const PskCodeword& cw);

/// Complex realization, entry k = exp(j 2 pi g[k] / N).
Cvec realize(const PskCodeword& cw);

/// The N constellation points exp(j 2 pi t / N), t = 0..N-1.
Cvec psk_constellation(int n_const);

/// Steps indices 1..L-1 through [0, n_const)^(L-1) in ascending lexicographic
/// order (rightmost index fastest); g[0] stays pinned. Returns false once the
/// last pattern has been visited.
bool advance_codeword(std::vector<int>& g, int n_const);

/// Factor codebook parameters: per-factor constellation size and length.
struct CodebookSpec {
    int n_h = 4;
    int n_v = 4;
    int m_th = 1;
    int m_tv = 1;

    int total_antennas() const { return m_th * m_tv; }

    /// Throws std::invalid_argument unless sizes >= 1 and constellation
    /// sizes are powers of two (feedback-bit accounting).
    void validate() const;
};

/// Unit-norm equal-gain beamformer assembled from two factor codewords:
/// w[n*m_th + m] = realize(g_h)[m] * realize(g_v)[n] / sqrt(m_th*m_tv).
struct KpcBeamformer {
    Cvec w;
    PskCodeword g_h;
    PskCodeword g_v;
};

KpcBeamformer kron_beamformer(const PskCodeword& g_h, const PskCodeword& g_v);

constexpr std::uint64_t kDefaultEnumerationCap = 1ULL << 24;

/// Number of canonical codeword pairs: n_h^(m_th-1) * n_v^(m_tv-1).
/// Throws std::length_error (message names the count) when above cap.
std::uint64_t kpc_codebook_size(const CodebookSpec& spec, std::uint64_t cap = kDefaultEnumerationCap);

/// Materializes every canonical pair's beamformer exactly once, g_h outer /
/// g_v inner, each factor in ascending lexicographic index order.
std::vector<KpcBeamformer> enumerate_kpc(const CodebookSpec& spec,
                                         std::uint64_t cap = kDefaultEnumerationCap);

/// m * oversample unit-norm vectors; vector q has entry k
/// exp(-j 2 pi k q / (m*oversample)) / sqrt(m). oversample == 1 yields the
/// columns of the unitary m-point DFT matrix.
std::vector<Cvec> dft_codebook(int m, int oversample);

/// Frobenius norm of U_K U_K^H - I for U_K = U_H (x) U_V built from the
/// square unitary DFT matrices of sizes m_th and m_tv.
double verify_unitary_kron(int m_th, int m_tv);

/// Feedback budget: (m_th-1)*log2(n_h) + (m_tv-1)*log2(n_v). The leading
/// element of each factor is pinned by canonicalization and costs nothing.
int feedback_bits(const CodebookSpec& spec);

} // namespace kpcsim

#endif // KPCSIM_CODEBOOK_HPP
