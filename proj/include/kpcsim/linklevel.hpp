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

#ifndef KPCSIM_LINKLEVEL_HPP
#define KPCSIM_LINKLEVEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpcsim/quantizer.hpp"

namespace kpcsim {

/// Beamformer selection strategies compared in the BER experiments.
enum class Scheme {
    kThreeDPsk, // Kronecker PSK codebook quantized by per-factor detection
    kTwoDDft,   // exhaustive max |H v| over a length-M_t DFT codebook
    kThreeDDft, // exhaustive over the Kronecker product of two DFT codebooks
};

std::string_view scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(std::string_view name);

/// One Monte Carlo experiment: a channel ensemble, a codebook, one scheme,
/// and an SNR sweep. Per-symbol transmit SNR is P/N0 with P = 1.
struct SimConfig {
    ChannelConfig channel;
    CodebookSpec codebook;
    Scheme scheme = Scheme::kThreeDPsk;
    std::vector<double> snr_db_list;
    int iterations = 200;
    int symbols_per_iteration = 1024;
    int dft_oversample = 1;
    std::uint64_t seed = 0;
    int threads = 1; // 0 = all hardware threads

    /// Throws std::invalid_argument on bad counts or when the channel and
    /// codebook disagree on the array geometry.
    void validate() const;
};

/// Aggregated result for one (scheme, SNR) point.
struct BerRecord {
    std::string scheme;
    double snr_db = 0.0;
    long trials = 0;
    long long total_bits = 0;
    long long bit_errors = 0;
    double ber = 0.0;
    double empirical_rho = 0.0;
};

/// Gray-mapped QPSK symbol for one bit pair; first bit selects the real
/// sign, second the imaginary sign, (0,0) -> (1+j)/sqrt(2). Unit power.
std::complex<double> qpsk_symbol(int bit_re, int bit_im);

/// Maps an even-length bit stream to symbols. Odd length is a framing error.
Cvec qpsk_modulate(const std::vector<int>& bits);

/// Coherent ML decision: derotate by the known effective channel's phase and
/// slice per quadrant. Exact-zero components decide for the positive bit.
/// Throws std::invalid_argument for a zero effective channel.
std::pair<int, int> qpsk_demodulate(std::complex<double> y,
                                    std::complex<double> effective_channel);

struct TrialCounts {
    long long bit_errors = 0;
    long long total_bits = 0;
};

/// Sends n_symbols random QPSK symbols over a fixed complex effective
/// channel with CN(0, n0) noise and coherent demodulation; the transmission
/// chain used by every Monte Carlo trial.
TrialCounts transmit_qpsk_block(std::complex<double> effective_channel, int n_symbols,
                                double n0, Rng& rng);

/// One fading block: draws a channel from the trial's own RNG stream
/// (derived from cfg.seed and trial_index), selects the scheme's beamformer,
/// and transmits one symbol block. The stream does not depend on snr_db, so
/// a trial reuses its channel, bits, and noise shape across the SNR sweep.
TrialCounts run_trial(const SimConfig& cfg, double snr_db, long trial_index);

/// Full sweep: iterations trials per SNR point, trial-parallel, aggregation
/// in trial order so results are identical for any thread count. Attaches
/// the ensemble's empirical adjacent-antenna correlation (1.0 for a single
/// antenna, where no pairs exist).
std::vector<BerRecord> run_sweep(const SimConfig& cfg);

/// CSV serialization: header scheme,snr_db,trials,total_bits,bit_errors,ber,empirical_rho.
std::string ber_csv(const std::vector<BerRecord>& records);

} // namespace kpcsim

#endif // KPCSIM_LINKLEVEL_HPP
