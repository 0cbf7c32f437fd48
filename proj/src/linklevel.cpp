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

#include "kpcsim/linklevel.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "kpcsim/parallel.hpp"

namespace kpcsim {

namespace {

using cdouble = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr int kRhoSamples = 1000;

double noise_power(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

// Per-sweep beamformer selection state; DFT codebooks are built once.
class Selector {
  public:
    explicit Selector(const SimConfig& cfg) : cfg_(cfg) {
        switch (cfg.scheme) {
        case Scheme::kThreeDPsk:
            break;
        case Scheme::kTwoDDft:
            flat_ = dft_codebook(cfg.codebook.total_antennas(), cfg.dft_oversample);
            break;
        case Scheme::kThreeDDft:
            factor_h_ = dft_codebook(cfg.codebook.m_th, cfg.dft_oversample);
            factor_v_ = dft_codebook(cfg.codebook.m_tv, cfg.dft_oversample);
            break;
        }
    }

    Cvec select(const Cvec& h) const {
        switch (cfg_.scheme) {
        case Scheme::kThreeDPsk:
            return quantize_csi(h, cfg_.codebook).beamformer.w;
        case Scheme::kTwoDDft:
            return select_flat(h);
        case Scheme::kThreeDDft:
            return select_factored(h);
        }
        throw std::logic_error("Selector: unknown scheme");
    }

  private:
    Cvec select_flat(const Cvec& h) const {
        const Cvec* best = nullptr;
        double best_gain = -1.0;
        for (const Cvec& v : flat_) {
            const double gain = beamforming_gain(h, v);
            if (gain > best_gain) {
                best_gain = gain;
                best = &v;
            }
        }
        return *best;
    }

    Cvec select_factored(const Cvec& h) const {
        const int m_th = cfg_.codebook.m_th;
        const int m_tv = cfg_.codebook.m_tv;
        std::size_t best_h = 0, best_v = 0;
        double best_gain = -1.0;
        std::vector<cdouble> row_sums(static_cast<std::size_t>(m_tv));
        for (std::size_t qh = 0; qh < factor_h_.size(); ++qh) {
            const Cvec& vh = factor_h_[qh];
            for (int n = 0; n < m_tv; ++n) {
                cdouble acc{0.0, 0.0};
                for (int m = 0; m < m_th; ++m)
                    acc += h[static_cast<std::size_t>(n * m_th + m)] *
                           vh[static_cast<std::size_t>(m)];
                row_sums[static_cast<std::size_t>(n)] = acc;
            }
            for (std::size_t qv = 0; qv < factor_v_.size(); ++qv) {
                const Cvec& vv = factor_v_[qv];
                cdouble acc{0.0, 0.0};
                for (int n = 0; n < m_tv; ++n)
                    acc += row_sums[static_cast<std::size_t>(n)] * vv[static_cast<std::size_t>(n)];
                const double gain = std::norm(acc);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_h = qh;
                    best_v = qv;
                }
            }
        }
        const Cvec& vh = factor_h_[best_h];
        const Cvec& vv = factor_v_[best_v];
        Cvec w(static_cast<std::size_t>(m_th) * static_cast<std::size_t>(m_tv));
        for (int n = 0; n < m_tv; ++n)
            for (int m = 0; m < m_th; ++m)
                w[static_cast<std::size_t>(n * m_th + m)] =
                    vh[static_cast<std::size_t>(m)] * vv[static_cast<std::size_t>(n)];
        return w;
    }

    const SimConfig& cfg_;
    std::vector<Cvec> flat_;
    std::vector<Cvec> factor_h_;
    std::vector<Cvec> factor_v_;
};

cdouble effective_channel_of(const Cvec& h, const Cvec& w) {
    cdouble acc{0.0, 0.0};
    for (std::size_t k = 0; k < h.size(); ++k)
        acc += h[k] * w[k];
    return acc;
}

} // namespace

std::string_view scheme_name(Scheme s) {
    switch (s) {
    case Scheme::kThreeDPsk:
        return "3d-psk";
    case Scheme::kTwoDDft:
        return "2d-dft";
    case Scheme::kThreeDDft:
        return "3d-dft";
    }
    return "?";
}

std::optional<Scheme> scheme_from_name(std::string_view name) {
    if (name == "3d-psk")
        return Scheme::kThreeDPsk;
    if (name == "2d-dft")
        return Scheme::kTwoDDft;
    if (name == "3d-dft")
        return Scheme::kThreeDDft;
    return std::nullopt;
}

void SimConfig::validate() const {
    channel.validate();
    codebook.validate();
    if (channel.m_th != codebook.m_th || channel.m_tv != codebook.m_tv)
        throw std::invalid_argument("SimConfig: channel and codebook array geometry differ");
    if (snr_db_list.empty())
        throw std::invalid_argument("SimConfig: snr_db_list must not be empty");
    if (iterations < 1)
        throw std::invalid_argument("SimConfig: iterations must be >= 1");
    if (symbols_per_iteration < 1)
        throw std::invalid_argument("SimConfig: symbols_per_iteration must be >= 1");
    if (dft_oversample < 1)
        throw std::invalid_argument("SimConfig: dft_oversample must be >= 1");
    if (threads < 0)
        throw std::invalid_argument("SimConfig: threads must be >= 0");
}

cdouble qpsk_symbol(int bit_re, int bit_im) {
    return {bit_re ? -kInvSqrt2 : kInvSqrt2, bit_im ? -kInvSqrt2 : kInvSqrt2};
}

Cvec qpsk_modulate(const std::vector<int>& bits) {
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("qpsk_modulate: odd bit count");
    Cvec symbols(bits.size() / 2);
    for (std::size_t s = 0; s < symbols.size(); ++s)
        symbols[s] = qpsk_symbol(bits[2 * s], bits[2 * s + 1]);
    return symbols;
}

std::pair<int, int> qpsk_demodulate(cdouble y, cdouble effective_channel) {
    const double mag = std::abs(effective_channel);
    if (mag == 0.0)
        throw std::invalid_argument("qpsk_demodulate: zero effective channel");
    const cdouble z = y * std::conj(effective_channel) / mag;
    return {z.real() < 0.0 ? 1 : 0, z.imag() < 0.0 ? 1 : 0};
}

TrialCounts transmit_qpsk_block(cdouble effective_channel, int n_symbols, double n0, Rng& rng) {
    if (n_symbols < 1)
        throw std::invalid_argument("transmit_qpsk_block: n_symbols must be >= 1");
    TrialCounts counts;
    for (int s = 0; s < n_symbols; ++s) {
        const int b_re = rng.bit();
        const int b_im = rng.bit();
        const cdouble x = qpsk_symbol(b_re, b_im);
        const cdouble y = effective_channel * x + rng.complex_gaussian(n0);
        const auto [d_re, d_im] = qpsk_demodulate(y, effective_channel);
        counts.bit_errors += (d_re != b_re) + (d_im != b_im);
    }
    counts.total_bits = 2LL * n_symbols;
    return counts;
}

TrialCounts run_trial(const SimConfig& cfg, double snr_db, long trial_index) {
    cfg.validate();
    const Selector selector(cfg);
    Rng rng(cfg.seed, static_cast<std::uint64_t>(trial_index));
    const Cvec h = generate_channel(cfg.channel, rng);
    const Cvec w = selector.select(h);
    const cdouble g = effective_channel_of(h, w);
    return transmit_qpsk_block(g, cfg.symbols_per_iteration, noise_power(snr_db), rng);
}

std::vector<BerRecord> run_sweep(const SimConfig& cfg) {
    cfg.validate();
    const Selector selector(cfg);

    const double rho = cfg.channel.total_antennas() > 1
                           ? empirical_correlation(cfg.channel, kRhoSamples)
                           : 1.0;

    const std::size_t n_trials = static_cast<std::size_t>(cfg.iterations);
    const std::size_t n_snr = cfg.snr_db_list.size();
    std::vector<std::vector<TrialCounts>> counts(n_trials, std::vector<TrialCounts>(n_snr));

    parallel_for(n_trials, cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(t));
            const Cvec h = generate_channel(cfg.channel, rng);
            const Cvec w = selector.select(h);
            const cdouble g = effective_channel_of(h, w);
            for (std::size_t i = 0; i < n_snr; ++i) {
                Rng replay = rng; // symbol stream is identical at every SNR
                counts[t][i] = transmit_qpsk_block(g, cfg.symbols_per_iteration,
                                                   noise_power(cfg.snr_db_list[i]), replay);
            }
        }
    });

    std::vector<BerRecord> records(n_snr);
    for (std::size_t i = 0; i < n_snr; ++i) {
        BerRecord rec;
        rec.scheme = std::string(scheme_name(cfg.scheme));
        rec.snr_db = cfg.snr_db_list[i];
        rec.trials = cfg.iterations;
        for (std::size_t t = 0; t < n_trials; ++t) {
            rec.bit_errors += counts[t][i].bit_errors;
            rec.total_bits += counts[t][i].total_bits;
        }
        rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.total_bits);
        rec.empirical_rho = rho;
        records[i] = std::move(rec);
    }
    return records;
}

std::string ber_csv(const std::vector<BerRecord>& records) {
    std::string out = "scheme,snr_db,trials,total_bits,bit_errors,ber,empirical_rho\n";
    char line[256];
    for (const BerRecord& r : records) {
        std::snprintf(line, sizeof(line), "%s,%.10g,%ld,%lld,%lld,%.10g,%.10g\n",
                      r.scheme.c_str(), r.snr_db, r.trials, r.total_bits, r.bit_errors, r.ber,
                      r.empirical_rho);
        out += line;
    }
    return out;
}

} // namespace kpcsim
