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
//
// End-to-end acceptance runs, one printed line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "kpcsim/linklevel.hpp"
#include "kpcsim/verify.hpp"

namespace {

using kpcsim::ChannelConfig;
using kpcsim::CodebookSpec;
using kpcsim::Cvec;
using kpcsim::Rng;
using kpcsim::Scheme;
using kpcsim::SimConfig;

using cdouble = std::complex<double>;

int g_failures = 0;

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool pass, const std::string& label, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %d: %s (%s, %.1f s)\n", pass ? "PASS" : "FAIL", criterion,
                label.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// ---------------------------------------------------------------------------

void criterion_1_oracle_equivalence() {
    Timer timer;
    kpcsim::EquivalenceParams params;
    params.trials = 10000;
    params.min_len = 2;
    params.max_len = 6;
    params.constellations = {2, 4, 8};
    params.tolerance = 1e-9;
    params.seed = 20260810;
    const auto cx = kpcsim::check_oracle_equivalence(params);
    report(1, !cx.has_value(), "sweep detector matches the exhaustive oracle",
           cx ? kpcsim::describe(*cx) : "10000 random trials, L in 2..6, N in {2,4,8}",
           timer.seconds());
}

void criterion_2_invariances() {
    Timer timer;
    kpcsim::EquivalenceParams params;
    params.trials = 1000;
    params.min_len = 2;
    params.max_len = 6;
    params.constellations = {2, 4, 8};
    params.tolerance = 1e-9;
    params.seed = 31337;
    const auto cx = kpcsim::check_detection_invariances(params);
    report(2, !cx.has_value(), "phase, scale, and rotation invariances",
           cx ? kpcsim::describe(*cx) : "1000 random inputs per property", timer.seconds());
}

void criterion_3_unitarity() {
    Timer timer;
    const double worst = kpcsim::max_unitarity_error(256);
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max Frobenius error %.3e over all M_t <= 256", worst);
    report(3, worst < 1e-10, "Kronecker DFT matrices stay unitary", detail, timer.seconds());
}

void criterion_4_separable_exactness() {
    Timer timer;
    struct Geometry {
        int m_th, m_tv;
    };
    const std::vector<Geometry> geometries = {{2, 2}, {4, 2}, {4, 4}, {8, 8}};
    Rng rng(460);
    int checked_exhaustive = 0;
    bool pass = true;
    std::string detail = "1000 on-grid channels, gain = M_t|alpha|^2 to 1e-9";

    for (int i = 0; i < 1000 && pass; ++i) {
        const Geometry geo = geometries[static_cast<std::size_t>(i) % geometries.size()];
        const CodebookSpec spec{4, 4, geo.m_th, geo.m_tv};
        const int m_t = spec.total_antennas();

        cdouble alpha = rng.complex_gaussian(1.0);
        if (std::abs(alpha) < 1e-3)
            alpha = {0.5, 0.5};
        const int k_mu = static_cast<int>(rng.next_u64() % 4);
        const int k_up = static_cast<int>(rng.next_u64() % 4);

        const Cvec dh = kpcsim::steering_horizontal(2.0 * M_PI * k_mu / 4.0, geo.m_th);
        const Cvec dv = kpcsim::steering_vertical(2.0 * M_PI * k_up / 4.0, geo.m_tv);
        Cvec h(static_cast<std::size_t>(m_t));
        for (int n = 0; n < geo.m_tv; ++n)
            for (int m = 0; m < geo.m_th; ++m)
                h[static_cast<std::size_t>(n * geo.m_th + m)] =
                    alpha * dh[static_cast<std::size_t>(m)] * dv[static_cast<std::size_t>(n)];

        const double gain =
            kpcsim::beamforming_gain(h, kpcsim::quantize_csi(h, spec).beamformer.w);
        const double ideal = m_t * std::norm(alpha);
        if (std::abs(gain - ideal) > 1e-9 * ideal) {
            pass = false;
            char buf[128];
            std::snprintf(buf, sizeof(buf), "gain %.17g vs ideal %.17g at %dx%d", gain, ideal,
                          geo.m_th, geo.m_tv);
            detail = buf;
            break;
        }

        if (m_t <= 16) {
            const double oracle =
                kpcsim::beamforming_gain(h, kpcsim::exhaustive_kpc_search(h, spec).w);
            ++checked_exhaustive;
            if (std::abs(gain - oracle) > 1e-9 * std::max(1.0, oracle)) {
                pass = false;
                char buf[128];
                std::snprintf(buf, sizeof(buf), "gain %.17g vs oracle %.17g at %dx%d", gain,
                              oracle, geo.m_th, geo.m_tv);
                detail = buf;
                break;
            }
        }
    }
    if (pass)
        detail += ", " + std::to_string(checked_exhaustive) + " matched the exhaustive search";
    report(4, pass, "on-grid separable channels quantize exactly", detail, timer.seconds());
}

void criterion_5_complexity_slope() {
    Timer timer;
    const kpcsim::BenchResult bench = kpcsim::bench_ncsd({64, 256, 1024, 4096}, 150, 4, 8);
    char detail[160];
    std::string meds;
    for (const auto& p : bench.points) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%d:%.0fns ", p.size, p.median_ns);
        meds += buf;
    }
    std::snprintf(detail, sizeof(detail), "slope %.3f, medians %s",
                  bench.slope.value_or(-1.0), meds.c_str());
    report(5, bench.slope && *bench.slope <= 1.3, "detection cost scales near-linearly", detail,
           timer.seconds());
}

void criterion_6_awgn_oracle() {
    Timer timer;
    const double snr_db = 4.0;
    const double snr = std::pow(10.0, snr_db / 10.0);
    const int n_symbols = 1000000;
    Rng rng(6001);
    const kpcsim::TrialCounts counts =
        kpcsim::transmit_qpsk_block({1.0, 0.0}, n_symbols, 1.0 / snr, rng);

    // Gray QPSK per-bit error rate: Q(sqrt(Es/N0)) = Q(sqrt(2 Eb/N0)).
    const double p0 = q_function(std::sqrt(snr));
    const double measured =
        static_cast<double>(counts.bit_errors) / static_cast<double>(counts.total_bits);
    const double sigma = std::sqrt(p0 * (1.0 - p0) / static_cast<double>(counts.total_bits));
    char detail[160];
    std::snprintf(detail, sizeof(detail), "measured %.5g vs theory %.5g (+-3 sigma = %.2g)",
                  measured, p0, 3.0 * sigma);
    report(6, std::abs(measured - p0) <= 3.0 * sigma, "AWGN QPSK BER matches the closed form",
           detail, timer.seconds());
}

// ---------------------------------------------------------------------------

// Few dominant paths keep the high-correlation ensemble near-separable, the
// regime the Kronecker quantizer targets; correlation is then set by the
// angular spread alone.
constexpr int kTableMultipaths = 2;

// Mean departure directions the comparisons average over, so that no single
// alignment between the ensemble and a DFT beam grid drives the outcome.
constexpr double kMeanAngles[][2] = {{0.7, 1.25}, {1.9, 0.9}, {4.1, 1.8}, {2.8, 1.1}};

ChannelConfig table_channel(int m_th, int m_tv, double azimuth, double elevation,
                            std::uint64_t seed) {
    ChannelConfig cfg;
    cfg.m_th = m_th;
    cfg.m_tv = m_tv;
    cfg.i_mpc = kTableMultipaths;
    cfg.mean_azimuth = azimuth;
    cfg.mean_elevation = elevation;
    cfg.seed = seed;
    return cfg;
}

// Correlation decreases with angular spread; bisect to the target.
double calibrate_spread(ChannelConfig cfg, double target_rho, int n_samples) {
    double lo = 0.0, hi = 2.5;
    for (int iter = 0; iter < 16; ++iter) {
        cfg.angular_spread = 0.5 * (lo + hi);
        const double rho = kpcsim::empirical_correlation(cfg, n_samples);
        if (rho > target_rho)
            lo = cfg.angular_spread;
        else
            hi = cfg.angular_spread;
    }
    return 0.5 * (lo + hi);
}

SimConfig table_sim(const ChannelConfig& channel, Scheme scheme, int n_h, int n_v,
                    int oversample, double snr_db) {
    SimConfig sim;
    sim.channel = channel;
    sim.codebook = {n_h, n_v, channel.m_th, channel.m_tv};
    sim.scheme = scheme;
    sim.dft_oversample = oversample;
    sim.snr_db_list = {snr_db};
    sim.iterations = 200;
    sim.symbols_per_iteration = 1024;
    sim.seed = channel.seed;
    return sim;
}

struct PairedComparison {
    double ber_a = 0.0;
    double ber_b = 0.0;
    double mean_diff = 0.0; // per-trial errors_b - errors_a
    double z = 0.0;         // paired one-sided z statistic for diff > 0
    double sd = 0.0;
    long trials = 0;
};

// 200 paired trials (identical channels, bits, and noise for both schemes),
// split evenly across the mean departure angles; z-test on the per-trial
// bit-error differences.
PairedComparison paired_comparison(double target_rho, Scheme scheme_a, Scheme scheme_b,
                                   double snr_db) {
    constexpr int kAngles = static_cast<int>(std::size(kMeanAngles));
    constexpr int kTrialsPerAngle = 200 / kAngles;
    std::vector<double> diffs;
    long long err_a = 0, err_b = 0, bits = 0;
    for (int ai = 0; ai < kAngles; ++ai) {
        ChannelConfig channel =
            table_channel(8, 8, kMeanAngles[ai][0], kMeanAngles[ai][1], 246 + ai);
        channel.angular_spread = calibrate_spread(channel, target_rho, 400);
        const SimConfig sim_a = table_sim(channel, scheme_a, 8, 4, 1, snr_db);
        const SimConfig sim_b = table_sim(channel, scheme_b, 8, 4, 1, snr_db);
        for (int t = 0; t < kTrialsPerAngle; ++t) {
            const kpcsim::TrialCounts ca = kpcsim::run_trial(sim_a, snr_db, t);
            const kpcsim::TrialCounts cb = kpcsim::run_trial(sim_b, snr_db, t);
            diffs.push_back(static_cast<double>(cb.bit_errors - ca.bit_errors));
            err_a += ca.bit_errors;
            err_b += cb.bit_errors;
            bits += ca.total_bits;
        }
    }
    PairedComparison out;
    out.trials = static_cast<long>(diffs.size());
    out.ber_a = static_cast<double>(err_a) / static_cast<double>(bits);
    out.ber_b = static_cast<double>(err_b) / static_cast<double>(bits);
    double mean = 0.0;
    for (double d : diffs)
        mean += d;
    mean /= static_cast<double>(diffs.size());
    double var = 0.0;
    for (double d : diffs)
        var += (d - mean) * (d - mean);
    var /= static_cast<double>(diffs.size() - 1);
    out.mean_diff = mean;
    out.sd = std::sqrt(var);
    out.z = out.sd > 0.0
                ? mean / (out.sd / std::sqrt(static_cast<double>(diffs.size())))
                : 0.0;
    return out;
}

void criterion_7_table_ordering() {
    Timer timer;

    // Operating point chosen so the baseline sits at the reference BER
    // regime (a few times 1e-2); under the per-entry unit-power channel
    // normalization that is -8 dB transmit SNR at 8x8.
    const double snr_db = -8.0;

    const PairedComparison high =
        paired_comparison(0.9, Scheme::kThreeDPsk, Scheme::kThreeDDft, snr_db);
    const bool high_ok = high.mean_diff > 0.0 && high.z >= 1.645;

    const PairedComparison low =
        paired_comparison(0.6, Scheme::kThreeDPsk, Scheme::kThreeDDft, snr_db);
    const bool low_ok = low.mean_diff <= 0.0 || std::abs(low.z) <= 2.0;

    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "rho 0.9: psk %.3e vs dft %.3e (z=%+.2f); rho 0.6: psk %.3e vs dft %.3e "
                  "(z=%+.2f); %ld paired trials at %.0f dB",
                  high.ber_a, high.ber_b, high.z, low.ber_a, low.ber_b, low.z, high.trials,
                  snr_db);
    report(7, high_ok && low_ok, "BER ordering follows the correlation regime", detail,
           timer.seconds());
}

// Interpolated SNR where the BER curve crosses the target, in dB.
std::optional<double> ber_crossing(const std::vector<kpcsim::BerRecord>& records,
                                   double target) {
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double p0 = records[i - 1].ber;
        const double p1 = records[i].ber;
        if (p0 >= target && p1 <= target && p1 > 0.0 && p0 > p1) {
            const double l0 = std::log10(p0);
            const double l1 = std::log10(p1);
            const double frac = (l0 - std::log10(target)) / (l0 - l1);
            return records[i - 1].snr_db + frac * (records[i].snr_db - records[i - 1].snr_db);
        }
    }
    return std::nullopt;
}

// Horizontal shift between the 3d-psk and 2d-dft curves at the reference
// BER, averaged over mean departure angles. The flat DFT baseline keeps a
// fixed 64-vector budget at both array sizes (oversample 4 at 4x4, 1 at
// 8x8), as a fixed-rate codebook would.
std::optional<double> coding_gain(int m, double angular_spread) {
    const int oversample = 64 / (m * m);
    std::vector<double> grid;
    for (double s = -16.0; s <= 8.0 + 1e-9; s += 1.0)
        grid.push_back(s);

    double gain_sum = 0.0;
    int gain_count = 0;
    for (const auto& angle : kMeanAngles) {
        ChannelConfig channel = table_channel(m, m, angle[0], angle[1], 246);
        channel.angular_spread = angular_spread;
        SimConfig psk = table_sim(channel, Scheme::kThreeDPsk, 16, 16, oversample, 0.0);
        psk.snr_db_list = grid;
        SimConfig dft = table_sim(channel, Scheme::kTwoDDft, 16, 16, oversample, 0.0);
        dft.snr_db_list = grid;

        const auto cross_psk = ber_crossing(kpcsim::run_sweep(psk), 4e-2);
        const auto cross_dft = ber_crossing(kpcsim::run_sweep(dft), 4e-2);
        if (!cross_psk || !cross_dft)
            return std::nullopt;
        gain_sum += *cross_dft - *cross_psk;
        ++gain_count;
    }
    return gain_sum / gain_count;
}

void criterion_8_coding_gain_trend() {
    Timer timer;

    // High correlation: small spread around each mean direction.
    const double spread = 0.06;
    const auto gain_small = coding_gain(4, spread);
    const auto gain_large = coding_gain(8, spread);

    char detail[160];
    if (gain_small && gain_large) {
        std::snprintf(detail, sizeof(detail),
                      "gain at BER 4e-2: 4x4 %+.2f dB, 8x8 %+.2f dB (rho ~0.99)", *gain_small,
                      *gain_large);
    } else {
        std::snprintf(detail, sizeof(detail), "BER 4e-2 crossing not bracketed by the grid");
    }
    const bool pass =
        gain_small && gain_large && *gain_small > 0.3 && *gain_large > *gain_small;
    report(8, pass, "gain over the flat DFT codebook grows with the array", detail,
           timer.seconds());
}

void criterion_9_suboptimality_bound() {
    Timer timer;
    const std::vector<CodebookSpec> specs = {
        {2, 2, 2, 2}, {4, 4, 2, 2}, {4, 4, 4, 2}, {4, 4, 2, 4}, {2, 2, 4, 4}};
    Rng rng(900);
    int violations = 0;
    int total = 0;
    for (const CodebookSpec& spec : specs) {
        for (int draw = 0; draw < 200; ++draw) {
            Cvec h(static_cast<std::size_t>(spec.total_antennas()));
            for (auto& v : h)
                v = rng.complex_gaussian(1.0);
            const double fast =
                kpcsim::beamforming_gain(h, kpcsim::quantize_csi(h, spec).beamformer.w);
            const double oracle =
                kpcsim::beamforming_gain(h, kpcsim::exhaustive_kpc_search(h, spec).w);
            ++total;
            if (oracle < fast - 1e-9 * std::max(1.0, fast))
                ++violations;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%d violations over %d enumerable instances",
                  violations, total);
    report(9, violations == 0, "exhaustive search dominates the fast quantizer", detail,
           timer.seconds());
}

} // namespace

int main() {
    criterion_1_oracle_equivalence();
    criterion_2_invariances();
    criterion_3_unitarity();
    criterion_4_separable_exactness();
    criterion_5_complexity_slope();
    criterion_6_awgn_oracle();
    criterion_7_table_ordering();
    criterion_8_coding_gain_trend();
    criterion_9_suboptimality_bound();

    std::printf("%s: %d of 9 criteria failed\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
