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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kpcsim/config.hpp"
#include "kpcsim/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const std::optional<std::uint64_t>& seed_override, int threads) {
    kpcsim::CliConfig cfg = kpcsim::parse_config_file(config_path);
    if (seed_override)
        cfg.seed = *seed_override;

    std::vector<kpcsim::BerRecord> records;
    for (kpcsim::Scheme scheme : cfg.schemes) {
        const kpcsim::SimConfig sim = cfg.sim_config(scheme, threads);
        std::vector<kpcsim::BerRecord> part = kpcsim::run_sweep(sim);
        records.insert(records.end(), part.begin(), part.end());
    }

    write_file(out_path, kpcsim::ber_csv(records));
    const std::string manifest_path = out_path + ".manifest";
    write_file(manifest_path, kpcsim::render_manifest(cfg, out_path, threads));

    std::cout << "wrote " << records.size() << " records to " << out_path << "\n"
              << "manifest: " << manifest_path << "\n";
    return kExitOk;
}

kpcsim::Cvec read_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw kpcsim::ConfigError(0, "cannot open channel file '" + path + "'");
    kpcsim::Cvec h;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r')
                trimmed += c;
        if (trimmed.empty())
            continue;
        double re = 0.0, im = 0.0;
        if (std::sscanf(trimmed.c_str(), "%lf,%lf", &re, &im) != 2)
            throw kpcsim::ConfigError(line_no, "expected 're,im', got '" + line + "'");
        h.emplace_back(re, im);
    }
    if (h.empty())
        throw kpcsim::ConfigError(0, "channel file '" + path + "' holds no entries");
    return h;
}

int cmd_quantize(const std::string& channel_path, int m_th, int m_tv, int n_h, int n_v) {
    const kpcsim::Cvec h = read_channel_file(channel_path);
    if (h.size() != static_cast<std::size_t>(m_th) * static_cast<std::size_t>(m_tv))
        throw kpcsim::ConfigError(0, "channel file holds " + std::to_string(h.size()) +
                                         " entries but m_th*m_tv = " +
                                         std::to_string(static_cast<long long>(m_th) * m_tv));

    const kpcsim::CodebookSpec spec{n_h, n_v, m_th, m_tv};
    const kpcsim::QuantizedCsi q = kpcsim::quantize_csi(h, spec);
    const double gain = kpcsim::beamforming_gain(h, q.beamformer.w);

    std::ostringstream out;
    out << "g_h=";
    for (std::size_t i = 0; i < q.beamformer.g_h.g.size(); ++i)
        out << (i ? "," : "") << q.beamformer.g_h.g[i];
    out << " g_v=";
    for (std::size_t i = 0; i < q.beamformer.g_v.g.size(); ++i)
        out << (i ? "," : "") << q.beamformer.g_v.g[i];
    char tail[64];
    std::snprintf(tail, sizeof(tail), " bits=%d gain=%.10g", q.bits, gain);
    std::cout << out.str() << tail << "\n";
    return kExitOk;
}

int cmd_verify(int max_len, int max_const, int trials, std::uint64_t seed) {
    kpcsim::EquivalenceParams params;
    params.trials = trials;
    params.min_len = 2;
    params.max_len = max_len;
    params.seed = seed;
    params.constellations.clear();
    for (int n = 2; n <= max_const; n *= 2)
        params.constellations.push_back(n);
    if (params.constellations.empty())
        throw kpcsim::ConfigError(0, "--max-const must be >= 2");
    double search_space = 1.0;
    for (int i = 1; i < max_len; ++i)
        search_space *= max_const;
    if (search_space > static_cast<double>(kpcsim::kDefaultEnumerationCap))
        throw kpcsim::ConfigError(0, "bounds exceed the exhaustive enumeration cap");

    std::cout << "seed = " << seed << "\n";
    bool ok = true;
    if (const auto cx = kpcsim::check_oracle_equivalence(params)) {
        std::cout << "FAIL oracle equivalence: " << kpcsim::describe(*cx) << "\n";
        ok = false;
    } else {
        std::cout << "PASS oracle equivalence (" << trials << " trials)\n";
    }

    kpcsim::EquivalenceParams inv = params;
    inv.trials = std::max(1, trials / 10);
    if (const auto cx = kpcsim::check_detection_invariances(inv)) {
        std::cout << "FAIL detection invariances: " << kpcsim::describe(*cx) << "\n";
        ok = false;
    } else {
        std::cout << "PASS detection invariances (" << inv.trials << " trials each)\n";
    }

    const double unitarity = kpcsim::max_unitarity_error(256);
    if (unitarity < 1e-10) {
        std::cout << "PASS Kronecker DFT unitarity (max error " << unitarity << ")\n";
    } else {
        std::cout << "FAIL Kronecker DFT unitarity (max error " << unitarity << ")\n";
        ok = false;
    }

    return ok ? kExitOk : kExitRuntime;
}

int cmd_bench(std::vector<int> sizes, int reps, std::uint64_t seed) {
    const kpcsim::BenchResult result = kpcsim::bench_ncsd(std::move(sizes), reps, 4, seed);
    std::printf("seed = %llu\n", static_cast<unsigned long long>(seed));
    std::printf("%8s  %14s\n", "size", "median ns/op");
    for (const kpcsim::BenchPoint& p : result.points)
        std::printf("%8d  %14.1f\n", p.size, p.median_ns);
    if (result.slope)
        std::printf("log-log slope: %.3f\n", *result.slope);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kpcsim: limited-feedback FD-MIMO beamforming link-level simulator"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run BER sweeps from a config file");
    std::string config_path;
    std::string out_path = "ber_results.csv";
    std::optional<std::uint64_t> seed_override;
    int threads = 0;
    simulate->add_option("--config", config_path, "key = value config file")->required();
    simulate->add_option("--out", out_path, "output CSV path");
    simulate->add_option("--seed", seed_override, "override the config seed");
    simulate->add_option("--threads", threads, "worker threads (0 = auto)");

    // quantize
    auto* quantize = app.add_subcommand("quantize", "quantize one channel vector from file");
    std::string channel_path;
    int m_th = 1, m_tv = 1, n_h = 4, n_v = 4;
    quantize->add_option("channel_file", channel_path, "text file of re,im lines")->required();
    quantize->add_option("--m-th", m_th, "horizontal antennas")->required();
    quantize->add_option("--m-tv", m_tv, "vertical antennas")->required();
    quantize->add_option("--n-h", n_h, "horizontal constellation size");
    quantize->add_option("--n-v", n_v, "vertical constellation size");

    // verify
    auto* verify = app.add_subcommand("verify", "randomized detector and codebook checks");
    int max_len = 6, max_const = 8, trials = 10000;
    std::uint64_t verify_seed = 1;
    verify->add_option("--max-len", max_len, "largest detector input length")
        ->check(CLI::Range(2, 24));
    verify->add_option("--max-const", max_const, "largest constellation size");
    verify->add_option("--trials", trials, "random trials")->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_seed, "rng seed");

    // bench
    auto* bench = app.add_subcommand("bench", "time the detector across input sizes");
    std::vector<int> sizes = {64, 256, 1024, 4096};
    int reps = 200;
    std::uint64_t bench_seed = 1;
    bench->add_option("--sizes", sizes, "input lengths to time")->delimiter(',');
    bench->add_option("--reps", reps, "repetitions per size")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_seed, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed())
            return cmd_simulate(config_path, out_path, seed_override, threads);
        if (quantize->parsed())
            return cmd_quantize(channel_path, m_th, m_tv, n_h, n_v);
        if (verify->parsed())
            return cmd_verify(max_len, max_const, trials, verify_seed);
        if (bench->parsed())
            return cmd_bench(sizes, reps, bench_seed);
    } catch (const kpcsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
