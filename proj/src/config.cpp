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

#include "kpcsim/config.hpp"

#include <charconv>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

namespace kpcsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> items;
    while (true) {
        const std::size_t comma = s.find(',');
        if (comma == std::string_view::npos) {
            items.push_back(trim(s));
            break;
        }
        items.push_back(trim(s.substr(0, comma)));
        s.remove_prefix(comma + 1);
    }
    return items;
}

double parse_double(std::string_view v, int line) {
    const std::string buf(v);
    char* end = nullptr;
    const double value = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size())
        throw ConfigError(line, "expected a number, got '" + buf + "'");
    return value;
}

long long parse_int(std::string_view v, int line) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(line, "expected an integer, got '" + std::string(v) + "'");
    return value;
}

std::uint64_t parse_u64(std::string_view v, int line) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(line, "expected an unsigned integer, got '" + std::string(v) + "'");
    return value;
}

} // namespace

SimConfig CliConfig::sim_config(Scheme scheme, int threads) const {
    SimConfig sim;
    sim.channel = channel;
    sim.codebook = codebook;
    sim.codebook.m_th = channel.m_th;
    sim.codebook.m_tv = channel.m_tv;
    sim.scheme = scheme;
    sim.snr_db_list = snr_db_list;
    sim.iterations = iterations;
    sim.symbols_per_iteration = symbols_per_iteration;
    sim.dft_oversample = dft_oversample;
    sim.seed = seed;
    sim.threads = threads;
    return sim;
}

void CliConfig::validate() const {
    try {
        channel.validate();
        CodebookSpec cb = codebook;
        cb.m_th = channel.m_th;
        cb.m_tv = channel.m_tv;
        cb.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    if (schemes.empty())
        throw ConfigError(0, "schemes list must not be empty");
    if (snr_db_list.empty())
        throw ConfigError(0, "snr_db list must not be empty");
    if (iterations < 1)
        throw ConfigError(0, "iterations must be >= 1");
    if (symbols_per_iteration < 1)
        throw ConfigError(0, "symbols_per_iteration must be >= 1");
    if (dft_oversample < 1)
        throw ConfigError(0, "dft_oversample must be >= 1");
}

CliConfig parse_config_text(std::string_view text) {
    CliConfig cfg;
    std::set<std::string> seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(line_no, "expected 'key = value'");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(line_no, "empty key");
        if (value.empty())
            throw ConfigError(line_no, "empty value for key '" + key + "'");
        if (!seen.insert(key).second)
            throw ConfigError(line_no, "duplicate key '" + key + "'");

        if (key == "m_th") {
            cfg.channel.m_th = static_cast<int>(parse_int(value, line_no));
        } else if (key == "m_tv") {
            cfg.channel.m_tv = static_cast<int>(parse_int(value, line_no));
        } else if (key == "d_h") {
            cfg.channel.d_h = parse_double(value, line_no);
        } else if (key == "d_v") {
            cfg.channel.d_v = parse_double(value, line_no);
        } else if (key == "i_mpc") {
            cfg.channel.i_mpc = static_cast<int>(parse_int(value, line_no));
        } else if (key == "mean_azimuth") {
            cfg.channel.mean_azimuth = parse_double(value, line_no);
        } else if (key == "mean_elevation") {
            cfg.channel.mean_elevation = parse_double(value, line_no);
        } else if (key == "angular_spread") {
            cfg.channel.angular_spread = parse_double(value, line_no);
        } else if (key == "n_h") {
            cfg.codebook.n_h = static_cast<int>(parse_int(value, line_no));
        } else if (key == "n_v") {
            cfg.codebook.n_v = static_cast<int>(parse_int(value, line_no));
        } else if (key == "schemes") {
            cfg.schemes.clear();
            for (std::string_view item : split_list(value)) {
                const auto scheme = scheme_from_name(item);
                if (!scheme)
                    throw ConfigError(line_no, "unknown scheme '" + std::string(item) +
                                                   "' (expected 3d-psk, 2d-dft, or 3d-dft)");
                cfg.schemes.push_back(*scheme);
            }
        } else if (key == "snr_db") {
            cfg.snr_db_list.clear();
            for (std::string_view item : split_list(value))
                cfg.snr_db_list.push_back(parse_double(item, line_no));
        } else if (key == "iterations") {
            cfg.iterations = static_cast<int>(parse_int(value, line_no));
        } else if (key == "symbols_per_iteration") {
            cfg.symbols_per_iteration = static_cast<int>(parse_int(value, line_no));
        } else if (key == "dft_oversample") {
            cfg.dft_oversample = static_cast<int>(parse_int(value, line_no));
        } else if (key == "seed") {
            cfg.seed = parse_u64(value, line_no);
        } else {
            throw ConfigError(line_no, "unknown key '" + key + "'");
        }
    }

    cfg.validate();
    return cfg;
}

CliConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(0, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string render_config(const CliConfig& cfg) {
    std::ostringstream out;
    out << "m_th = " << cfg.channel.m_th << '\n';
    out << "m_tv = " << cfg.channel.m_tv << '\n';
    out << "d_h = " << fmt_double(cfg.channel.d_h) << '\n';
    out << "d_v = " << fmt_double(cfg.channel.d_v) << '\n';
    out << "i_mpc = " << cfg.channel.i_mpc << '\n';
    out << "mean_azimuth = " << fmt_double(cfg.channel.mean_azimuth) << '\n';
    out << "mean_elevation = " << fmt_double(cfg.channel.mean_elevation) << '\n';
    out << "angular_spread = " << fmt_double(cfg.channel.angular_spread) << '\n';
    out << "n_h = " << cfg.codebook.n_h << '\n';
    out << "n_v = " << cfg.codebook.n_v << '\n';
    out << "schemes = ";
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
        out << (i ? "," : "") << scheme_name(cfg.schemes[i]);
    out << '\n';
    out << "snr_db = ";
    for (std::size_t i = 0; i < cfg.snr_db_list.size(); ++i)
        out << (i ? "," : "") << fmt_double(cfg.snr_db_list[i]);
    out << '\n';
    out << "iterations = " << cfg.iterations << '\n';
    out << "symbols_per_iteration = " << cfg.symbols_per_iteration << '\n';
    out << "dft_oversample = " << cfg.dft_oversample << '\n';
    out << "seed = " << cfg.seed << '\n';
    return out.str();
}

std::string render_manifest(const CliConfig& cfg, const std::string& output_path, int threads) {
    char stamp[64] = "unknown";
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    if (gmtime_r(&now, &tm_utc) != nullptr)
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);

    std::ostringstream out;
    out << "# kpcsim run manifest; feed this file back to `kpcsim simulate --config` to\n";
    out << "# regenerate the paired output byte for byte.\n";
    out << "# version = " << kToolVersion << '\n';
    out << "# created = " << stamp << '\n';
    out << "# output = " << output_path << '\n';
    out << "# threads = " << threads << '\n';
    out << render_config(cfg);
    return out.str();
}

} // namespace kpcsim
