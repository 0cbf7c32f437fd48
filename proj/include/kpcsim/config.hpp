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

#ifndef KPCSIM_CONFIG_HPP
#define KPCSIM_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kpcsim/linklevel.hpp"

namespace kpcsim {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Parse or validation failure; line is 0 when no single line is to blame.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

/// Resolved simulation configuration: one channel/codebook description plus
/// the scheme list a simulate run expands into per-scheme sweeps.
struct CliConfig {
    ChannelConfig channel;
    CodebookSpec codebook;
    std::vector<Scheme> schemes = {Scheme::kThreeDPsk};
    std::vector<double> snr_db_list = {0.0, 2.0, 4.0, 6.0, 8.0};
    int iterations = 200;
    int symbols_per_iteration = 1024;
    int dft_oversample = 1;
    std::uint64_t seed = 12345;

    /// SimConfig for one scheme of the list.
    SimConfig sim_config(Scheme scheme, int threads) const;

    /// Cross-field validation; throws ConfigError.
    void validate() const;
};

/// Parses flat `key = value` text ('#' comments, comma-separated lists).
/// Unknown or duplicate keys and malformed values raise ConfigError with the
/// offending line number.
CliConfig parse_config_text(std::string_view text);

/// parse_config_text over a file's contents; missing file raises ConfigError.
CliConfig parse_config_file(const std::string& path);

/// Every key, fully resolved, in parseable form; doubles round-trip exactly.
std::string render_config(const CliConfig& cfg);

/// Provenance header ('#' comments: version, timestamp, output path, thread
/// count) followed by the resolved config, itself a valid config file.
std::string render_manifest(const CliConfig& cfg, const std::string& output_path, int threads);

} // namespace kpcsim

#endif // KPCSIM_CONFIG_HPP
