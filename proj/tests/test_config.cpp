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

#include <string>

#include "doctest.h"
#include "kpcsim/config.hpp"

using kpcsim::CliConfig;
using kpcsim::ConfigError;
using kpcsim::Scheme;

TEST_CASE("minimal config parses with defaults") {
    const CliConfig cfg = kpcsim::parse_config_text("m_th = 2\n"
                                                    "m_tv = 2\n"
                                                    "snr_db = 4\n");
    CHECK(cfg.channel.m_th == 2);
    CHECK(cfg.channel.m_tv == 2);
    CHECK(cfg.channel.d_h == 0.5);
    CHECK(cfg.codebook.n_h == 4);
    CHECK(cfg.snr_db_list == std::vector<double>{4.0});
    CHECK(cfg.schemes == std::vector<Scheme>{Scheme::kThreeDPsk});
    CHECK(cfg.iterations == 200);
    CHECK(cfg.symbols_per_iteration == 1024);
    CHECK(cfg.seed == 12345);
}

TEST_CASE("comments, blank lines, and lists are handled") {
    const CliConfig cfg = kpcsim::parse_config_text("# experiment setup\n"
                                                    "m_th = 4   # horizontal\n"
                                                    "m_tv = 4\n"
                                                    "\n"
                                                    "schemes = 3d-psk, 2d-dft,3d-dft\n"
                                                    "snr_db = -2, 0, 2.5\n"
                                                    "angular_spread = 0.25\n");
    CHECK(cfg.schemes ==
          std::vector<Scheme>{Scheme::kThreeDPsk, Scheme::kTwoDDft, Scheme::kThreeDDft});
    CHECK(cfg.snr_db_list == std::vector<double>{-2.0, 0.0, 2.5});
    CHECK(cfg.channel.angular_spread == 0.25);
}

TEST_CASE("unknown keys are rejected with their line number") {
    try {
        kpcsim::parse_config_text("m_th = 2\nm_tv = 2\nfoo = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("foo") != std::string::npos);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("malformed values and duplicates are rejected") {
    CHECK_THROWS_AS(kpcsim::parse_config_text("m_th = two\n"), ConfigError);
    CHECK_THROWS_AS(kpcsim::parse_config_text("m_th = 2\nm_th = 3\n"), ConfigError);
    CHECK_THROWS_AS(kpcsim::parse_config_text("m_th\n"), ConfigError);
    CHECK_THROWS_AS(kpcsim::parse_config_text("m_th =\n"), ConfigError);
    CHECK_THROWS_AS(kpcsim::parse_config_text("schemes = 4d-psk\n"), ConfigError);
    CHECK_THROWS_AS(kpcsim::parse_config_text("snr_db = 1,,2\n"), ConfigError);
    CHECK_THROWS_AS(kpcsim::parse_config_text("iterations = 0\n"), ConfigError);
    CHECK_THROWS_AS(kpcsim::parse_config_text("n_h = 3\n"), ConfigError);
}

TEST_CASE("rendered configs parse back identically") {
    CliConfig cfg = kpcsim::parse_config_text("m_th = 8\n"
                                              "m_tv = 4\n"
                                              "mean_azimuth = 0.77777777777777779\n"
                                              "angular_spread = 0.1234567890123456\n"
                                              "schemes = 3d-psk,3d-dft\n"
                                              "snr_db = -1.5,2\n"
                                              "seed = 987654321\n");
    const CliConfig round = kpcsim::parse_config_text(kpcsim::render_config(cfg));
    CHECK(round.channel.m_th == cfg.channel.m_th);
    CHECK(round.channel.m_tv == cfg.channel.m_tv);
    CHECK(round.channel.mean_azimuth == cfg.channel.mean_azimuth);
    CHECK(round.channel.angular_spread == cfg.channel.angular_spread);
    CHECK(round.schemes == cfg.schemes);
    CHECK(round.snr_db_list == cfg.snr_db_list);
    CHECK(round.seed == cfg.seed);
}

TEST_CASE("manifests are parseable configs with provenance comments") {
    const CliConfig cfg = kpcsim::parse_config_text("m_th = 2\nm_tv = 2\n");
    const std::string manifest = kpcsim::render_manifest(cfg, "out.csv", 2);
    CHECK(manifest.find("# version = ") != std::string::npos);
    CHECK(manifest.find("# output = out.csv") != std::string::npos);
    const CliConfig back = kpcsim::parse_config_text(manifest);
    CHECK(back.channel.m_th == 2);
    CHECK(back.seed == cfg.seed);
}

TEST_CASE("sim_config copies the geometry into the codebook") {
    const CliConfig cfg = kpcsim::parse_config_text("m_th = 8\nm_tv = 2\nn_h = 8\n");
    const kpcsim::SimConfig sim = cfg.sim_config(Scheme::kTwoDDft, 3);
    CHECK(sim.codebook.m_th == 8);
    CHECK(sim.codebook.m_tv == 2);
    CHECK(sim.codebook.n_h == 8);
    CHECK(sim.scheme == Scheme::kTwoDDft);
    CHECK(sim.threads == 3);
    sim.validate();
}
