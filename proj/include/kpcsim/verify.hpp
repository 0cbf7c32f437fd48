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

#ifndef KPCSIM_VERIFY_HPP
#define KPCSIM_VERIFY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kpcsim/quantizer.hpp"

namespace kpcsim {

using DetectorFn =
    std::function<DetectionResult(std::span<const std::complex<double>>, int)>;

/// Failing input captured by a randomized check, with enough context to
/// reproduce and a short description of the violated property.
struct Counterexample {
    Cvec y;
    int n_const = 0;
    double got = 0.0;
    double expected = 0.0;
    std::string what;
};

std::string describe(const Counterexample& cx);

struct EquivalenceParams {
    int trials = 10000;
    int min_len = 2;
    int max_len = 6;
    std::vector<int> constellations = {2, 4, 8};
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
};

/// Draws random complex inputs and compares detector's attained metric with
/// the exhaustive oracle's. Returns the first mismatch, if any. The detector
/// defaults to ncsd_detect; tests may inject a broken one to exercise the
/// harness itself.
std::optional<Counterexample> check_oracle_equivalence(const EquivalenceParams& params,
                                                       DetectorFn detector = {});

/// Global-phase, positive-scale, and constellation-rotation invariances of
/// ncsd_detect over `trials` random inputs per property.
std::optional<Counterexample> check_detection_invariances(const EquivalenceParams& params);

/// Max Frobenius unitarity error of the Kronecker DFT construction over all
/// factor pairs with product <= max_total.
double max_unitarity_error(int max_total);

struct BenchPoint {
    int size = 0;
    double median_ns = 0.0;
};

struct BenchResult {
    std::vector<BenchPoint> points; // ascending size
    std::optional<double> slope;    // log-log fit; absent for a single size
    double checksum = 0.0;          // consumes the detector outputs
};

/// Times ncsd_detect over random inputs per size, >= repetitions samples each;
/// reports the per-call median and the fitted log-log slope. Sizes are sorted;
/// each must be >= 2.
BenchResult bench_ncsd(std::vector<int> sizes, int repetitions, int n_const, std::uint64_t seed);

} // namespace kpcsim

#endif // KPCSIM_VERIFY_HPP
