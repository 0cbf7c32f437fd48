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

#include "kpcsim/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "kpcsim/rng.hpp"

namespace kpcsim {

namespace {

using cdouble = std::complex<double>;

Cvec random_vector(Rng& rng, int len) {
    Cvec y(static_cast<std::size_t>(len));
    for (auto& v : y)
        v = rng.complex_gaussian(1.0);
    return y;
}

bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

std::string format_vector(const Cvec& y) {
    std::string out;
    char buf[80];
    for (const cdouble& v : y) {
        std::snprintf(buf, sizeof(buf), "(%.17g,%.17g) ", v.real(), v.imag());
        out += buf;
    }
    return out;
}

void validate_params(const EquivalenceParams& p) {
    if (p.trials < 1)
        throw std::invalid_argument("verify: trials must be >= 1");
    if (p.min_len < 1 || p.max_len < p.min_len)
        throw std::invalid_argument("verify: bad length range");
    if (p.constellations.empty())
        throw std::invalid_argument("verify: constellation list must not be empty");
    for (int n : p.constellations)
        if (n < 2)
            throw std::invalid_argument("verify: constellation sizes must be >= 2");
}

} // namespace

std::string describe(const Counterexample& cx) {
    char head[160];
    std::snprintf(head, sizeof(head), "%s: got %.17g, expected %.17g, N=%d, y = ",
                  cx.what.c_str(), cx.got, cx.expected, cx.n_const);
    return head + format_vector(cx.y);
}

std::optional<Counterexample> check_oracle_equivalence(const EquivalenceParams& params,
                                                       DetectorFn detector) {
    validate_params(params);
    if (!detector)
        detector = [](std::span<const cdouble> y, int n) { return ncsd_detect(y, n); };

    Rng rng(params.seed, 0x0EACE5ULL);
    for (int trial = 0; trial < params.trials; ++trial) {
        const int len =
            params.min_len + static_cast<int>(rng.next_u64() %
                                              static_cast<std::uint64_t>(params.max_len -
                                                                         params.min_len + 1));
        const int n_const = params.constellations[static_cast<std::size_t>(
            rng.next_u64() % params.constellations.size())];
        const Cvec y = random_vector(rng, len);

        const DetectionResult fast = detector(y, n_const);
        const DetectionResult oracle = exhaustive_psk_detect(y, n_const);
        if (!close(fast.metric, oracle.metric, params.tolerance)) {
            return Counterexample{y, n_const, fast.metric, oracle.metric,
                                  "detector metric differs from exhaustive oracle"};
        }
    }
    return std::nullopt;
}

std::optional<Counterexample> check_detection_invariances(const EquivalenceParams& params) {
    validate_params(params);
    Rng rng(params.seed, 0x1277A1ULL);

    auto pick_len = [&] {
        return params.min_len +
               static_cast<int>(rng.next_u64() %
                                static_cast<std::uint64_t>(params.max_len - params.min_len + 1));
    };
    auto pick_const = [&] {
        return params.constellations[static_cast<std::size_t>(rng.next_u64() %
                                                              params.constellations.size())];
    };

    // Global phase: detection is blind to a common rotation of the input.
    for (int trial = 0; trial < params.trials; ++trial) {
        const int n_const = pick_const();
        const Cvec y = random_vector(rng, pick_len());
        const double phi = 2.0 * M_PI * rng.uniform();
        Cvec rotated(y.size());
        for (std::size_t k = 0; k < y.size(); ++k)
            rotated[k] = y[k] * std::polar(1.0, phi);

        const DetectionResult base = ncsd_detect(y, n_const);
        const DetectionResult rot = ncsd_detect(rotated, n_const);
        if (rot.codeword.g != base.codeword.g)
            return Counterexample{y, n_const, rot.metric, base.metric,
                                  "global phase rotation changed the detected codeword"};
        if (!close(rot.metric, base.metric, params.tolerance))
            return Counterexample{y, n_const, rot.metric, base.metric,
                                  "global phase rotation changed the metric"};
    }

    // Positive scale: codeword unchanged, metric scales quadratically.
    for (int trial = 0; trial < params.trials; ++trial) {
        const int n_const = pick_const();
        const Cvec y = random_vector(rng, pick_len());
        const double c = 0.1 + 9.9 * rng.uniform();
        Cvec scaled(y.size());
        for (std::size_t k = 0; k < y.size(); ++k)
            scaled[k] = c * y[k];

        const DetectionResult base = ncsd_detect(y, n_const);
        const DetectionResult big = ncsd_detect(scaled, n_const);
        if (big.codeword.g != base.codeword.g)
            return Counterexample{y, n_const, big.metric, base.metric,
                                  "positive scaling changed the detected codeword"};
        if (!close(big.metric, c * c * base.metric, params.tolerance))
            return Counterexample{y, n_const, big.metric, c * c * base.metric,
                                  "metric did not scale with the squared input scale"};
    }

    // Constellation rotation: a common index offset is canonicalized away.
    for (int trial = 0; trial < params.trials; ++trial) {
        const int n_const = pick_const();
        const int len = pick_len();
        PskCodeword cw;
        cw.n_const = n_const;
        cw.g.resize(static_cast<std::size_t>(len));
        for (int& gi : cw.g)
            gi = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n_const));
        const int offset = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n_const));

        PskCodeword shifted = cw;
        for (int& gi : shifted.g)
            gi = (gi + offset) % n_const;

        if (canonicalize(shifted).g != canonicalize(cw).g)
            return Counterexample{realize(cw), n_const, static_cast<double>(offset), 0.0,
                                  "constellation rotation survived canonicalization"};
    }

    return std::nullopt;
}

double max_unitarity_error(int max_total) {
    if (max_total < 1)
        throw std::invalid_argument("max_unitarity_error: max_total must be >= 1");
    double worst = 0.0;
    for (int a = 1; a <= max_total; ++a)
        for (int b = 1; a * b <= max_total; ++b)
            worst = std::max(worst, verify_unitary_kron(a, b));
    return worst;
}

BenchResult bench_ncsd(std::vector<int> sizes, int repetitions, int n_const, std::uint64_t seed) {
    if (sizes.empty())
        throw std::invalid_argument("bench_ncsd: size list must not be empty");
    for (int s : sizes)
        if (s < 2)
            throw std::invalid_argument("bench_ncsd: sizes must be >= 2");
    if (repetitions < 1)
        throw std::invalid_argument("bench_ncsd: repetitions must be >= 1");

    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    BenchResult result;
    Rng rng(seed, 0xBE7CULL);
    for (int size : sizes) {
        std::vector<Cvec> inputs;
        inputs.reserve(static_cast<std::size_t>(repetitions));
        for (int r = 0; r < repetitions; ++r)
            inputs.push_back(random_vector(rng, size));

        std::vector<double> ns(static_cast<std::size_t>(repetitions));
        for (int r = 0; r < repetitions; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            const DetectionResult det = ncsd_detect(inputs[static_cast<std::size_t>(r)], n_const);
            const auto t1 = std::chrono::steady_clock::now();
            result.checksum += det.metric;
            ns[static_cast<std::size_t>(r)] =
                std::chrono::duration<double, std::nano>(t1 - t0).count();
        }
        std::nth_element(ns.begin(), ns.begin() + repetitions / 2, ns.end());
        result.points.push_back({size, ns[static_cast<std::size_t>(repetitions / 2)]});
    }

    if (result.points.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(result.points.size());
        for (const BenchPoint& p : result.points) {
            const double x = std::log(static_cast<double>(p.size));
            const double y = std::log(p.median_ns);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        result.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return result;
}

} // namespace kpcsim
