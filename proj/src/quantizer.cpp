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

#include "kpcsim/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpcsim {

namespace {

using cdouble = std::complex<double>;

void check_input(std::span<const cdouble> y, int n_const) {
    if (y.empty())
        throw std::invalid_argument("detect: input vector is empty");
    if (n_const < 2)
        throw std::invalid_argument("detect: constellation size must be >= 2");
    for (const cdouble& v : y) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("detect: non-finite input entry");
        if (v == cdouble{0.0, 0.0})
            throw std::invalid_argument("detect: zero input entry has undefined phase");
    }
}

// |y^H x|^2 / L for the realization of a canonical index vector.
double detection_metric(std::span<const cdouble> y, const PskCodeword& cw) {
    const Cvec x = realize(cw);
    cdouble acc{0.0, 0.0};
    for (std::size_t k = 0; k < x.size(); ++k)
        acc += std::conj(y[k]) * x[k];
    return std::norm(acc) / static_cast<double>(x.size());
}

} // namespace

std::pair<Cvec, Cvec> decompose_channel(std::span<const cdouble> h, int m_th, int m_tv) {
    if (m_th < 1 || m_tv < 1)
        throw std::invalid_argument("decompose_channel: factor lengths must be >= 1");
    if (h.size() != static_cast<std::size_t>(m_th) * static_cast<std::size_t>(m_tv))
        throw std::invalid_argument("decompose_channel: channel length " +
                                    std::to_string(h.size()) + " does not equal m_th*m_tv = " +
                                    std::to_string(static_cast<long long>(m_th) * m_tv));
    Cvec h_hat_h(h.begin(), h.begin() + m_th);
    Cvec h_hat_v(static_cast<std::size_t>(m_tv));
    for (int n = 0; n < m_tv; ++n)
        h_hat_v[static_cast<std::size_t>(n)] = h[static_cast<std::size_t>(n) * m_th];
    return {std::move(h_hat_h), std::move(h_hat_v)};
}

DetectionResult ncsd_detect(std::span<const cdouble> y, int n_const) {
    check_input(y, n_const);
    const std::size_t len = y.size();
    const double scale = n_const / (2.0 * M_PI);

    // Scaled phases, nearest constellation indices, and rounding residuals.
    // Residuals r[k] = g[k] - arg[k] are the crossover order: as the test
    // rotation advances through one constellation step, entry k's nearest
    // index increments when the rotation crosses 0.5 - (-r[k]), so smaller
    // residuals flip earlier.
    std::vector<long> g(len);
    std::vector<double> residual(len);
    Cvec p(len); // terms of y^H x at the initial rounding
    cdouble initial{0.0, 0.0};
    for (std::size_t k = 0; k < len; ++k) {
        const double a = std::arg(y[k]) * scale;
        const double r = std::round(a); // half away from zero
        g[k] = static_cast<long>(r);
        residual[k] = r - a;
        p[k] = std::conj(y[k]) * std::polar(1.0, 2.0 * M_PI * r / n_const);
        initial += p[k];
    }

    std::vector<std::size_t> order(len);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (residual[i] != residual[j])
            return residual[i] < residual[j];
        return i < j;
    });

    // Walk the L+1 decision states; state b has the first b entries (in
    // crossover order) advanced by one index. Ties keep the smallest b.
    const cdouble step = std::polar(1.0, 2.0 * M_PI / n_const) - 1.0;
    cdouble acc = initial;
    double best = std::norm(acc);
    std::size_t best_state = 0;
    for (std::size_t b = 1; b <= len; ++b) {
        acc += p[order[b - 1]] * step;
        const double value = std::norm(acc);
        if (value > best) {
            best = value;
            best_state = b;
        }
    }
    for (std::size_t b = 0; b < best_state; ++b)
        ++g[order[b]];

    PskCodeword raw;
    raw.n_const = n_const;
    raw.g.resize(len);
    for (std::size_t k = 0; k < len; ++k)
        raw.g[k] = static_cast<int>(g[k] % n_const);

    DetectionResult result;
    result.codeword = canonicalize(raw);
    result.metric = detection_metric(y, result.codeword);
    return result;
}

DetectionResult exhaustive_psk_detect(std::span<const cdouble> y, int n_const,
                                      std::uint64_t cap) {
    check_input(y, n_const);
    const std::size_t len = y.size();

    long double count = 1.0L;
    for (std::size_t k = 1; k < len; ++k)
        count *= n_const;
    if (count > static_cast<long double>(cap)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.0Lf", count);
        throw std::length_error(std::string("exhaustive_psk_detect: search space of ") + buf +
                                " codewords is above the cap of " + std::to_string(cap));
    }

    const Cvec roots = psk_constellation(n_const);
    PskCodeword candidate{std::vector<int>(len, 0), n_const};
    PskCodeword best_cw = candidate;
    double best = -1.0;
    do {
        cdouble acc{0.0, 0.0};
        for (std::size_t k = 0; k < len; ++k)
            acc += std::conj(y[k]) * roots[static_cast<std::size_t>(candidate.g[k])];
        const double value = std::norm(acc) / static_cast<double>(len);
        if (value > best) { // lexicographic enumeration: first max wins
            best = value;
            best_cw = candidate;
        }
    } while (advance_codeword(candidate.g, n_const));

    return DetectionResult{best_cw, best};
}

QuantizedCsi quantize_csi(std::span<const cdouble> h, const CodebookSpec& spec) {
    spec.validate();
    auto [h_hat_h, h_hat_v] = decompose_channel(h, spec.m_th, spec.m_tv);

    // The detector aligns its codeword with the input phases; beamforming
    // needs the conjugate profile, so detect on the conjugated sub-vectors.
    Cvec conj_h(h_hat_h.size()), conj_v(h_hat_v.size());
    std::transform(h_hat_h.begin(), h_hat_h.end(), conj_h.begin(),
                   [](cdouble v) { return std::conj(v); });
    std::transform(h_hat_v.begin(), h_hat_v.end(), conj_v.begin(),
                   [](cdouble v) { return std::conj(v); });

    const DetectionResult det_h = ncsd_detect(conj_h, spec.n_h);
    const DetectionResult det_v = ncsd_detect(conj_v, spec.n_v);

    QuantizedCsi out;
    out.beamformer = kron_beamformer(det_h.codeword, det_v.codeword);
    out.h_hat_h = std::move(h_hat_h);
    out.h_hat_v = std::move(h_hat_v);
    out.bits = feedback_bits(spec);
    return out;
}

KpcBeamformer exhaustive_kpc_search(std::span<const cdouble> h, const CodebookSpec& spec,
                                    std::uint64_t cap) {
    kpc_codebook_size(spec, cap);
    if (h.size() != static_cast<std::size_t>(spec.total_antennas()))
        throw std::invalid_argument("exhaustive_kpc_search: channel length mismatch");

    const int m_th = spec.m_th;
    const int m_tv = spec.m_tv;
    const Cvec roots_h = psk_constellation(spec.n_h);
    const Cvec roots_v = psk_constellation(spec.n_v);

    PskCodeword gh{std::vector<int>(static_cast<std::size_t>(m_th), 0), spec.n_h};
    PskCodeword best_h = gh;
    PskCodeword best_v{std::vector<int>(static_cast<std::size_t>(m_tv), 0), spec.n_v};
    double best = -1.0;

    std::vector<cdouble> row_sums(static_cast<std::size_t>(m_tv));
    do {
        // row_sums[n] = sum_m h[n*m_th + m] * x_h[m], shared across all g_v
        for (int n = 0; n < m_tv; ++n) {
            cdouble acc{0.0, 0.0};
            for (int m = 0; m < m_th; ++m)
                acc += h[static_cast<std::size_t>(n * m_th + m)] *
                       roots_h[static_cast<std::size_t>(gh.g[static_cast<std::size_t>(m)])];
            row_sums[static_cast<std::size_t>(n)] = acc;
        }
        PskCodeword gv{std::vector<int>(static_cast<std::size_t>(m_tv), 0), spec.n_v};
        do {
            cdouble acc{0.0, 0.0};
            for (int n = 0; n < m_tv; ++n)
                acc += row_sums[static_cast<std::size_t>(n)] *
                       roots_v[static_cast<std::size_t>(gv.g[static_cast<std::size_t>(n)])];
            const double value = std::norm(acc); // common 1/M_t scale omitted
            if (value > best) {
                best = value;
                best_h = gh;
                best_v = gv;
            }
        } while (advance_codeword(gv.g, spec.n_v));
    } while (advance_codeword(gh.g, spec.n_h));

    return kron_beamformer(best_h, best_v);
}

double beamforming_gain(std::span<const cdouble> h, std::span<const cdouble> w) {
    if (h.size() != w.size())
        throw std::invalid_argument("beamforming_gain: length mismatch");
    cdouble acc{0.0, 0.0};
    for (std::size_t k = 0; k < h.size(); ++k)
        acc += h[k] * w[k];
    return std::norm(acc);
}

} // namespace kpcsim
