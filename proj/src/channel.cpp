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

#include "kpcsim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kpcsim {

namespace {

double wrap_two_pi(double x) {
    const double two_pi = 2.0 * M_PI;
    double r = std::fmod(x, two_pi);
    if (r < 0.0)
        r += two_pi;
    return r;
}

} // namespace

void ChannelConfig::validate() const {
    if (m_th < 1 || m_tv < 1)
        throw std::invalid_argument("ChannelConfig: antenna counts must be >= 1");
    if (!(d_h > 0.0) || !(d_v > 0.0))
        throw std::invalid_argument("ChannelConfig: antenna spacings must be > 0");
    if (i_mpc < 1)
        throw std::invalid_argument("ChannelConfig: i_mpc must be >= 1");
    if (!(angular_spread >= 0.0))
        throw std::invalid_argument("ChannelConfig: angular_spread must be >= 0");
    if (!std::isfinite(mean_azimuth) || !std::isfinite(mean_elevation))
        throw std::invalid_argument("ChannelConfig: mean angles must be finite");
}

AngleOfDeparture AngleOfDeparture::normalized() const {
    AngleOfDeparture out;
    out.azimuth = wrap_two_pi(azimuth);
    out.elevation = std::fmin(std::fmax(elevation, 0.0), M_PI);
    return out;
}

Cvec steering_horizontal(double mu, int m_th) {
    if (m_th < 1)
        throw std::invalid_argument("steering_horizontal: m_th must be >= 1");
    Cvec v(static_cast<std::size_t>(m_th));
    for (int k = 0; k < m_th; ++k)
        v[static_cast<std::size_t>(k)] = std::polar(1.0, -static_cast<double>(k) * mu);
    return v;
}

Cvec steering_vertical(double upsilon, int m_tv) {
    if (m_tv < 1)
        throw std::invalid_argument("steering_vertical: m_tv must be >= 1");
    Cvec v(static_cast<std::size_t>(m_tv));
    for (int k = 0; k < m_tv; ++k)
        v[static_cast<std::size_t>(k)] = std::polar(1.0, -static_cast<double>(k) * upsilon);
    return v;
}

std::pair<double, double> phases_from_aod(const AngleOfDeparture& aod, const ChannelConfig& cfg) {
    const double mu = 2.0 * M_PI * cfg.d_h * std::cos(aod.azimuth) * std::sin(aod.elevation);
    const double upsilon = 2.0 * M_PI * cfg.d_v * std::cos(aod.elevation);
    return {mu, upsilon};
}

Cvec array_response(const AngleOfDeparture& aod, const ChannelConfig& cfg) {
    const auto [mu, upsilon] = phases_from_aod(aod, cfg);
    const Cvec h = steering_horizontal(mu, cfg.m_th);
    const Cvec v = steering_vertical(upsilon, cfg.m_tv);
    Cvec out(static_cast<std::size_t>(cfg.total_antennas()));
    for (int n = 0; n < cfg.m_tv; ++n)
        for (int m = 0; m < cfg.m_th; ++m)
            out[static_cast<std::size_t>(n * cfg.m_th + m)] =
                h[static_cast<std::size_t>(m)] * v[static_cast<std::size_t>(n)];
    return out;
}

Cvec generate_channel(const ChannelConfig& cfg, Rng& rng) {
    cfg.validate();
    Cvec h(static_cast<std::size_t>(cfg.total_antennas()), {0.0, 0.0});
    const double path_variance = 1.0 / static_cast<double>(cfg.i_mpc);
    for (int i = 0; i < cfg.i_mpc; ++i) {
        AngleOfDeparture aod;
        aod.azimuth = cfg.mean_azimuth + cfg.angular_spread * rng.gaussian();
        aod.elevation = cfg.mean_elevation + cfg.angular_spread * rng.gaussian();
        const std::complex<double> alpha = rng.complex_gaussian(path_variance);
        const Cvec a = array_response(aod.normalized(), cfg);
        for (std::size_t k = 0; k < h.size(); ++k)
            h[k] += alpha * a[k];
    }
    return h;
}

double empirical_correlation(const ChannelConfig& cfg, int n_samples) {
    cfg.validate();
    if (n_samples < 100)
        throw std::invalid_argument("empirical_correlation: n_samples must be >= 100");
    const int m_th = cfg.m_th;
    const int m_tv = cfg.m_tv;
    const int m_t = cfg.total_antennas();
    if (m_t < 2)
        throw std::invalid_argument("empirical_correlation: array has no adjacent antenna pairs");

    struct Pair {
        int a, b;
    };
    std::vector<Pair> pairs;
    for (int n = 0; n < m_tv; ++n)
        for (int m = 0; m + 1 < m_th; ++m)
            pairs.push_back({n * m_th + m, n * m_th + m + 1});
    for (int n = 0; n + 1 < m_tv; ++n)
        for (int m = 0; m < m_th; ++m)
            pairs.push_back({n * m_th + m, (n + 1) * m_th + m});

    std::vector<std::complex<double>> cross(pairs.size(), {0.0, 0.0});
    std::vector<double> pow_a(pairs.size(), 0.0);
    std::vector<double> pow_b(pairs.size(), 0.0);

    Rng rng(cfg.seed, 0xC0551EULL);
    for (int s = 0; s < n_samples; ++s) {
        const Cvec h = generate_channel(cfg, rng);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const std::complex<double> ha = h[static_cast<std::size_t>(pairs[p].a)];
            const std::complex<double> hb = h[static_cast<std::size_t>(pairs[p].b)];
            cross[p] += ha * std::conj(hb);
            pow_a[p] += std::norm(ha);
            pow_b[p] += std::norm(hb);
        }
    }

    double acc = 0.0;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const double denom = pow_a[p] * pow_b[p];
        if (denom <= 0.0)
            throw std::domain_error("empirical_correlation: degenerate (all-zero) channel ensemble");
        acc += std::abs(cross[p]) / std::sqrt(denom);
    }
    return acc / static_cast<double>(pairs.size());
}

} // namespace kpcsim
