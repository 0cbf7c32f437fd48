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

#ifndef KPCSIM_CHANNEL_HPP
#define KPCSIM_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "kpcsim/rng.hpp"

namespace kpcsim {

using Cvec = std::vector<std::complex<double>>;

/// Geometry and angular statistics of the transmit UPA channel ensemble.
///
/// The array has m_th antennas per row and m_tv rows; spacings d_h, d_v are
/// in wavelength units. A channel draw is a sum of i_mpc paths whose angles
/// of departure are Gaussian around (mean_azimuth, mean_elevation) with
/// standard deviation angular_spread.
struct ChannelConfig {
    int m_th = 1;
    int m_tv = 1;
    double d_h = 0.5;
    double d_v = 0.5;
    int i_mpc = 1;
    double mean_azimuth = 0.0;   // radians, [0, 2pi)
    double mean_elevation = 0.0; // radians, [0, pi]
    double angular_spread = 0.0; // radians, >= 0
    std::uint64_t seed = 0;

    int total_antennas() const { return m_th * m_tv; }

    /// Throws std::invalid_argument on out-of-domain fields.
    void validate() const;
};

/// One propagation direction leaving the array.
struct AngleOfDeparture {
    double azimuth = 0.0;   // radians
    double elevation = 0.0; // radians

    /// Azimuth wrapped to [0, 2pi), elevation clamped to [0, pi].
    AngleOfDeparture normalized() const;
};

/// Horizontal steering vector, entry k = exp(-j k mu), length m_th.
Cvec steering_horizontal(double mu, int m_th);

/// Vertical steering vector, entry k = exp(-j k upsilon), length m_tv.
Cvec steering_vertical(double upsilon, int m_tv);

/// Electrical phase increments (mu, upsilon) of a departure direction.
/// Spacings are in wavelength units, so the carrier wavelength cancels:
///   mu = 2 pi d_h cos(azimuth) sin(elevation),  upsilon = 2 pi d_v cos(elevation).
std::pair<double, double> phases_from_aod(const AngleOfDeparture& aod, const ChannelConfig& cfg);

/// Full array response: column-major vectorization of the outer product of the
/// horizontal and vertical steering vectors. Entry at index n*m_th + m equals
/// exp(-j m mu) * exp(-j n upsilon).
Cvec array_response(const AngleOfDeparture& aod, const ChannelConfig& cfg);

/// One channel realization: sum over i_mpc paths of alpha_i * array_response(aod_i),
/// with alpha_i ~ CN(0, 1/i_mpc), azimuth wrapped mod 2pi and elevation clamped.
/// Pure function of (cfg, rng state).
Cvec generate_channel(const ChannelConfig& cfg, Rng& rng);

/// Magnitude of the zero-mean sample correlation between adjacent-antenna
/// entries, averaged over all horizontally and vertically adjacent pairs,
/// estimated from n_samples independent draws seeded by cfg.seed.
/// Throws std::invalid_argument for n_samples < 100 or a 1-antenna array,
/// std::domain_error for a degenerate (all-zero) ensemble.
double empirical_correlation(const ChannelConfig& cfg, int n_samples);

} // namespace kpcsim

#endif // KPCSIM_CHANNEL_HPP
