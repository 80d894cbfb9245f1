/*
   Copyright 2026 The dcec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "dcec/antenna.hpp"
#include "dcec/errors.hpp"

namespace dcec {

namespace constants {
inline constexpr double speed_of_light = 299'792'458.0;
inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double per_km2 = 1e-6;
} // namespace constants

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

/// How the path-loss constant C in beta = C * r^-alpha is formed.
/// `literal` divides by d0^3 literally; `friis` is the dimensionally
/// consistent lambda^2 / (16 pi^2 d0^(2 - alpha)). Both agree at d0 = 1 m.
enum class PathlossConvention { literal, friis };

/// Physical and network constants. Everything is linear scale and SI:
/// densities per m^2, powers in W, rates in bit/s.
/// Defaults are the desk-scale reference scenario.
struct SystemParams {
    double area_m2 = 1e6;
    double bandwidth_hz = 2.16e9;
    double d2d_fraction = 0.2;
    double carrier_freq_hz = 60e9;
    double pathloss_exponent = 1.6;
    double sbs_tx_power_w = 1.0;  // 30 dBm
    double ue_tx_power_w = 0.1;   // 20 dBm
    AntennaPattern sbs_antenna = AntennaPattern::from_db(18.0, -2.0, 10.0);
    AntennaPattern ue_antenna = AntennaPattern::from_db(9.0, -2.0, 10.0);
    double ref_distance_m = 1.0;
    double max_d2d_distance_m = 10.0;
    double sbs_density = 100.0 * constants::per_km2;
    double ue_density = 1000.0 * constants::per_km2;
    double paired_fraction = 0.8;
    double backhaul_capacity_bps = 3e9;
    double noise_psd_w_per_hz = 3.9810717055349565e-21;  // -174 dBm/Hz
    double cell_area_shape = 3.5;
    double content_size_bits = 100e6;
    double euler_gamma = constants::euler_gamma;
    PathlossConvention pathloss_convention = PathlossConvention::literal;
};

namespace detail {
inline void require(bool ok, const char* what)
{
    if (!ok) {
        throw ValidationError(what);
    }
}
} // namespace detail

/// Returns `p` unchanged if every invariant holds, otherwise throws a
/// ValidationError naming the first violation.
inline const SystemParams& validate(const SystemParams& p)
{
    using detail::require;
    require(p.area_m2 > 0.0, "area must be positive");
    require(p.bandwidth_hz > 0.0, "bandwidth must be positive");
    require(p.d2d_fraction > 0.0 && p.d2d_fraction < 1.0, "d2d_fraction out of range (0, 1)");
    require(p.carrier_freq_hz > 0.0, "carrier frequency must be positive");
    require(p.pathloss_exponent > 0.0, "path-loss exponent must be positive");
    require(p.sbs_tx_power_w > 0.0 && p.ue_tx_power_w > 0.0, "transmit power must be positive");
    require(p.ref_distance_m > 0.0 && p.max_d2d_distance_m > 0.0, "distance must be positive");
    require(p.ref_distance_m < p.max_d2d_distance_m, "ref_distance must be below max_d2d_distance");
    require(p.sbs_density > 0.0 && p.ue_density > 0.0, "density must be positive");
    require(p.paired_fraction >= 0.0 && p.paired_fraction <= 1.0, "paired_fraction out of range [0, 1]");
    require(p.backhaul_capacity_bps > 0.0, "backhaul capacity must be positive");
    require(p.noise_psd_w_per_hz > 0.0, "noise density must be positive");
    require(p.cell_area_shape > 0.0, "cell_area_shape (kappa) must be positive");
    require(p.content_size_bits > 0.0, "content size must be positive");
    require(p.euler_gamma > 0.0, "euler_gamma must be positive");
    validate(p.sbs_antenna);
    validate(p.ue_antenna);
    return p;
}

/// Thermal noise over the full system bandwidth; scale by the band
/// fraction actually in use.
inline double noise_power(const SystemParams& p) { return p.bandwidth_hz * p.noise_psd_w_per_hz; }

inline double wavelength(const SystemParams& p) { return constants::speed_of_light / p.carrier_freq_hz; }

inline double pathloss_constant(const SystemParams& p)
{
    const double lw = wavelength(p);
    const double four_pi_sq = 16.0 * std::numbers::pi * std::numbers::pi;
    const double d0 = p.ref_distance_m;
    if (p.pathloss_convention == PathlossConvention::friis) {
        return lw * lw / (four_pi_sq * std::pow(d0, 2.0 - p.pathloss_exponent));
    }
    return lw * lw / (d0 * d0 * d0 * four_pi_sq);
}

/// Linear-scale mean path gain C * r^-alpha. Only defined for r >= d0.
inline double average_pathloss(const SystemParams& p, double r)
{
    if (!(r >= p.ref_distance_m)) {
        throw ValidationError("path-loss model undefined below the reference distance");
    }
    return pathloss_constant(p) * std::pow(r, -p.pathloss_exponent);
}

inline std::string to_string(PathlossConvention c) { return c == PathlossConvention::literal ? "literal" : "friis"; }

} // namespace dcec
