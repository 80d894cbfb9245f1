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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "dcec/errors.hpp"

namespace dcec {

/// Practical directional antenna: Gaussian-shaped main lobe of width
/// mainlobe_bw with a flat side lobe. Gains are linear, angles in radians.
struct AntennaPattern {
    double main_gain = 1.0;
    double side_gain = 1.0;
    double halfpower_bw = 0.1;
    double mainlobe_bw = 0.1;
    double rolloff = 0.3;

    /// Builds a pattern from dB gains and degree beamwidths. Without an
    /// explicit main-lobe width, the width where the Gaussian roll-off meets
    /// the side-lobe level is used, so the gain is continuous.
    static AntennaPattern from_db(double main_gain_db, double side_gain_db, double halfpower_bw_deg,
                                  double rolloff = 0.3, std::optional<double> mainlobe_bw_deg = std::nullopt)
    {
        constexpr double deg = std::numbers::pi / 180.0;
        AntennaPattern p;
        p.main_gain = std::pow(10.0, main_gain_db / 10.0);
        p.side_gain = std::pow(10.0, side_gain_db / 10.0);
        p.halfpower_bw = halfpower_bw_deg * deg;
        p.rolloff = rolloff;
        if (mainlobe_bw_deg) {
            p.mainlobe_bw = *mainlobe_bw_deg * deg;
        } else {
            p.mainlobe_bw = p.halfpower_bw * std::sqrt((main_gain_db - side_gain_db) / (10.0 * rolloff));
        }
        return p;
    }
};

inline const AntennaPattern& validate(const AntennaPattern& p)
{
    if (!(p.side_gain > 0.0)) {
        throw ValidationError("antenna side-lobe gain must be positive");
    }
    if (!(p.main_gain >= p.side_gain)) {
        throw ValidationError("antenna main-lobe gain must be >= side-lobe gain");
    }
    if (!(p.halfpower_bw > 0.0) || !(p.halfpower_bw <= p.mainlobe_bw)) {
        throw ValidationError("antenna beamwidths must satisfy 0 < omega_m <= theta_m");
    }
    if (!(p.mainlobe_bw < 2.0 * std::numbers::pi)) {
        throw ValidationError("antenna main-lobe width must be below 2*pi");
    }
    if (!(p.rolloff > 0.0)) {
        throw ValidationError("antenna roll-off constant c must be positive");
    }
    return p;
}

/// Gain at angle theta off boresight; theta is wrapped into (-pi, pi].
inline double gain(const AntennaPattern& p, double theta)
{
    double t = std::abs(std::remainder(theta, 2.0 * std::numbers::pi));
    if (t <= 0.5 * p.mainlobe_bw) {
        double u = 2.0 * t / p.halfpower_bw;
        return p.main_gain * std::pow(10.0, -p.rolloff * u * u);
    }
    return p.side_gain;
}

/// Non-normalised error function: integral of exp(-t^2) from 0 to x,
/// i.e. sqrt(pi)/2 * erf(x).
inline double gauss_integral(double x)
{
    return 0.5 * std::sqrt(std::numbers::pi) * std::erf(x);
}

/// Mean gain over an angle uniform on the circle, in closed form.
inline double average_gain(const AntennaPattern& p)
{
    const double s = std::sqrt(p.rolloff * std::numbers::ln10);
    const double main = p.halfpower_bw * p.main_gain / (2.0 * std::numbers::pi * s)
                        * gauss_integral(p.mainlobe_bw * s / p.halfpower_bw);
    return main - p.side_gain * p.mainlobe_bw / (2.0 * std::numbers::pi) + p.side_gain;
}

} // namespace dcec
