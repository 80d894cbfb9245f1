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
#include <limits>

#include "dcec/errors.hpp"

namespace dcec::special {

inline bool is_nonpositive_integer(double z) { return z <= 0.0 && z == std::nearbyint(z); }

/// Gamma function; throws at the poles z = 0, -1, -2, ...
inline double gamma_fn(double z)
{
    if (is_nonpositive_integer(z)) {
        throw ValidationError("gamma function pole at non-positive integer");
    }
    return std::tgamma(z);
}

/// Gamma(a + d) / Gamma(a) for large a without overflow. Signed, so either
/// argument may be negative (but not a pole).
inline double gamma_ratio(double a, double d)
{
    auto sign = [](double x) { return x < 0.0 && std::fmod(std::floor(x), 2.0) != 0.0 ? -1.0 : 1.0; };
    return sign(a + d) * sign(a) * std::exp(std::lgamma(a + d) - std::lgamma(a));
}

namespace detail {

inline constexpr double eps = 1e-16;
inline constexpr int max_iter = 10'000;
inline constexpr double tiny = 1e-300;

// Gamma(z, a) by the Legendre continued fraction (modified Lentz); converges
// quickly for a > max(1, z + 1).
inline double upper_gamma_cf(double z, double a)
{
    double b = a + 1.0 - z;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_iter; ++i) {
        const double an = -i * (i - z);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps) break;
    }
    return std::exp(-a + z * std::log(a)) * h;
}

// lower gamma(z, a) for z > 0 by its power series, valid for a < z + 1.
inline double lower_gamma_series(double z, double a)
{
    double term = 1.0 / z;
    double sum = term;
    for (int n = 1; n < max_iter; ++n) {
        term *= a / (z + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * eps) break;
    }
    return sum * std::exp(-a + z * std::log(a));
}

} // namespace detail

/// Exponential integral E1(x) = integral_x^inf e^-t / t dt, x > 0.
inline double exp_integral_e1(double x)
{
    if (!(x > 0.0)) {
        throw ValidationError("E1 requires x > 0");
    }
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x - sum_{n>=1} (-x)^n / (n n!)
        double term = 1.0;
        double sum = 0.0;
        for (int n = 1; n < detail::max_iter; ++n) {
            term *= -x / n;
            const double add = term / n;
            sum += add;
            if (std::abs(add) < std::abs(sum) * detail::eps) break;
        }
        return -0.57721566490153286061 - std::log(x) - sum;
    }
    // continued fraction, modified Lentz
    double b = x + 1.0;
    double c = 1.0 / detail::tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < detail::max_iter; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < detail::eps) break;
    }
    return h * std::exp(-x);
}

/// Upper incomplete gamma Gamma(z, a) = integral_a^inf t^(z-1) e^-t dt, a > 0.
/// Any real order z; non-positive orders go through
/// Gamma(z, a) = (Gamma(z + 1, a) - a^z e^-a) / z down from (0, 1].
inline double incomplete_gamma_upper(double z, double a)
{
    if (!(a > 0.0)) {
        throw ValidationError("upper incomplete gamma requires a > 0");
    }
    if (a > 1.0 && a > z + 1.0) {
        return detail::upper_gamma_cf(z, a);
    }
    if (z > 0.0) {
        return std::tgamma(z) - detail::lower_gamma_series(z, a);
    }
    if (z == 0.0) {
        return exp_integral_e1(a);
    }
    // climb to the first order in (0, 1] (or exactly 0), then recur back down
    const int steps = static_cast<int>(std::ceil(-z));
    double top = z + steps;
    double value = top == 0.0 ? exp_integral_e1(a) : incomplete_gamma_upper(top, a);
    for (int i = 0; i < steps; ++i) {
        const double s = top - 1.0;
        value = (value - std::exp(s * std::log(a) - a)) / s;
        top = s;
    }
    return value;
}

} // namespace dcec::special
