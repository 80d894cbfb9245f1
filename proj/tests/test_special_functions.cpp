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

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "dcec/special_functions.hpp"
#include "fixtures.hpp"

namespace {

namespace sf = dcec::special;

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

TEST(Gamma, FrozenValues)
{
    for (const auto& c : fixtures::gamma_cases) {
        EXPECT_LT(rel(sf::gamma_fn(c.z), c.value), 1e-13) << "z=" << c.z;
    }
}

TEST(Gamma, PolesRejected)
{
    for (double z : {0.0, -1.0, -2.0, -7.0}) {
        EXPECT_THROW(sf::gamma_fn(z), dcec::ValidationError) << z;
    }
}

TEST(Gamma, RatioAvoidsOverflow)
{
    // Gamma(400.3)/Gamma(400) would overflow if formed directly
    const double r = sf::gamma_ratio(400.0, 0.3);
    EXPECT_NEAR(r, std::pow(400.0, 0.3) * (1.0 - 0.3 * 0.7 / 800.0), 1e-4 * r);
}

TEST(UpperIncompleteGamma, FrozenValues)
{
    for (const auto& c : fixtures::upper_gamma_cases) {
        EXPECT_LT(rel(sf::incomplete_gamma_upper(c.z, c.a), c.value), 1e-10) << "z=" << c.z << " a=" << c.a;
    }
}

// Gamma(z, a) = Gamma(z) - a^z / z + a^(z+1) / (z+1) - ... for small a
TEST(UpperIncompleteGamma, SmallArgumentSeries)
{
    for (double z : {0.3, 1.0, 2.5, 4.0}) {
        for (double a : {1e-12, 1e-6}) {
            const double series = std::tgamma(z) - std::pow(a, z) / z + std::pow(a, z + 1.0) / (z + 1.0);
            EXPECT_LT(rel(sf::incomplete_gamma_upper(z, a), series), 1e-11) << z << " " << a;
        }
    }
}

TEST(UpperIncompleteGamma, MatchesQuadratureOfDefinition)
{
    boost::math::quadrature::exp_sinh<double> integrator;
    for (double z : {-1.7, -0.6, -0.2, 0.4, 1.5, 3.2}) {
        for (double a : {0.05, 0.7, 3.0, 9.0}) {
            auto f = [z](double t) { return std::pow(t, z - 1.0) * std::exp(-t); };
            const double want = integrator.integrate(f, a, std::numeric_limits<double>::infinity());
            EXPECT_LT(rel(sf::incomplete_gamma_upper(z, a), want), 1e-9) << "z=" << z << " a=" << a;
        }
    }
}

TEST(UpperIncompleteGamma, RecurrenceHolds)
{
    // Gamma(s+1, a) = s Gamma(s, a) + a^s e^-a
    for (double s : {-1.3, -0.4, 0.6, 2.2}) {
        for (double a : {0.01, 0.5, 4.0}) {
            const double lhs = sf::incomplete_gamma_upper(s + 1.0, a);
            const double rhs = s * sf::incomplete_gamma_upper(s, a) + std::pow(a, s) * std::exp(-a);
            EXPECT_LT(rel(lhs, rhs), 1e-10) << s << " " << a;
        }
    }
}

TEST(ExpIntegral, FrozenValues)
{
    for (const auto& c : fixtures::e1_cases) {
        EXPECT_LT(rel(sf::exp_integral_e1(c.x), c.value), 1e-10) << "x=" << c.x;
    }
}

TEST(ExpIntegral, EqualsUpperGammaOfOrderZero)
{
    for (double x : {0.001, 0.3, 1.0, 5.0, 30.0}) {
        EXPECT_LT(rel(sf::incomplete_gamma_upper(0.0, x), sf::exp_integral_e1(x)), 1e-12) << x;
    }
}

TEST(ExpIntegral, MatchesQuadratureOfDefinition)
{
    boost::math::quadrature::exp_sinh<double> integrator;
    for (double x : {0.02, 0.9, 1.1, 6.0}) {
        auto f = [](double t) { return std::exp(-t) / t; };
        const double want = integrator.integrate(f, x, std::numeric_limits<double>::infinity());
        EXPECT_LT(rel(sf::exp_integral_e1(x), want), 1e-10) << x;
    }
}

TEST(ExpIntegral, RejectsNonPositive)
{
    EXPECT_THROW(sf::exp_integral_e1(0.0), dcec::ValidationError);
    EXPECT_THROW(sf::exp_integral_e1(-1.0), dcec::ValidationError);
}

} // namespace
