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
// Reference values computed at 40 significant digits by
// tests/oracles/fixtures.py (direct summation and mpmath quadrature),
// independently of the library code.

#pragma once

namespace fixtures {

// Zipf catalog |F| = 2000, xi = 0.56; Cu = 150, Cs = 200, K = 3
inline constexpr double q1 = 0.015950074035625787072;
inline constexpr double h_p = 0.20933198194497562694;
inline constexpr double h_u = 0.30160557851981987757;
inline constexpr double h_s = 0.09233591872461867849;
inline constexpr double f_mpc = 0.44993036242141279148;

struct GammaCase {
    double z;
    double value;
};
inline constexpr GammaCase gamma_cases[] = {
    {1.0, 1.0},
    {0.5, 1.7724538509055160273},
    {0.3, 2.9915689876875906283},
    {-0.2, -5.8211485686265168682},
    {-0.5, -3.5449077018110320546},
    {2.7, 1.544685845850593765},
    {-1.5, 2.3632718012073547031},
    {5.5, 52.342777784553520181},
};

struct UpperGammaCase {
    double z;
    double a;
    double value;
};
inline constexpr UpperGammaCase upper_gamma_cases[] = {
    {0.3, 0.0001, 2.7812547262417325547},
    {0.3, 2.5, 0.035436097481611741039},
    {-0.2, 0.000314159, 19.273100767559896736},
    {-0.2, 0.5, 0.56832688199152055214},
    {-0.5, 0.01, 16.654759630333674418},
    {-1.2, 0.3, 1.7952775453410522045},
    {2.5, 1.0, 1.1288027918891022864},
    {1.0, 3.0, 0.049787068367863942979},
    {-0.5, 12.0, 1.3235097661972293318e-7},
    {0.8, 40.0, 2.0215939711188789328e-18},
    {-0.2, 1.2566370614359172e-3, 13.201212008676346493},
};

struct E1Case {
    double x;
    double value;
};
inline constexpr E1Case e1_cases[] = {
    {1.0, 0.21938393439552027368},
    {0.001, 6.331539364136149332},
    {0.000314159, 7.4887098002172246391},
    {0.5, 0.55977359477616081175},
    {2.0, 0.048900510708061119567},
    {10.0, 4.1569689296853242774e-6},
    {50.0, 3.7832640295504590187e-24},
};

inline constexpr double gauss_integral_1 = 0.7468241328124270254;

// Average gain with the continuity-derived main-lobe width
inline constexpr double sbs_theta_m_deg = 25.8198889747161;
inline constexpr double sbs_average_gain = 2.4500544060045721929;
inline constexpr double ue_theta_m_deg = 19.1485421551268;
inline constexpr double ue_average_gain = 0.82692885785545108233;

inline constexpr double j1_alpha2_n1001 = 7.4849709438836699127;

struct GammaSumCase {
    double beta;
    double sum_to_500;
};
inline constexpr GammaSumCase gamma_sums[] = {
    {0.7, 21.501983912617627835},
    {1.4, -0.20825496195889685554},
    {2.5, -0.000059852805810688318915},
};

struct J1Case {
    double alpha;
    double brute_n100;
};
inline constexpr J1Case j1_brute[] = {
    {1.6, 7.9585349051828158478},
    {1.4, 10.264734361903769047},
    {2.5, 3.6347728182685528711},
};

// J2 at alpha = 2.5, N = 300, r0 = pi * 1e-4 (lambda = 100/km^2, d0 = 1 m)
inline constexpr double j2_alpha25[] = {3.940041110450046147, 27.861125472250277234, 28.627010911291013262,
                                        28.818482271051197269};

// J5 with N_D = 50, lambda_D = 40/km^2, d0 = 1 m
inline constexpr double j5_radius = 630.78313050504001206;
inline constexpr double j5_alpha16 = 65.905556633047087087;
inline constexpr double j5_alpha2 = 12.893924223429083686;
inline constexpr double j5_alpha25 = 3.8407351429075501588;

// Loads: P_m = 0.5, lambda_UE/lambda_BS = 10, kappa = 3.5, B = 3 Gbit/s
inline constexpr double expected_backhaul_load = 4.9077660011281405441;
inline constexpr double backhaul_rate = 611276087.59472123609;

// 60 GHz, d0 = 1 m, W = 2.16 GHz, N_o = -174 dBm/Hz
inline constexpr double wavelength = 0.0049965409666666666667;
inline constexpr double pathloss_constant = 1.580953793650958464e-7;
inline constexpr double noise_power = 8.5991148839555406166e-12;

} // namespace fixtures
