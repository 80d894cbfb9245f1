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
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "dcec/antenna.hpp"
#include "dcec/core.hpp"
#include "dcec/errors.hpp"
#include "dcec/popularity.hpp"
#include "dcec/scenario.hpp"
#include "dcec/special_functions.hpp"

namespace dcec {

/// Mean per-user rates (bit/s) of the four retrieval legs. The three radio
/// legs are lower bounds; the backhaul rate is exact under the load model.
struct RateBounds {
    double backhaul = 0.0;  // E[R_B]
    double nearest = 0.0;   // E[R_N] lower bound
    double cluster = 0.0;   // E[R_C] lower bound
    double d2d = 0.0;       // E[R_D] lower bound
};

/// Average content retrieval delay split by leg, in seconds.
struct DelayBreakdown {
    double backhaul = 0.0;
    double nearest = 0.0;
    double cluster = 0.0;
    double d2d = 0.0;
    double total = 0.0;
};

namespace analytic {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared shape of the mean-load expressions: x * (1 - (1 + x/kappa)^-(kappa+1)),
// with x the mean number of active users per SBS.
inline double gamma_cell_load(double users_per_sbs, double kappa)
{
    return users_per_sbs * (1.0 - std::pow(1.0 + users_per_sbs / kappa, -(kappa + 1.0)));
}

/// Mean number of users sharing one SBS's backhaul (Gamma(kappa) cell areas).
inline double expected_backhaul_load(const SystemParams& p, double p_miss)
{
    return gamma_cell_load(p_miss * p.ue_density / p.sbs_density, p.cell_area_shape);
}

/// Mean number of users sharing one SBS's airtime; p = P_m + P_s.
inline double expected_cell_load(const SystemParams& p, double p_cellular)
{
    return gamma_cell_load(p_cellular * p.ue_density / p.sbs_density, p.cell_area_shape);
}

/// Mean backhaul rate of a user whose content missed every cache.
/// Infinite when nothing misses.
inline double backhaul_rate(const SystemParams& p, double p_miss)
{
    if (p_miss <= 0.0) {
        return kInf;
    }
    const double load_ratio = p_miss * p.ue_density / p.sbs_density;
    const double x = std::pow(1.0 + load_ratio / p.cell_area_shape, p.cell_area_shape + 1.0);
    return p.backhaul_capacity_bps / load_ratio * x / (x - 1.0);
}

// Gamma(N + 1 - a/2) / ((1 - a/2) Gamma(N)): the sum of Gamma(i - a/2)/Gamma(i)
// over i = 1..N.
inline double moment_sum_head(double alpha, double n)
{
    const double b = 1.0 - 0.5 * alpha;
    return special::gamma_ratio(n, b) / b;
}

/// Interference moment sum seen from the nearest SBS, normalised by
/// (pi lambda)^(alpha/2). The alpha = 2 branch is the harmonic-number
/// approximation ln(N - 1) + gamma.
inline double j1(double alpha, double n_bs, double euler = constants::euler_gamma)
{
    if (!(n_bs >= 2.0)) {
        throw ValidationError("J1 needs at least two SBSs");
    }
    if (alpha == 2.0) {
        return std::log(n_bs - 1.0) + euler;
    }
    if (!(n_bs > 0.5 * alpha)) {
        throw ValidationError("J1 needs N_BS > alpha/2");
    }
    return moment_sum_head(alpha, n_bs) - special::gamma_fn(1.0 - 0.5 * alpha);
}

/// E[ln r_k] for the k-th nearest point of a PPP of the given density.
inline double expected_ln_rk(std::size_t k, double density, double euler = constants::euler_gamma)
{
    if (k == 0) {
        throw ValidationError("neighbour order k must be >= 1");
    }
    double harmonic = 0.0;
    for (std::size_t i = 1; i < k; ++i) {
        harmonic += 1.0 / static_cast<double>(i);
    }
    return -0.5 * (euler + std::log(std::numbers::pi * density) - harmonic);
}

/// Guard-radius corrected -alpha moment of the k-th neighbour, alpha > 2.
inline double j3(double alpha, std::size_t k, double r0)
{
    if (k == 0) {
        throw ValidationError("J3 needs k >= 1");
    }
    if (k == 1) {
        return special::incomplete_gamma_upper(1.0 - 0.5 * alpha, r0);
    }
    const double kd = static_cast<double>(k);
    return special::gamma_fn(kd - 0.5 * alpha) / special::gamma_fn(kd);
}

/// Same as j3 at alpha = 2.
inline double j4(std::size_t k, double r0)
{
    if (k == 0) {
        throw ValidationError("J4 needs k >= 1");
    }
    if (k == 1) {
        return special::exp_integral_e1(r0);
    }
    return 1.0 / static_cast<double>(k - 1);
}

/// Normalised interference moment sum when served by the k-th nearest SBS.
inline double j2(double alpha, std::size_t k, double n_bs, double r0, double euler = constants::euler_gamma)
{
    if (k == 0 || static_cast<double>(k) > n_bs) {
        throw ValidationError("J2 needs 1 <= k <= N_BS");
    }
    if (!(n_bs >= 2.0)) {
        throw ValidationError("J2 needs at least two SBSs");
    }
    const double kd = static_cast<double>(k);
    if (alpha < 2.0) {
        return moment_sum_head(alpha, n_bs) - special::gamma_fn(kd - 0.5 * alpha) / special::gamma_fn(kd);
    }
    if (alpha == 2.0) {
        return special::exp_integral_e1(r0) + std::log(n_bs - 1.0) + euler - j4(k, r0);
    }
    return special::incomplete_gamma_upper(1.0 - 0.5 * alpha, r0) + moment_sum_head(alpha, n_bs)
           - special::gamma_fn(1.0 - 0.5 * alpha) - j3(alpha, k, r0);
}

/// D2D interference moment sum normalised by pi * lambda_D, with the
/// equivalent cell radius R and guard radius d0.
inline double j5(double alpha, double radius, double d0)
{
    if (alpha < 2.0) {
        return std::pow(radius, 2.0 - alpha) / (1.0 - 0.5 * alpha);
    }
    if (alpha == 2.0) {
        return 2.0 * std::log(radius / d0);
    }
    return (std::pow(radius, 2.0 - alpha) - std::pow(d0, 2.0 - alpha)) / (1.0 - 0.5 * alpha);
}

namespace detail {
inline double clamp_bound(double value, const char* what, Warnings* warnings)
{
    if (!(value > 0.0)) {
        warn(warnings, std::string(what) + " lower bound degenerate (non-positive); clamped to 0");
        return 0.0;
    }
    return value;
}

inline double cellular_prefactor(const SystemParams& p, double p_cellular)
{
    const double load = expected_cell_load(p, p_cellular);
    return (1.0 - p.d2d_fraction) * p.bandwidth_hz / (load * std::numbers::ln2);
}
} // namespace detail

/// Lower bound on the mean rate from the nearest SBS.
inline double nearest_rate_lb(const SystemParams& p, double p_miss, double p_cluster, Warnings* warnings = nullptr)
{
    const double alpha = p.pathloss_exponent;
    const double n_bs = static_cast<double>(expected_count(p.sbs_density, p.area_m2));
    const double gain_term = 2.0 * std::log(p.sbs_antenna.main_gain / average_gain(p.sbs_antenna));
    const double inner = gain_term + (alpha - 2.0) * p.euler_gamma / 2.0 - std::log(j1(alpha, n_bs, p.euler_gamma));
    return detail::clamp_bound(detail::cellular_prefactor(p, p_miss + p_cluster) * inner, "nearest-SBS rate",
                               warnings);
}

/// Lower bound on the mean rate from a uniformly chosen member of the K
/// nearest SBSs.
inline double cluster_rate_lb(const SystemParams& p, std::size_t cluster_size, double p_miss, double p_cluster,
                              Warnings* warnings = nullptr)
{
    const double alpha = p.pathloss_exponent;
    const double n_bs = static_cast<double>(expected_count(p.sbs_density, p.area_m2));
    if (cluster_size == 0 || static_cast<double>(cluster_size) > n_bs) {
        throw ValidationError("cluster size must satisfy 1 <= K <= N_BS");
    }
    const double r0 = std::numbers::pi * p.sbs_density * p.ref_distance_m * p.ref_distance_m;
    const double kd = static_cast<double>(cluster_size);
    double harmonic_total = 0.0;
    double log_j2_total = 0.0;
    double harmonic = 0.0;  // H_{k-1}
    for (std::size_t k = 1; k <= cluster_size; ++k) {
        harmonic_total += harmonic;
        log_j2_total += std::log(j2(alpha, k, n_bs, r0, p.euler_gamma));
        harmonic += 1.0 / static_cast<double>(k);
    }
    const double gain_term = 2.0 * std::log(p.sbs_antenna.main_gain / average_gain(p.sbs_antenna));
    const double inner = gain_term + (alpha - 2.0) * p.euler_gamma / 2.0 - alpha / (2.0 * kd) * harmonic_total
                         - log_j2_total / kd;
    return detail::clamp_bound(detail::cellular_prefactor(p, p_miss + p_cluster) * inner, "SBS-cluster rate",
                               warnings);
}

/// Lower bound on the mean D2D rate with D2D transmitter density
/// `d2d_density` (per m^2) and `n_d2d` transmitters in the region.
inline double d2d_rate_lb(const SystemParams& p, double d2d_density, double n_d2d, Warnings* warnings = nullptr)
{
    if (!(d2d_density > 0.0)) {
        throw ValidationError("D2D density must be positive");
    }
    if (!(n_d2d >= 2.0)) {
        throw ValidationError("D2D bound needs at least two transmitters");
    }
    const double alpha = p.pathloss_exponent;
    const double radius = std::sqrt(n_d2d / (std::numbers::pi * d2d_density));
    const double gain_term = 2.0 * std::log(p.ue_antenna.main_gain / average_gain(p.ue_antenna));
    const double inner = gain_term - p.euler_gamma - alpha * (std::log(p.max_d2d_distance_m) - 0.5)
                         - std::log(std::numbers::pi * d2d_density)
                         - std::log(j5(alpha, radius, p.ref_distance_m));
    return detail::clamp_bound(p.d2d_fraction * p.bandwidth_hz / std::numbers::ln2 * inner, "D2D rate", warnings);
}

namespace detail {
inline double leg(double probability, double size, double rate, bool strict, const char* what)
{
    if (probability <= 0.0) {
        return 0.0;
    }
    if (!(rate > 0.0)) {
        if (strict) {
            throw ValidationError(std::string("zero ") + what + " rate with nonzero request probability");
        }
        return kInf;
    }
    return probability * size / rate;
}

inline DelayBreakdown compose_delay(const SystemParams& p, const RequestProbabilities& probs, const RateBounds& r,
                                    bool strict)
{
    const double nu = p.content_size_bits;
    DelayBreakdown d;
    d.backhaul = leg(probs.miss, nu, r.backhaul, strict, "backhaul");
    d.nearest = leg(probs.miss, nu, r.nearest, strict, "nearest-SBS");
    d.cluster = leg(probs.cluster, nu, r.cluster, strict, "SBS-cluster");
    d.d2d = leg(probs.d2d, nu, r.d2d, strict, "D2D");
    d.total = d.backhaul + d.nearest + d.cluster + d.d2d;
    return d;
}
} // namespace detail

/// Mean retrieval delay: a miss pays backhaul and nearest-SBS legs in
/// series; local hits cost nothing.
inline DelayBreakdown content_delay(const SystemParams& p, const RequestProbabilities& probs, const RateBounds& r)
{
    return detail::compose_delay(p, probs, r, true);
}

/// Everything the closed-form model says about one scenario.
struct Evaluation {
    double offloading_gain = 0.0;
    RequestProbabilities probs;
    RateBounds rates;
    DelayBreakdown delay;
    Warnings warnings;
};

inline Evaluation evaluate(const Scenario& s)
{
    validate(s);
    const SystemParams& p = s.system;
    const ContentCatalog cat = s.catalog();
    Evaluation e;
    e.probs = request_probabilities(cat, s.cache, p.paired_fraction, s.policy);
    e.offloading_gain = 1.0 - e.probs.miss;
    e.rates.backhaul = backhaul_rate(p, e.probs.miss);
    e.rates.nearest = nearest_rate_lb(p, e.probs.miss, e.probs.cluster, &e.warnings);
    if (s.policy == Policy::dcec) {
        e.rates.cluster = cluster_rate_lb(p, s.cache.cluster_size, e.probs.miss, e.probs.cluster, &e.warnings);
    } else {
        // the MPC cache sits in the associated (nearest) SBS
        e.rates.cluster = e.rates.nearest;
    }
    if (e.probs.d2d > 0.0) {
        const double d2d_density = e.probs.d2d * p.ue_density;
        const auto n_d2d = static_cast<double>(expected_count(d2d_density, p.area_m2));
        e.rates.d2d = d2d_rate_lb(p, d2d_density, n_d2d, &e.warnings);
    } else {
        e.rates.d2d = kInf;
    }
    e.delay = detail::compose_delay(p, e.probs, e.rates, false);
    return e;
}

struct ClusterOptimum {
    std::size_t cluster_size = 0;
    double delay = 0.0;
};

/// Cluster size minimising the analytic delay over `candidates`; ties go to
/// the smaller K.
inline ClusterOptimum optimal_cluster_size(Scenario s, const std::vector<std::size_t>& candidates)
{
    if (candidates.empty()) {
        throw ValidationError("cluster-size range is empty");
    }
    std::vector<std::size_t> ks = candidates;
    std::sort(ks.begin(), ks.end());
    ClusterOptimum best{0, kInf};
    for (std::size_t k : ks) {
        s.cache.cluster_size = k;
        const double d = evaluate(s).delay.total;
        if (best.cluster_size == 0 || d < best.delay) {
            best = {k, d};
        }
    }
    return best;
}

} // namespace analytic
} // namespace dcec
