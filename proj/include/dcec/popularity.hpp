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
#include <cstdint>
#include <string>
#include <vector>

#include "dcec/errors.hpp"

namespace dcec {

/// Zipf content popularity over ranks 1..size. Index i of `popularity`
/// holds the probability of rank i + 1.
struct ContentCatalog {
    std::size_t size = 0;
    double skewness = 0.0;
    std::vector<double> popularity;
    std::vector<double> cumulative;  // cumulative[i] = sum of ranks 1..i (cumulative[0] = 0)

    /// Probability mass of ranks [first, last], 1-based and inclusive.
    /// Empty when first > last.
    double mass(std::size_t first, std::size_t last) const
    {
        if (first > last || first == 0) {
            return 0.0;
        }
        last = std::min(last, size);
        return cumulative[last] - cumulative[first - 1];
    }

    double top_mass(std::size_t count) const { return mass(1, count); }
};

inline ContentCatalog zipf_popularity(std::size_t size, double skewness)
{
    if (size == 0) {
        throw ValidationError("catalog size must be at least 1");
    }
    if (!(skewness >= 0.0)) {
        throw ValidationError("popularity skewness xi must be >= 0");
    }
    ContentCatalog cat;
    cat.size = size;
    cat.skewness = skewness;
    cat.popularity.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        cat.popularity[i] = std::pow(static_cast<double>(i + 1), -skewness);
    }
    // smallest terms first keeps the normaliser accurate for long tails
    double norm = 0.0;
    for (std::size_t i = size; i-- > 0;) {
        norm += cat.popularity[i];
    }
    for (auto& q : cat.popularity) {
        q /= norm;
    }
    cat.cumulative.assign(size + 1, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
        cat.cumulative[i + 1] = cat.cumulative[i] + cat.popularity[i];
    }
    return cat;
}

enum class Policy { dcec, mpc };

inline std::string to_string(Policy p) { return p == Policy::dcec ? "dcec" : "mpc"; }

/// Per-node capacities in whole contents.
struct CacheConfig {
    std::size_t user_capacity = 150;
    std::size_t sbs_capacity = 200;
    std::size_t cluster_size = 4;
};

inline void check_capacity(const ContentCatalog& cat, const CacheConfig& cache, Policy policy)
{
    if (policy == Policy::dcec) {
        if (cache.cluster_size == 0) {
            throw ValidationError("cluster size K must be >= 1");
        }
        if (2 * cache.user_capacity + cache.cluster_size * cache.sbs_capacity > cat.size) {
            throw ValidationError("DCEC placement overflows the catalog: 2*C_u + K*C_s > |F|");
        }
    } else if (cache.user_capacity + cache.sbs_capacity > cat.size) {
        throw ValidationError("MPC placement overflows the catalog: C_u + C_s > |F|");
    }
}

struct HitRatios {
    double paired = 0.0;    // h_p, per member of a D2D pair
    double unpaired = 0.0;  // h_u
    double sbs = 0.0;       // h_s, per cluster SBS
};

inline HitRatios dcec_hit_ratios(const ContentCatalog& cat, const CacheConfig& cache)
{
    check_capacity(cat, cache, Policy::dcec);
    const std::size_t cu = cache.user_capacity;
    const std::size_t k = cache.cluster_size;
    HitRatios h;
    h.paired = 0.5 * cat.top_mass(2 * cu);
    h.unpaired = cat.top_mass(cu);
    h.sbs = cat.mass(2 * cu + 1, 2 * cu + k * cache.sbs_capacity) / static_cast<double>(k);
    return h;
}

/// Backhaul offloading gain of DCEC: fraction of requests served from an
/// edge cache, mixed over paired and unpaired users.
inline double offloading_gain_dcec(const HitRatios& h, std::size_t cluster_size, double paired_fraction)
{
    return h.unpaired * (1.0 - paired_fraction) + 2.0 * h.paired * paired_fraction
           + static_cast<double>(cluster_size) * h.sbs;
}

inline double offloading_gain_mpc(const ContentCatalog& cat, const CacheConfig& cache)
{
    check_capacity(cat, cache, Policy::mpc);
    return cat.top_mass(cache.user_capacity + cache.sbs_capacity);
}

inline double miss_probability(double offloading_gain) { return 1.0 - offloading_gain; }

/// Population-averaged split of where a request is served.
struct RequestProbabilities {
    double local = 0.0;
    double d2d = 0.0;      // P_d
    double cluster = 0.0;  // P_s (for MPC: the associated SBS's cache)
    double miss = 0.0;     // P_m
};

inline RequestProbabilities request_probabilities(const ContentCatalog& cat, const CacheConfig& cache,
                                                  double paired_fraction, Policy policy = Policy::dcec)
{
    RequestProbabilities r;
    if (policy == Policy::mpc) {
        const double f = offloading_gain_mpc(cat, cache);
        r.local = cat.top_mass(cache.user_capacity);
        r.cluster = cat.mass(cache.user_capacity + 1, cache.user_capacity + cache.sbs_capacity);
        r.miss = miss_probability(f);
        return r;
    }
    const HitRatios h = dcec_hit_ratios(cat, cache);
    const double f = offloading_gain_dcec(h, cache.cluster_size, paired_fraction);
    r.cluster = static_cast<double>(cache.cluster_size) * h.sbs;
    r.d2d = paired_fraction * h.paired;
    r.miss = miss_probability(f);
    r.local = f - r.cluster - r.d2d;
    return r;
}

/// Where each rank lives under a placement. The per-SBS sets belong to the
/// user's cluster, ordered by distance (set 0 = nearest cluster member).
struct CachePlacement {
    Policy policy = Policy::dcec;
    std::vector<std::size_t> user_set_a;
    std::vector<std::size_t> user_set_b;
    std::vector<std::vector<std::size_t>> sbs_sets;
    HitRatios hits;
    std::size_t user_capacity = 0;

    enum class Holder : std::uint8_t { none, pair_a, pair_b, sbs };

    struct Location {
        Holder holder = Holder::none;
        std::uint32_t sbs_slot = 0;
    };
    std::vector<Location> by_rank;  // index = rank - 1

    const Location& locate(std::size_t rank) const { return by_rank[rank - 1]; }
};

/// DCEC: ranks 1..2Cu alternate between the two pair members, the next
/// K*Cs ranks are dealt round-robin over the K cluster SBSs.
/// MPC: ranks 1..Cu at the user, Cu+1..Cu+Cs at its SBS.
inline CachePlacement build_placement(const ContentCatalog& cat, const CacheConfig& cache, Policy policy)
{
    check_capacity(cat, cache, policy);
    CachePlacement pl;
    pl.policy = policy;
    pl.user_capacity = cache.user_capacity;
    pl.by_rank.assign(cat.size, {});
    const std::size_t cu = cache.user_capacity;
    if (policy == Policy::dcec) {
        for (std::size_t rank = 1; rank <= 2 * cu; ++rank) {
            const bool to_a = (rank % 2) == 1;
            (to_a ? pl.user_set_a : pl.user_set_b).push_back(rank);
            pl.by_rank[rank - 1].holder = to_a ? CachePlacement::Holder::pair_a : CachePlacement::Holder::pair_b;
        }
        const std::size_t k = cache.cluster_size;
        pl.sbs_sets.assign(k, {});
        for (std::size_t j = 0; j < k * cache.sbs_capacity; ++j) {
            const std::size_t rank = 2 * cu + 1 + j;
            pl.sbs_sets[j % k].push_back(rank);
            pl.by_rank[rank - 1] = {CachePlacement::Holder::sbs, static_cast<std::uint32_t>(j % k)};
        }
        pl.hits = dcec_hit_ratios(cat, cache);
    } else {
        for (std::size_t rank = 1; rank <= cu; ++rank) {
            pl.user_set_a.push_back(rank);
            pl.by_rank[rank - 1].holder = CachePlacement::Holder::pair_a;
        }
        pl.sbs_sets.assign(1, {});
        for (std::size_t rank = cu + 1; rank <= cu + cache.sbs_capacity; ++rank) {
            pl.sbs_sets[0].push_back(rank);
            pl.by_rank[rank - 1] = {CachePlacement::Holder::sbs, 0};
        }
        pl.hits.unpaired = cat.top_mass(cu);
        pl.hits.paired = pl.hits.unpaired;
        pl.hits.sbs = cat.mass(cu + 1, cu + cache.sbs_capacity);
    }
    return pl;
}

/// Where a single request lands for a given requester.
enum class RequestClass : std::uint8_t { local, d2d, cluster, miss };

enum class UserRole : std::uint8_t { unpaired, pair_a, pair_b };

/// Classifies a request for content `rank` by a user holding `role`.
/// Unpaired users (and every MPC user) hold only ranks 1..Cu.
inline RequestClass classify(const CachePlacement& pl, UserRole role, std::size_t rank)
{
    const auto& loc = pl.locate(rank);
    using H = CachePlacement::Holder;
    switch (loc.holder) {
    case H::sbs:
        return RequestClass::cluster;
    case H::none:
        return RequestClass::miss;
    case H::pair_a:
    case H::pair_b:
        break;
    }
    if (pl.policy == Policy::mpc || role == UserRole::unpaired) {
        return rank <= pl.user_capacity ? RequestClass::local : RequestClass::miss;
    }
    const bool own = (loc.holder == H::pair_a) == (role == UserRole::pair_a);
    return own ? RequestClass::local : RequestClass::d2d;
}

} // namespace dcec
