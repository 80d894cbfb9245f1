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
#include <cstddef>
#include <cstdio>
#include <string>

#include "dcec/core.hpp"
#include "dcec/popularity.hpp"

namespace dcec {

/// One fully specified operating point: physical parameters plus the
/// catalog and caching configuration.
struct Scenario {
    SystemParams system;
    std::size_t catalog_size = 2000;
    double skewness = 0.56;
    CacheConfig cache;
    Policy policy = Policy::dcec;
    /// When lambda_BS is swept, scale lambda_UE with it so users per SBS stay fixed.
    bool couple_ue_density = true;

    ContentCatalog catalog() const { return zipf_popularity(catalog_size, skewness); }
};

inline const Scenario& validate(const Scenario& s)
{
    validate(s.system);
    auto cat = s.catalog();
    check_capacity(cat, s.cache, s.policy);
    return s;
}

/// Number of nodes of a homogeneous PPP expected in the region, rounded.
inline long long expected_count(double density, double area) { return std::llround(density * area); }

/// Canonical text form of every parameter, used for run fingerprints.
inline std::string describe(const Scenario& s)
{
    const SystemParams& p = s.system;
    std::string out;
    char buf[96];
    auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.17g;", key, v);
        out += buf;
    };
    auto antenna = [&](const char* prefix, const AntennaPattern& a) {
        out += prefix;
        put(".Gm", a.main_gain);
        out += prefix;
        put(".Gs", a.side_gain);
        out += prefix;
        put(".omega", a.halfpower_bw);
        out += prefix;
        put(".theta", a.mainlobe_bw);
        out += prefix;
        put(".c", a.rolloff);
    };
    put("area", p.area_m2);
    put("W", p.bandwidth_hz);
    put("phi", p.d2d_fraction);
    put("f", p.carrier_freq_hz);
    put("alpha", p.pathloss_exponent);
    put("P_B", p.sbs_tx_power_w);
    put("P_U", p.ue_tx_power_w);
    antenna("sbs", p.sbs_antenna);
    antenna("ue", p.ue_antenna);
    put("d0", p.ref_distance_m);
    put("r_d_max", p.max_d2d_distance_m);
    put("lambda_BS", p.sbs_density);
    put("lambda_UE", p.ue_density);
    put("delta", p.paired_fraction);
    put("B", p.backhaul_capacity_bps);
    put("N_o", p.noise_psd_w_per_hz);
    put("kappa", p.cell_area_shape);
    put("nu", p.content_size_bits);
    put("euler", p.euler_gamma);
    out += "pl=" + to_string(p.pathloss_convention) + ";";
    put("F", static_cast<double>(s.catalog_size));
    put("xi", s.skewness);
    put("C_u", static_cast<double>(s.cache.user_capacity));
    put("C_s", static_cast<double>(s.cache.sbs_capacity));
    put("K", static_cast<double>(s.cache.cluster_size));
    out += "policy=" + to_string(s.policy) + ";";
    return out;
}

} // namespace dcec
