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

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dcec/antenna.hpp"
#include "dcec/core.hpp"
#include "dcec/errors.hpp"
#include "dcec/montecarlo.hpp"
#include "dcec/popularity.hpp"
#include "dcec/scenario.hpp"

namespace dcec {

using json = nlohmann::json;

/// Everything a run needs: the operating point, simulator switches and the
/// optional experiment section (interpreted by the experiment layer).
struct Config {
    Scenario scenario;
    SimulationOptions simulation;
    std::size_t n_drops = 10000;
    std::uint64_t seed = 1;
    json experiment;  // null when absent
};

namespace config_detail {

class Section {
public:
    Section(const json& j, std::string name) : j_(j), name_(std::move(name))
    {
        if (!j_.is_object()) {
            throw ValidationError("section '" + name_ + "' must be an object");
        }
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            pending_.push_back(it.key());
        }
    }

    template <class T>
    bool read(const char* key, T& out)
    {
        auto it = j_.find(key);
        if (it == j_.end()) {
            return false;
        }
        std::erase(pending_, std::string(key));
        try {
            out = it->template get<T>();
        } catch (const json::exception&) {
            throw ValidationError("key '" + name_ + "." + key + "' has the wrong type");
        }
        return true;
    }

    const json* child(const char* key)
    {
        auto it = j_.find(key);
        if (it == j_.end()) {
            return nullptr;
        }
        std::erase(pending_, std::string(key));
        return &*it;
    }

    void finish() const
    {
        if (!pending_.empty()) {
            throw ValidationError("unknown key '" + name_ + "." + pending_.front() + "'");
        }
    }

private:
    const json& j_;
    std::string name_;
    std::vector<std::string> pending_;
};

inline void apply_antenna(const json& j, const std::string& name, AntennaPattern& a)
{
    Section s(j, name);
    double gm = linear_to_db(a.main_gain);
    double gs = linear_to_db(a.side_gain);
    double omega = a.halfpower_bw * 180.0 / std::numbers::pi;
    double c = a.rolloff;
    std::optional<double> theta;
    double theta_v = 0.0;
    s.read("G_m_dB", gm);
    s.read("G_s_dB", gs);
    s.read("omega_m_deg", omega);
    s.read("c", c);
    if (s.read("theta_m_deg", theta_v)) {
        theta = theta_v;
    }
    s.finish();
    a = AntennaPattern::from_db(gm, gs, omega, c, theta);
    validate(a);
}

template <class E>
E parse_enum(const std::string& v, const std::string& key, std::initializer_list<std::pair<const char*, E>> options)
{
    for (const auto& [name, value] : options) {
        if (v == name) {
            return value;
        }
    }
    throw ValidationError("key '" + key + "' has unsupported value '" + v + "'");
}

} // namespace config_detail

/// Layers the sections of `j` over `cfg`. Missing keys keep their current
/// value; unknown keys are rejected.
inline Config& apply_config(Config& cfg, const json& j)
{
    using config_detail::Section;
    Section root(j, "config");
    SystemParams& p = cfg.scenario.system;

    if (const json* core = root.child("core")) {
        Section s(*core, "core");
        double v = 0.0;
        std::string str;
        if (s.read("area_km2", v)) p.area_m2 = v * 1e6;
        if (s.read("W", v)) p.bandwidth_hz = v;
        if (s.read("phi", v)) p.d2d_fraction = v;
        if (s.read("f", v)) p.carrier_freq_hz = v;
        if (s.read("alpha", v)) p.pathloss_exponent = v;
        if (s.read("P_B_dBm", v)) p.sbs_tx_power_w = dbm_to_watts(v);
        if (s.read("P_U_dBm", v)) p.ue_tx_power_w = dbm_to_watts(v);
        if (s.read("N_o_dBm_Hz", v)) p.noise_psd_w_per_hz = dbm_to_watts(v);
        if (s.read("d_0", v)) p.ref_distance_m = v;
        if (s.read("r_d_max", v)) p.max_d2d_distance_m = v;
        if (s.read("lambda_BS", v)) p.sbs_density = v * constants::per_km2;
        if (s.read("lambda_UE", v)) p.ue_density = v * constants::per_km2;
        if (s.read("delta", v)) p.paired_fraction = v;
        if (s.read("B", v)) p.backhaul_capacity_bps = v;
        if (s.read("kappa", v)) p.cell_area_shape = v;
        if (s.read("nu", v)) p.content_size_bits = v;
        if (s.read("euler_gamma", v)) p.euler_gamma = v;
        if (s.read("pathloss_constant_convention", str)) {
            p.pathloss_convention = config_detail::parse_enum<PathlossConvention>(
                str, "core.pathloss_constant_convention",
                {{"literal", PathlossConvention::literal}, {"friis", PathlossConvention::friis}});
        }
        s.read("couple_ue_density", cfg.scenario.couple_ue_density);
        s.finish();
    }
    if (const json* pop = root.child("popularity")) {
        Section s(*pop, "popularity");
        std::string str;
        s.read("catalog_size", cfg.scenario.catalog_size);
        s.read("xi", cfg.scenario.skewness);
        s.read("C_u", cfg.scenario.cache.user_capacity);
        s.read("C_s", cfg.scenario.cache.sbs_capacity);
        s.read("K", cfg.scenario.cache.cluster_size);
        if (s.read("policy", str)) {
            cfg.scenario.policy = config_detail::parse_enum<Policy>(
                str, "popularity.policy", {{"DCEC", Policy::dcec}, {"dcec", Policy::dcec}, {"MPC", Policy::mpc},
                                           {"mpc", Policy::mpc}});
        }
        s.finish();
    }
    if (const json* ant = root.child("antenna")) {
        Section s(*ant, "antenna");
        if (const json* a = s.child("sbs_antenna")) config_detail::apply_antenna(*a, "antenna.sbs_antenna", p.sbs_antenna);
        if (const json* a = s.child("ue_antenna")) config_detail::apply_antenna(*a, "antenna.ue_antenna", p.ue_antenna);
        s.finish();
    }
    if (const json* geo = root.child("geometry")) {
        Section s(*geo, "geometry");
        std::string str;
        if (s.read("boundary", str)) {
            cfg.simulation.boundary = config_detail::parse_enum<Boundary>(
                str, "geometry.boundary", {{"torus", Boundary::torus}, {"truncated", Boundary::truncated}});
        }
        s.finish();
    }
    if (const json* mc = root.child("montecarlo")) {
        Section s(*mc, "montecarlo");
        std::string str;
        s.read("n_drops", cfg.n_drops);
        s.read("seed", cfg.seed);
        s.read("threads", cfg.simulation.threads);
        s.read("distance_orders", cfg.simulation.distance_orders);
        if (s.read("interference_mode", str)) {
            cfg.simulation.interference = config_detail::parse_enum<InterferenceMode>(
                str, "montecarlo.interference_mode",
                {{"sampled", InterferenceMode::sampled}, {"mean_gain", InterferenceMode::mean_gain}});
        }
        if (s.read("fading", str)) {
            cfg.simulation.fading = config_detail::parse_enum<Fading>(
                str, "montecarlo.fading", {{"rayleigh", Fading::rayleigh}, {"none", Fading::none}});
        }
        s.finish();
    }
    if (const json* ex = root.child("experiment")) {
        if (!ex->is_object()) {
            throw ValidationError("section 'experiment' must be an object");
        }
        if (cfg.experiment.is_null()) {
            cfg.experiment = *ex;
        } else {
            cfg.experiment.update(*ex);
        }
    }
    root.finish();
    if (cfg.n_drops == 0) {
        throw ValidationError("montecarlo.n_drops must be >= 1");
    }
    validate(cfg.scenario);
    return cfg;
}

inline json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

inline Config load_config(const std::string& path, Config base = {})
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config(base, parse_json(ss.str(), path));
    return base;
}

/// The effective configuration in the same layout `apply_config` accepts.
inline json to_json(const Config& cfg)
{
    const SystemParams& p = cfg.scenario.system;
    auto antenna = [](const AntennaPattern& a) {
        return json{{"G_m_dB", linear_to_db(a.main_gain)},
                    {"G_s_dB", linear_to_db(a.side_gain)},
                    {"omega_m_deg", a.halfpower_bw * 180.0 / std::numbers::pi},
                    {"theta_m_deg", a.mainlobe_bw * 180.0 / std::numbers::pi},
                    {"c", a.rolloff}};
    };
    json j;
    j["core"] = {{"area_km2", p.area_m2 / 1e6},
                 {"W", p.bandwidth_hz},
                 {"phi", p.d2d_fraction},
                 {"f", p.carrier_freq_hz},
                 {"alpha", p.pathloss_exponent},
                 {"P_B_dBm", linear_to_db(p.sbs_tx_power_w) + 30.0},
                 {"P_U_dBm", linear_to_db(p.ue_tx_power_w) + 30.0},
                 {"N_o_dBm_Hz", linear_to_db(p.noise_psd_w_per_hz) + 30.0},
                 {"d_0", p.ref_distance_m},
                 {"r_d_max", p.max_d2d_distance_m},
                 {"lambda_BS", p.sbs_density / constants::per_km2},
                 {"lambda_UE", p.ue_density / constants::per_km2},
                 {"delta", p.paired_fraction},
                 {"B", p.backhaul_capacity_bps},
                 {"kappa", p.cell_area_shape},
                 {"nu", p.content_size_bits},
                 {"euler_gamma", p.euler_gamma},
                 {"pathloss_constant_convention", to_string(p.pathloss_convention)},
                 {"couple_ue_density", cfg.scenario.couple_ue_density}};
    j["popularity"] = {{"catalog_size", cfg.scenario.catalog_size},
                       {"xi", cfg.scenario.skewness},
                       {"C_u", cfg.scenario.cache.user_capacity},
                       {"C_s", cfg.scenario.cache.sbs_capacity},
                       {"K", cfg.scenario.cache.cluster_size},
                       {"policy", cfg.scenario.policy == Policy::dcec ? "DCEC" : "MPC"}};
    j["antenna"] = {{"sbs_antenna", antenna(p.sbs_antenna)}, {"ue_antenna", antenna(p.ue_antenna)}};
    j["geometry"] = {{"boundary", to_string(cfg.simulation.boundary)}};
    j["montecarlo"] = {{"n_drops", cfg.n_drops},
                       {"seed", cfg.seed},
                       {"threads", cfg.simulation.threads},
                       {"distance_orders", cfg.simulation.distance_orders},
                       {"interference_mode", to_string(cfg.simulation.interference)},
                       {"fading", cfg.simulation.fading == Fading::rayleigh ? "rayleigh" : "none"}};
    if (!cfg.experiment.is_null()) {
        j["experiment"] = cfg.experiment;
    }
    return j;
}

} // namespace dcec
