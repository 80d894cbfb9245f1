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
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dcec/analytic.hpp"
#include "dcec/config.hpp"
#include "dcec/montecarlo.hpp"

namespace dcec {

enum class SweepVariable { xi, lambda_BS, lambda_UE, K, B, C_s };
enum class Mode { analytic, simulate, both };

inline std::string to_string(SweepVariable v)
{
    switch (v) {
    case SweepVariable::xi: return "xi";
    case SweepVariable::lambda_BS: return "lambda_BS";
    case SweepVariable::lambda_UE: return "lambda_UE";
    case SweepVariable::K: return "K";
    case SweepVariable::B: return "B";
    case SweepVariable::C_s: return "C_s";
    }
    return "?";
}

inline std::string to_string(Mode m)
{
    switch (m) {
    case Mode::analytic: return "analytic";
    case Mode::simulate: return "simulate";
    case Mode::both: return "both";
    }
    return "?";
}

struct ExperimentSpec {
    std::string name;
    SweepVariable variable = SweepVariable::xi;
    std::vector<double> values;
    std::vector<Policy> policies{Policy::dcec};
    Mode mode = Mode::analytic;
};

inline ExperimentSpec parse_experiment(const json& j)
{
    using config_detail::parse_enum;
    config_detail::Section s(j, "experiment");
    ExperimentSpec e;
    std::string str;
    if (!s.read("name", e.name) || e.name.empty()) {
        throw ValidationError("experiment.name is required");
    }
    if (!s.read("swept_variable", str)) {
        throw ValidationError("experiment.swept_variable is required");
    }
    e.variable = parse_enum<SweepVariable>(str, "experiment.swept_variable",
                                           {{"xi", SweepVariable::xi},
                                            {"lambda_BS", SweepVariable::lambda_BS},
                                            {"lambda_UE", SweepVariable::lambda_UE},
                                            {"K", SweepVariable::K},
                                            {"B", SweepVariable::B},
                                            {"C_s", SweepVariable::C_s}});
    s.read("values", e.values);
    if (e.values.empty()) {
        throw ValidationError("experiment.values must not be empty");
    }
    std::vector<std::string> pols;
    if (s.read("policies", pols)) {
        e.policies.clear();
        for (const auto& p : pols) {
            e.policies.push_back(parse_enum<Policy>(p, "experiment.policies",
                                                    {{"DCEC", Policy::dcec}, {"dcec", Policy::dcec},
                                                     {"MPC", Policy::mpc}, {"mpc", Policy::mpc}}));
        }
        if (e.policies.empty()) {
            throw ValidationError("experiment.policies must not be empty");
        }
    }
    if (s.read("mode", str)) {
        e.mode = parse_enum<Mode>(str, "experiment.mode",
                                  {{"analytic", Mode::analytic}, {"simulate", Mode::simulate}, {"both", Mode::both}});
    }
    s.finish();
    return e;
}

/// Built-in sweeps. Each is a config fragment layered over the defaults.
inline const std::map<std::string, std::string>& preset_fragments()
{
    static const std::map<std::string, std::string> presets = {
        {"offloading_vs_xi",
         R"({"experiment": {"name": "offloading_vs_xi", "swept_variable": "xi",
             "values": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2],
             "policies": ["DCEC", "MPC"], "mode": "analytic"}})"},
        {"offloading_vs_cs",
         R"({"experiment": {"name": "offloading_vs_cs", "swept_variable": "C_s",
             "values": [50, 100, 150, 200, 250, 300, 350, 400],
             "policies": ["DCEC", "MPC"], "mode": "analytic"}})"},
        {"offloading_vs_k",
         R"({"experiment": {"name": "offloading_vs_k", "swept_variable": "K",
             "values": [1, 2, 3, 4, 5, 6, 7, 8], "policies": ["DCEC"], "mode": "analytic"}})"},
        {"rate_nearest_vs_density",
         R"({"experiment": {"name": "rate_nearest_vs_density", "swept_variable": "lambda_BS",
             "values": [80, 160, 240, 320, 400], "policies": ["DCEC"], "mode": "both"}})"},
        {"rate_cluster_vs_k",
         R"({"experiment": {"name": "rate_cluster_vs_k", "swept_variable": "K",
             "values": [1, 2, 3, 4, 5, 6, 7, 8], "policies": ["DCEC"], "mode": "both"},
             "core": {"lambda_BS": 80, "lambda_UE": 800}})"},
        {"rate_d2d_vs_density",
         R"({"experiment": {"name": "rate_d2d_vs_density", "swept_variable": "lambda_UE",
             "values": [800, 1600, 2400, 3200, 4000], "policies": ["DCEC"], "mode": "both"}})"},
        {"delay_vs_xi",
         R"({"experiment": {"name": "delay_vs_xi", "swept_variable": "xi",
             "values": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2],
             "policies": ["DCEC", "MPC"], "mode": "analytic"}})"},
        {"delay_vs_density",
         R"({"experiment": {"name": "delay_vs_density", "swept_variable": "lambda_BS",
             "values": [80, 160, 240, 320, 400], "policies": ["DCEC", "MPC"], "mode": "both"}})"},
        {"delay_vs_backhaul",
         R"({"experiment": {"name": "delay_vs_backhaul", "swept_variable": "B",
             "values": [1e9, 2e9, 3e9, 4e9, 6e9, 8e9, 12e9, 16e9], "policies": ["DCEC", "MPC"], "mode": "analytic"}})"},
        {"delay_vs_k",
         R"({"experiment": {"name": "delay_vs_k", "swept_variable": "K",
             "values": [1, 2, 3, 4, 5, 6, 7, 8], "policies": ["DCEC"], "mode": "analytic"}})"},
    };
    return presets;
}

inline json preset(const std::string& name)
{
    const auto& all = preset_fragments();
    auto it = all.find(name);
    if (it == all.end()) {
        throw ValidationError("unknown sweep '" + name + "'");
    }
    return json::parse(it->second);
}

namespace experiment_detail {
inline std::size_t as_count(double v, const char* what)
{
    if (!(v >= 0.0) || v != std::floor(v)) {
        throw ValidationError(std::string(what) + " sweep values must be non-negative integers");
    }
    return static_cast<std::size_t>(v);
}
} // namespace experiment_detail

/// `base` with the swept variable set to `value` (densities per km^2).
inline Scenario scenario_at(const Scenario& base, SweepVariable v, double value)
{
    Scenario s = base;
    switch (v) {
    case SweepVariable::xi:
        s.skewness = value;
        break;
    case SweepVariable::lambda_BS: {
        const double ratio = base.system.ue_density / base.system.sbs_density;
        s.system.sbs_density = value * constants::per_km2;
        if (base.couple_ue_density) {
            s.system.ue_density = s.system.sbs_density * ratio;
        }
        break;
    }
    case SweepVariable::lambda_UE:
        s.system.ue_density = value * constants::per_km2;
        break;
    case SweepVariable::K:
        s.cache.cluster_size = experiment_detail::as_count(value, "K");
        break;
    case SweepVariable::B:
        s.system.backhaul_capacity_bps = value;
        break;
    case SweepVariable::C_s:
        s.cache.sbs_capacity = experiment_detail::as_count(value, "C_s");
        break;
    }
    validate(s);
    return s;
}

/// One CSV row. Absent values (a class that never occurs, or a CI in
/// analytic mode) are written as empty fields.
struct SweepRow {
    double sweep_value = 0.0;
    double offloading_gain = 0.0;
    double miss_probability = 0.0;
    std::optional<double> r_b, r_n, r_c, r_d;
    std::optional<double> d_total, d_backhaul, d_nearest, d_cluster, d_d2d;
    std::optional<double> ci_r_b, ci_r_n, ci_r_c, ci_r_d, ci_d_total;
};

inline SweepRow analytic_row(const Scenario& s, double value)
{
    const auto ev = analytic::evaluate(s);
    SweepRow r;
    r.sweep_value = value;
    r.offloading_gain = ev.offloading_gain;
    r.miss_probability = ev.probs.miss;
    r.r_b = ev.rates.backhaul;
    r.r_n = ev.rates.nearest;
    r.r_c = ev.rates.cluster;
    r.r_d = ev.rates.d2d;
    r.d_total = ev.delay.total;
    r.d_backhaul = ev.delay.backhaul;
    r.d_nearest = ev.delay.nearest;
    r.d_cluster = ev.delay.cluster;
    r.d_d2d = ev.delay.d2d;
    return r;
}

inline SweepRow simulated_row(const Scenario& s, double value, const SimulationSummary& sum)
{
    const auto probs = request_probabilities(s.catalog(), s.cache, s.system.paired_fraction, s.policy);
    SweepRow r;
    r.sweep_value = value;
    r.offloading_gain = 1.0 - probs.miss;
    r.miss_probability = probs.miss;
    auto put = [](const Estimate& e, std::optional<double>& mean, std::optional<double>& ci) {
        if (e.present()) {
            mean = e.mean;
            ci = e.ci95();
        }
    };
    put(sum.backhaul_rate, r.r_b, r.ci_r_b);
    put(sum.nearest_rate, r.r_n, r.ci_r_n);
    put(sum.cluster_rate, r.r_c, r.ci_r_c);
    put(sum.d2d_rate, r.r_d, r.ci_r_d);
    try {
        const auto d = estimate_delay(sum, probs, s.system);
        r.d_total = d.total;
        r.d_backhaul = d.backhaul;
        r.d_nearest = d.nearest;
        r.d_cluster = d.cluster;
        r.d_d2d = d.d2d;
        r.ci_d_total = sum.total_delay.ci95();
    } catch (const ValidationError&) {
        // some class with nonzero probability produced no samples
    }
    return r;
}

inline constexpr const char* kSweepHeader =
    "sweep_value,F,P_m,R_B,R_N,R_C,R_D,D_total,D_backhaul,D_nearest,D_cluster,D_d2d,"
    "ci_R_B,ci_R_N,ci_R_C,ci_R_D,ci_D_total";

inline std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
    os << kSweepHeader << '\n';
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const auto& r : rows) {
        os << format_number(r.sweep_value) << ',' << format_number(r.offloading_gain) << ','
           << format_number(r.miss_probability) << ',' << opt(r.r_b) << ',' << opt(r.r_n) << ',' << opt(r.r_c)
           << ',' << opt(r.r_d) << ',' << opt(r.d_total) << ',' << opt(r.d_backhaul) << ',' << opt(r.d_nearest)
           << ',' << opt(r.d_cluster) << ',' << opt(r.d_d2d) << ',' << opt(r.ci_r_b) << ',' << opt(r.ci_r_n)
           << ',' << opt(r.ci_r_c) << ',' << opt(r.ci_r_d) << ',' << opt(r.ci_d_total) << '\n';
    }
}

struct SweepDataset {
    Policy policy = Policy::dcec;
    Mode mode = Mode::analytic;  // analytic or simulate, never both
    std::string file_name;
    std::vector<SweepRow> rows;
};

/// Evaluates the sweep; one dataset per (policy, mode).
inline std::vector<SweepDataset> run(const ExperimentSpec& spec, const Config& cfg)
{
    if (spec.values.empty()) {
        throw ValidationError("sweep '" + spec.name + "' has no values");
    }
    std::vector<Mode> modes;
    if (spec.mode != Mode::simulate) modes.push_back(Mode::analytic);
    if (spec.mode != Mode::analytic) modes.push_back(Mode::simulate);

    std::vector<SweepDataset> out;
    for (Policy policy : spec.policies) {
        Scenario base = cfg.scenario;
        base.policy = policy;
        std::vector<Scenario> points;
        for (double v : spec.values) {
            points.push_back(scenario_at(base, spec.variable, v));
        }
        for (Mode mode : modes) {
            SweepDataset ds;
            ds.policy = policy;
            ds.mode = mode;
            ds.file_name = spec.name + "_" + to_string(policy) + "_" + to_string(mode) + ".csv";
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (mode == Mode::analytic) {
                    ds.rows.push_back(analytic_row(points[i], spec.values[i]));
                } else {
                    const auto sum = run_experiment(points[i], cfg.n_drops, cfg.seed, cfg.simulation);
                    ds.rows.push_back(simulated_row(points[i], spec.values[i], sum));
                }
            }
            out.push_back(std::move(ds));
        }
    }
    return out;
}

/// Writes each dataset to `dir`; returns the written paths.
inline std::vector<std::filesystem::path> write_datasets(const std::vector<SweepDataset>& sets,
                                                         const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    std::vector<std::filesystem::path> paths;
    for (const auto& ds : sets) {
        const auto path = dir / ds.file_name;
        std::ofstream os(path, std::ios::binary);
        if (!os) {
            throw IoError("cannot write '" + path.string() + "'");
        }
        write_sweep_csv(os, ds.rows);
        os.flush();
        if (!os) {
            throw IoError("write failed for '" + path.string() + "'");
        }
        paths.push_back(path);
    }
    return paths;
}

// ---- bound validation ------------------------------------------------------

struct BoundGrid {
    std::vector<double> alphas{1.4, 1.6, 2.0};
    std::vector<double> sbs_densities{80, 160, 240, 320, 400};  // per km^2
    std::vector<std::size_t> cluster_sizes{1, 2, 4};
};

struct BoundCheck {
    double alpha = 0.0;
    double sbs_density = 0.0;  // per km^2
    std::size_t cluster_size = 0;
    std::string metric;        // R_N, R_C or R_D
    double bound = 0.0;
    Estimate simulated;
    /// bound <= simulated mean + 2 stderr
    bool holds() const { return bound <= simulated.mean + 2.0 * simulated.std_error; }
    /// (simulated - bound) / simulated, in percent
    double gap_percent() const { return 100.0 * (simulated.mean - bound) / simulated.mean; }
};

/// Runs the grid; all (alpha, K) points at one density share topologies.
inline std::vector<BoundCheck> validate_bounds(const Config& cfg, const BoundGrid& grid)
{
    if (grid.alphas.empty() || grid.sbs_densities.empty() || grid.cluster_sizes.empty()) {
        throw ValidationError("bound grid must not be empty");
    }
    std::vector<BoundCheck> out;
    for (double lambda : grid.sbs_densities) {
        const Scenario at_density = scenario_at(cfg.scenario, SweepVariable::lambda_BS, lambda);
        std::vector<Scenario> variants;
        for (double a : grid.alphas) {
            for (std::size_t k : grid.cluster_sizes) {
                Scenario v = at_density;
                v.system.pathloss_exponent = a;
                v.cache.cluster_size = k;
                variants.push_back(validate(v));
            }
        }
        const auto results = run_variants(variants, cfg.n_drops, cfg.seed, cfg.simulation);
        for (std::size_t i = 0; i < variants.size(); ++i) {
            const auto sum = summarize(variants[i], results[i]);
            const auto ev = analytic::evaluate(variants[i]);
            auto add = [&](const char* metric, double bound, const Estimate& e) {
                if (!e.present()) return;
                out.push_back({variants[i].system.pathloss_exponent, lambda, variants[i].cache.cluster_size, metric,
                               bound, e});
            };
            add("R_N", ev.rates.nearest, sum.nearest_rate);
            add("R_C", ev.rates.cluster, sum.cluster_rate);
            add("R_D", ev.rates.d2d, sum.d2d_rate);
        }
    }
    return out;
}

inline void write_bound_report(std::ostream& os, const std::vector<BoundCheck>& checks)
{
    os << "alpha,lambda_BS,K,metric,bound,sim_mean,ci,gap_percent,holds\n";
    for (const auto& c : checks) {
        os << format_number(c.alpha) << ',' << format_number(c.sbs_density) << ',' << c.cluster_size << ','
           << c.metric << ',' << format_number(c.bound) << ',' << format_number(c.simulated.mean) << ','
           << format_number(c.simulated.ci95()) << ',' << format_number(c.gap_percent()) << ','
           << (c.holds() ? "yes" : "no") << '\n';
    }
}

// ---- optimal cluster size ---------------------------------------------------

struct OptimalKRow {
    double backhaul_bps = 0.0;
    std::size_t cluster_size = 0;
    double delay = 0.0;
};

inline std::vector<OptimalKRow> optimal_k_report(const Scenario& base, const std::vector<std::size_t>& k_range,
                                                 const std::vector<double>& backhaul_values)
{
    if (backhaul_values.empty()) {
        throw ValidationError("backhaul value list is empty");
    }
    std::vector<OptimalKRow> rows;
    for (double b : backhaul_values) {
        Scenario s = base;
        s.policy = Policy::dcec;
        s.system.backhaul_capacity_bps = b;
        validate(s.system);
        const auto best = analytic::optimal_cluster_size(s, k_range);
        rows.push_back({b, best.cluster_size, best.delay});
    }
    return rows;
}

inline void write_optimal_k_csv(std::ostream& os, const std::vector<OptimalKRow>& rows)
{
    os << "B,K_star,D\n";
    for (const auto& r : rows) {
        os << format_number(r.backhaul_bps) << ',' << r.cluster_size << ',' << format_number(r.delay) << '\n';
    }
}

} // namespace dcec
