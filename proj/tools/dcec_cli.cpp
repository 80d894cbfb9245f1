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

// Command-line front end: analytic evaluation, simulation, named sweeps,
// bound validation and the optimal cluster-size report.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcec.hpp"

namespace {

enum Exit : int { ok = 0, validation_failure = 1, bound_violation = 2, io_failure = 3 };

struct Common {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> drops;
    std::optional<std::size_t> threads;
};

dcec::Config load(const Common& c, const dcec::json* fragment = nullptr)
{
    dcec::Config cfg;
    if (fragment != nullptr) {
        dcec::apply_config(cfg, *fragment);
    }
    if (!c.config_path.empty()) {
        cfg = dcec::load_config(c.config_path, cfg);
    }
    if (c.seed) cfg.seed = *c.seed;
    if (c.drops) cfg.n_drops = *c.drops;
    if (c.threads) cfg.simulation.threads = *c.threads;
    if (cfg.n_drops == 0) {
        throw dcec::ValidationError("--drops must be >= 1");
    }
    return cfg;
}

/// Writes to `path`, or stdout when it is empty.
template <class F>
void emit(const std::string& path, F&& write)
{
    if (path.empty()) {
        write(std::cout);
        return;
    }
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream os(p, std::ios::binary);
    if (!os) {
        throw dcec::IoError("cannot write '" + path + "'");
    }
    write(os);
    os.flush();
    if (!os) {
        throw dcec::IoError("write failed for '" + path + "'");
    }
}

dcec::json evaluation_json(const dcec::Scenario& s)
{
    const auto ev = dcec::analytic::evaluate(s);
    return {{"policy", dcec::to_string(s.policy)},
            {"offloading_gain", ev.offloading_gain},
            {"probabilities",
             {{"local", ev.probs.local}, {"d2d", ev.probs.d2d}, {"cluster", ev.probs.cluster}, {"miss", ev.probs.miss}}},
            {"rates_bps",
             {{"backhaul", ev.rates.backhaul},
              {"nearest", ev.rates.nearest},
              {"cluster", ev.rates.cluster},
              {"d2d", ev.rates.d2d}}},
            {"delay_s",
             {{"total", ev.delay.total},
              {"backhaul", ev.delay.backhaul},
              {"nearest", ev.delay.nearest},
              {"cluster", ev.delay.cluster},
              {"d2d", ev.delay.d2d}}},
            {"warnings", ev.warnings}};
}

dcec::json estimate_json(const dcec::Estimate& e)
{
    if (!e.present()) {
        return nullptr;
    }
    return {{"count", e.count}, {"mean", e.mean}, {"stderr", e.std_error}, {"ci95", e.ci95()}};
}

dcec::json summary_json(const dcec::SimulationSummary& s)
{
    char fp[20];
    std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(s.fingerprint));
    dcec::json ln = dcec::json::array();
    for (const auto& e : s.ln_rk) ln.push_back(estimate_json(e));
    return {{"drops", s.drops},
            {"fingerprint", fp},
            {"rates_bps",
             {{"backhaul", estimate_json(s.backhaul_rate)},
              {"nearest", estimate_json(s.nearest_rate)},
              {"cluster", estimate_json(s.cluster_rate)},
              {"d2d", estimate_json(s.d2d_rate)}}},
            {"loads",
             {{"tagged_nearest", estimate_json(s.nearest_load)},
              {"tagged_cluster", estimate_json(s.cluster_load)},
              {"per_sbs_backhaul", estimate_json(s.mean_backhaul_load)},
              {"per_sbs_cellular", estimate_json(s.mean_cell_load)}}},
            {"delay_s", estimate_json(s.total_delay)},
            {"ln_r_k", ln}};
}

template <class T>
std::vector<T> split_list(const std::string& text, const char* what)
{
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::istringstream is(item);
        T v{};
        if (!(is >> v) || !(is >> std::ws).eof()) {
            throw dcec::ValidationError(std::string("bad value '") + item + "' in " + what);
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw dcec::ValidationError(std::string(what) + " must not be empty");
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cooperative edge caching: analytic model, Monte Carlo simulator and sweeps"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "JSON configuration file");
        sub->add_option("--seed", common.seed, "base random seed");
        sub->add_option("--drops", common.drops, "Monte Carlo drops per point");
        sub->add_option("--threads", common.threads, "worker threads (wall time only)");
    };

    auto* analytic = app.add_subcommand("analytic", "evaluate the analytic model at one operating point");
    add_common(analytic);
    analytic->add_option("--out", common.out, "output file (default stdout)");

    std::string samples_path;
    std::string drop_path;
    auto* simulate = app.add_subcommand("simulate", "run the Monte Carlo simulator at one operating point");
    add_common(simulate);
    simulate->add_option("--out", common.out, "output file (default stdout)");
    simulate->add_option("--dump-samples", samples_path, "CSV of per-drop samples");
    simulate->add_option("--dump-drop", drop_path, "CSV of the first drop's topology");

    std::string sweep_name;
    std::string sweep_mode;
    bool list_presets = false;
    auto* sweep = app.add_subcommand("sweep", "run a named sweep (or the config's experiment section)");
    add_common(sweep);
    sweep->add_option("name", sweep_name, "preset name");
    sweep->add_option("--out", common.out, "output directory (default .)");
    sweep->add_option("--mode", sweep_mode, "override mode: analytic, simulate or both");
    sweep->add_flag("--list", list_presets, "list preset names");

    std::string alphas = "1.4,1.6,2";
    std::string densities = "80,160,240,320,400";
    std::string ks = "1,2,4";
    auto* bounds = app.add_subcommand("validate-bounds", "check analytic rate bounds against simulation");
    add_common(bounds);
    bounds->add_option("--out", common.out, "report file (default stdout)");
    bounds->add_option("--alphas", alphas, "comma-separated path-loss exponents");
    bounds->add_option("--densities", densities, "comma-separated SBS densities per km^2");
    bounds->add_option("--ks", ks, "comma-separated cluster sizes");

    std::size_t k_min = 1;
    std::size_t k_max = 8;
    std::string backhaul = "1e9,2e9,3e9,4e9,6e9,8e9,12e9,16e9";
    auto* optk = app.add_subcommand("optimal-k", "analytic delay-minimising cluster size per backhaul capacity");
    add_common(optk);
    optk->add_option("--out", common.out, "output file (default stdout)");
    optk->add_option("--k-min", k_min, "smallest cluster size");
    optk->add_option("--k-max", k_max, "largest cluster size");
    optk->add_option("--backhaul", backhaul, "comma-separated backhaul capacities in bit/s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::validation_failure;
    }

    try {
        if (analytic->parsed()) {
            const auto cfg = load(common);
            const auto j = evaluation_json(cfg.scenario);
            emit(common.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
            return Exit::ok;
        }
        if (simulate->parsed()) {
            const auto cfg = load(common);
            const auto results = dcec::run_drops(cfg.scenario, cfg.n_drops, cfg.seed, cfg.simulation);
            const auto sum = dcec::summarize(cfg.scenario, results);
            dcec::json j = summary_json(sum);
            j["analytic"] = evaluation_json(cfg.scenario);
            emit(common.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
            if (!samples_path.empty()) {
                emit(samples_path, [&](std::ostream& os) { dcec::write_samples_csv(os, results); });
            }
            if (!drop_path.empty()) {
                const auto cat = cfg.scenario.catalog();
                const auto placement = dcec::build_placement(cat, cfg.scenario.cache, cfg.scenario.policy);
                auto rng = dcec::mc::drop_stream(cfg.seed, 0);
                dcec::NetworkDrop drop;
                dcec::simulate_drop(cfg.scenario, cat, placement, rng, cfg.simulation, &drop);
                emit(drop_path, [&](std::ostream& os) { dcec::write_drop_csv(os, drop); });
            }
            return Exit::ok;
        }
        if (sweep->parsed()) {
            if (list_presets) {
                for (const auto& [name, fragment] : dcec::preset_fragments()) std::cout << name << '\n';
                return Exit::ok;
            }
            std::optional<dcec::json> fragment;
            if (!sweep_name.empty()) fragment = dcec::preset(sweep_name);
            const auto cfg = load(common, fragment ? &*fragment : nullptr);
            if (cfg.experiment.is_null()) {
                throw dcec::ValidationError("no sweep name given and the config has no experiment section");
            }
            auto spec = dcec::parse_experiment(cfg.experiment);
            if (!sweep_mode.empty()) {
                spec.mode = dcec::config_detail::parse_enum<dcec::Mode>(
                    sweep_mode, "--mode",
                    {{"analytic", dcec::Mode::analytic}, {"simulate", dcec::Mode::simulate}, {"both", dcec::Mode::both}});
            }
            const auto sets = dcec::run(spec, cfg);
            const auto paths = dcec::write_datasets(sets, common.out.empty() ? "." : common.out);
            for (const auto& p : paths) std::cout << p.string() << '\n';
            return Exit::ok;
        }
        if (bounds->parsed()) {
            const auto cfg = load(common);
            dcec::BoundGrid grid;
            grid.alphas = split_list<double>(alphas, "--alphas");
            grid.sbs_densities = split_list<double>(densities, "--densities");
            grid.cluster_sizes = split_list<std::size_t>(ks, "--ks");
            const auto checks = dcec::validate_bounds(cfg, grid);
            emit(common.out, [&](std::ostream& os) { dcec::write_bound_report(os, checks); });
            for (const auto& c : checks) {
                if (!c.holds()) {
                    std::cerr << "bound violated: alpha=" << c.alpha << " lambda_BS=" << c.sbs_density
                              << " K=" << c.cluster_size << " " << c.metric << '\n';
                    return Exit::bound_violation;
                }
            }
            return Exit::ok;
        }
        if (optk->parsed()) {
            const auto cfg = load(common);
            if (k_min == 0 || k_max < k_min) {
                throw dcec::ValidationError("cluster-size range must satisfy 1 <= k-min <= k-max");
            }
            std::vector<std::size_t> range;
            for (std::size_t k = k_min; k <= k_max; ++k) range.push_back(k);
            const auto rows =
                dcec::optimal_k_report(cfg.scenario, range, split_list<double>(backhaul, "--backhaul"));
            emit(common.out, [&](std::ostream& os) { dcec::write_optimal_k_csv(os, rows); });
            return Exit::ok;
        }
    } catch (const dcec::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::io_failure;
    } catch (const dcec::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::validation_failure;
    } catch (const dcec::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::validation_failure;
    }
    return Exit::ok;
}
