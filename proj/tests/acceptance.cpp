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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dcec.hpp"

namespace {

constexpr std::size_t kDrops = 10000;
constexpr std::uint64_t kSeed = 1;

int failures = 0;

void report(int id, bool ok, const std::string& what)
{
    std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

using GridKey = std::tuple<double, double, std::size_t>;  // alpha, lambda_BS per km^2, K

struct GridPoint {
    dcec::SimulationSummary sim;
    dcec::analytic::Evaluation analytic;
};

std::map<GridKey, GridPoint> run_grid(const dcec::Config& cfg, const dcec::BoundGrid& grid)
{
    std::map<GridKey, GridPoint> out;
    for (double lambda : grid.sbs_densities) {
        const auto at = dcec::scenario_at(cfg.scenario, dcec::SweepVariable::lambda_BS, lambda);
        std::vector<dcec::Scenario> variants;
        for (double a : grid.alphas) {
            for (std::size_t k : grid.cluster_sizes) {
                dcec::Scenario v = at;
                v.system.pathloss_exponent = a;
                v.cache.cluster_size = k;
                variants.push_back(v);
            }
        }
        const auto results = dcec::run_variants(variants, kDrops, kSeed, cfg.simulation);
        for (std::size_t i = 0; i < variants.size(); ++i) {
            const auto& v = variants[i];
            out[{v.system.pathloss_exponent, lambda, v.cache.cluster_size}] =
                GridPoint{dcec::summarize(v, results[i]), dcec::analytic::evaluate(v)};
        }
    }
    return out;
}

void nearest_density_robustness(std::map<GridKey, GridPoint>& grid)
{
    auto drop = [&](double a) {
        const double lo = grid.at({a, 80.0, 4}).sim.nearest_rate.mean;
        const double hi = grid.at({a, 400.0, 4}).sim.nearest_rate.mean;
        return 100.0 * (1.0 - hi / lo);
    };
    const double d2 = drop(2.0);
    const double d14 = drop(1.4);
    report(1, within(d2, 8.0, 5.0) && within(d14, 15.0, 5.0),
           fmt("E[R_N] drop 80->400/km^2: alpha=2 %.1f%% (want 8+-5), alpha=1.4 %.1f%% (want 15+-5)", d2, d14));
}

void cluster_size_penalty(std::map<GridKey, GridPoint>& grid)
{
    const double k2 = grid.at({1.6, 80.0, 2}).sim.cluster_rate.mean / 1e9;
    const double k4 = grid.at({1.6, 80.0, 4}).sim.cluster_rate.mean / 1e9;
    const double drop = 100.0 * (1.0 - k4 / k2);
    const bool ok = within(k2, 1.08, 0.15 * 1.08) && within(k4, 0.83, 0.15 * 0.83) && within(drop, 23.0, 5.0);
    report(2, ok,
           fmt("E[R_C] at lambda_BS=80: K=2 %.3f Gbit/s (want 1.08+-15%%), K=4 %.3f Gbit/s (want 0.83+-15%%), "
               "drop %.1f%% (want 23+-5)",
               k2, k4, drop));
}

void d2d_density(const dcec::Config& cfg)
{
    auto rate_at = [&](double lambda_d) {
        dcec::Scenario s = cfg.scenario;
        const auto probs = dcec::request_probabilities(s.catalog(), s.cache, s.system.paired_fraction, s.policy);
        s.system.ue_density = lambda_d / probs.d2d * dcec::constants::per_km2;
        return dcec::run_experiment(s, kDrops, kSeed, cfg.simulation).d2d_rate.mean / 1e9;
    };
    const double sparse = rate_at(40.0);
    const double dense = rate_at(800.0);
    report(3, within(sparse, 4.0, 0.8) && within(dense, 2.0, 0.4),
           fmt("E[R_D]: lambda_D=40 %.3f Gbit/s (want 4+-20%%), lambda_D=800 %.3f Gbit/s (want 2+-20%%)", sparse,
               dense));
}

void delay_vs_density(std::map<GridKey, GridPoint>& grid)
{
    const auto& lo = grid.at({1.6, 80.0, 4});
    const auto& hi = grid.at({1.6, 400.0, 4});
    const double rise = 100.0 * (hi.sim.total_delay.mean / lo.sim.total_delay.mean - 1.0);
    const double rise_analytic = 100.0 * (hi.analytic.delay.total / lo.analytic.delay.total - 1.0);
    report(4, within(rise, 23.0, 8.0),
           fmt("simulated delay rise 80->400/km^2: %.1f%% (want 23+-8); analytic %.1f%% for reference", rise,
               rise_analytic));
}

void dcec_vs_mpc(const dcec::Config& cfg)
{
    dcec::Scenario s = cfg.scenario;
    s.skewness = 0.6;
    s.cache.cluster_size = 4;
    dcec::Scenario m = s;
    m.policy = dcec::Policy::mpc;
    const auto d = dcec::analytic::evaluate(s);
    const auto p = dcec::analytic::evaluate(m);
    const double cut = 100.0 * (1.0 - d.delay.total / p.delay.total);
    const double more = 100.0 * (d.offloading_gain / p.offloading_gain - 1.0);
    report(5, within(cut, 48.0, 10.0) && within(more, 50.0, 15.0),
           fmt("xi=0.6 K=4: DCEC delay %.1f%% below MPC (want 48+-10); F %.4f vs %.4f, +%.1f%% (want 50+-15)", cut,
               d.offloading_gain, p.offloading_gain, more));
}

void cluster_offloading(const dcec::Config& cfg)
{
    auto f = [&](std::size_t k) {
        dcec::Scenario s = cfg.scenario;
        s.cache.cluster_size = k;
        return dcec::analytic::evaluate(s).offloading_gain;
    };
    const double more = 100.0 * (f(8) / f(2) - 1.0);
    report(6, within(more, 70.0, 15.0),
           fmt("xi=0.56: F(K=8) %.4f vs F(K=2) %.4f, +%.1f%% (want 70+-15)", f(8), f(2), more));
}

void optimal_cluster(const dcec::Config& cfg)
{
    const std::vector<std::size_t> ks{1, 2, 3, 4, 5, 6, 7, 8};
    auto kstar = [&](dcec::Scenario s) { return dcec::analytic::optimal_cluster_size(s, ks).cluster_size; };
    const auto k100 = kstar(dcec::scenario_at(cfg.scenario, dcec::SweepVariable::lambda_BS, 100.0));
    const auto k400 = kstar(dcec::scenario_at(cfg.scenario, dcec::SweepVariable::lambda_BS, 400.0));
    const auto kb2 = kstar(dcec::scenario_at(cfg.scenario, dcec::SweepVariable::B, 2e9));
    const auto kb16 = kstar(dcec::scenario_at(cfg.scenario, dcec::SweepVariable::B, 16e9));
    auto near = [](std::size_t k, double want) { return within(static_cast<double>(k), want, 1.0); };
    report(7, near(k100, 7) && near(k400, 6) && near(kb2, 7) && near(kb16, 3),
           fmt("K*: lambda_BS=100 -> %zu (want 7+-1), 400 -> %zu (want 6+-1), B=2G -> %zu (want 7+-1), "
               "B=16G -> %zu (want 3+-1)",
               k100, k400, kb2, kb16));
}

void zipf_properties()
{
    bool ok = true;
    double worst_norm = 0.0;
    int points = 0;
    for (std::size_t size : {10, 100, 1000, 2000, 10000}) {
        for (double xi = 0.0; xi <= 2.0 + 1e-9; xi += 0.1) {
            const auto cat = dcec::zipf_popularity(size, xi);
            double total = 0.0;
            for (std::size_t r = 1; r <= size; ++r) {
                total += cat.popularity[r - 1];
                if (r > 1 && cat.popularity[r - 1] > cat.popularity[r - 2]) ok = false;
            }
            worst_norm = std::max(worst_norm, std::abs(total - 1.0));
            for (std::size_t cu = 1; 2 * cu <= size; cu = cu * 2 + 1) {
                const auto h = dcec::dcec_hit_ratios(cat, {cu, 0, 1});
                if (!(h.paired <= h.unpaired * (1 + 1e-12) && h.unpaired <= 2.0 * h.paired * (1 + 1e-12))) ok = false;
                ++points;
            }
        }
    }
    ok = ok && worst_norm < 1e-12;
    report(8, ok, fmt("Zipf sum error %.2e over 105 (|F|, xi) points; order and h_p <= h_u <= 2h_p at %d points",
                      worst_norm, points));
}

double signed_gamma_ratio_sum(double beta, int n)
{
    double s = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double a = j - beta;
        const double sign = std::tgamma(a) < 0.0 ? -1.0 : 1.0;
        s += sign * std::exp(std::lgamma(a) - std::lgamma(static_cast<double>(j)));
    }
    return s;
}

void gamma_sum_identity()
{
    double worst = 0.0;
    for (double beta : {0.7, 1.4, 2.5}) {
        for (int n = 1; n <= 500; ++n) {
            const double closed = dcec::analytic::moment_sum_head(2.0 * beta, n);
            const double brute = signed_gamma_ratio_sum(beta, n);
            worst = std::max(worst, std::abs(closed - brute) / std::max(1.0, std::abs(brute)));
        }
    }
    report(9, worst <= 1e-8, fmt("worst scaled error %.2e over beta in {0.7, 1.4, 2.5}, n <= 500", worst));
}

void average_gain_quadrature()
{
    using boost::math::quadrature::gauss_kronrod;
    constexpr double pi = std::numbers::pi;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double gm = 3.0 + 27.0 * u(rng);
        const double gs = -20.0 + (gm + 19.0) * u(rng);
        const double omega = 2.0 + 58.0 * u(rng);
        const double c = 0.1 + 0.9 * u(rng);
        auto p = dcec::AntennaPattern::from_db(gm, gs, omega, c, omega * (1.0 + 3.0 * u(rng)));
        p.mainlobe_bw = std::min(p.mainlobe_bw, 300.0 * pi / 180.0);
        auto g = [&](double t) { return dcec::gain(p, t); };
        const double edge = std::min(0.5 * p.mainlobe_bw, pi);
        double q = gauss_kronrod<double, 61>::integrate(g, 0.0, edge, 20, 1e-14);
        if (edge < pi) q += gauss_kronrod<double, 61>::integrate(g, edge, pi, 20, 1e-14);
        q /= pi;
        worst = std::max(worst, std::abs(dcec::average_gain(p) - q) / q);
    }
    report(10, worst <= 1e-6, fmt("worst relative error %.2e on 100 random patterns", worst));
}

void bound_validity(std::map<GridKey, GridPoint>& grid)
{
    int checks = 0;
    int violations = 0;
    std::string first;
    for (const auto& [key, pt] : grid) {
        const auto& [a, lambda, k] = key;
        auto check = [&](const char* metric, double bound, const dcec::Estimate& e) {
            if (!e.present()) return;
            ++checks;
            if (bound > e.mean + 2.0 * e.std_error) {
                ++violations;
                if (first.empty()) {
                    first = fmt(" first: alpha=%g lambda=%g K=%zu %s bound %.4g > %.4g", a, lambda, k, metric, bound,
                                e.mean);
                }
            }
        };
        check("R_N", pt.analytic.rates.nearest, pt.sim.nearest_rate);
        check("R_C", pt.analytic.rates.cluster, pt.sim.cluster_rate);
        check("R_D", pt.analytic.rates.d2d, pt.sim.d2d_rate);
    }
    report(11, violations == 0 && checks == 135,
           fmt("%d of %d bound checks hold (45 grid points x 3 rates)%s", checks - violations, checks, first.c_str()));
}

void load_and_distance_oracles(const dcec::Config& cfg)
{
    dcec::Config c = cfg;
    c.simulation.distance_orders = 4;
    const auto& s = c.scenario;
    const auto sum = dcec::run_experiment(s, kDrops, kSeed, c.simulation);
    const auto probs = dcec::request_probabilities(s.catalog(), s.cache, s.system.paired_fraction, s.policy);
    const double nb = dcec::analytic::expected_backhaul_load(s.system, probs.miss);
    const double nc = dcec::analytic::expected_cell_load(s.system, probs.miss + probs.cluster);
    auto z = [](const dcec::Estimate& e, double want) { return (e.mean - want) / e.std_error; };
    const double zb = z(sum.mean_backhaul_load, nb);
    const double zc = z(sum.mean_cell_load, nc);
    std::string text = fmt("E[N_B] %.4f vs %.4f (z=%.1f), E[N_C] %.4f vs %.4f (z=%.1f)", sum.mean_backhaul_load.mean,
                           nb, zb, sum.mean_cell_load.mean, nc, zc);
    bool ok = std::abs(zb) <= 3.0 && std::abs(zc) <= 3.0;
    for (std::size_t k = 0; k < sum.ln_rk.size(); ++k) {
        const double want = dcec::analytic::expected_ln_rk(k + 1, s.system.sbs_density);
        const double zk = z(sum.ln_rk[k], want);
        ok = ok && std::abs(zk) <= 3.0;
        text += fmt(", E[ln r_%zu] z=%.1f", k + 1, zk);
    }
    ok = ok && sum.ln_rk.size() == 4;
    report(12, ok, text + " (want |z| <= 3)");
}

void determinism(const dcec::Config& cfg)
{
    dcec::Config c = cfg;
    c.n_drops = kDrops;
    const dcec::ExperimentSpec spec{"determinism", dcec::SweepVariable::lambda_BS, {80.0, 160.0},
                                    {dcec::Policy::dcec}, dcec::Mode::simulate};
    std::vector<std::string> csv;
    for (std::size_t threads : {1, 2, 4, 1}) {
        c.simulation.threads = threads;
        std::ostringstream os;
        dcec::write_sweep_csv(os, dcec::run(spec, c).front().rows);
        csv.push_back(os.str());
    }
    bool ok = true;
    for (const auto& x : csv) ok = ok && x == csv.front();
    report(13, ok, fmt("simulated sweep CSV (%zu bytes) identical at 1, 2, 4 threads and on repeat", csv[0].size()));
}

} // namespace

int main()
{
    const dcec::Config cfg;
    zipf_properties();
    gamma_sum_identity();
    average_gain_quadrature();
    dcec_vs_mpc(cfg);
    cluster_offloading(cfg);
    optimal_cluster(cfg);

    auto grid = run_grid(cfg, dcec::BoundGrid{});
    nearest_density_robustness(grid);
    cluster_size_penalty(grid);
    delay_vs_density(grid);
    bound_validity(grid);

    d2d_density(cfg);
    load_and_distance_oracles(cfg);
    determinism(cfg);

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
