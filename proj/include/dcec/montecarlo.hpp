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
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "dcec/analytic.hpp"
#include "dcec/antenna.hpp"
#include "dcec/core.hpp"
#include "dcec/geometry.hpp"
#include "dcec/popularity.hpp"
#include "dcec/scenario.hpp"

namespace dcec {

enum class InterferenceMode { sampled, mean_gain };
enum class Fading { rayleigh, none };

inline std::string to_string(InterferenceMode m) { return m == InterferenceMode::sampled ? "sampled" : "mean_gain"; }

struct SimulationOptions {
    /// `sampled`: each interfering link draws independent uniform AoD/AoA.
    /// `mean_gain`: every interfering link gets the average gain squared.
    InterferenceMode interference = InterferenceMode::sampled;
    Fading fading = Fading::rayleigh;
    Boundary boundary = Boundary::torus;
    std::size_t threads = 1;
    /// Record ln r_1..ln r_n from a uniform probe point (0 disables).
    std::size_t distance_orders = 0;
};

/// What one drop contributes. Classes with no eligible user in the drop
/// stay empty rather than reporting zero.
struct DropResult {
    std::optional<double> nearest_rate;
    std::optional<double> cluster_rate;
    std::optional<double> d2d_rate;
    std::optional<double> backhaul_rate;
    std::optional<std::uint32_t> cluster_order;  // 1-based k of the tagged cluster user
    std::optional<double> nearest_load;
    std::optional<double> cluster_load;
    std::optional<double> nearest_interference_w;
    std::optional<double> mean_backhaul_load;  // averaged over the drop's SBSs
    std::optional<double> mean_cell_load;
    std::vector<double> ln_rk;
};

/// Random draws attached to each potential interferer of a link.
struct InterfererDraws {
    std::vector<double> gain_product;
    std::vector<double> fading;
};

namespace mc {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream for drop `index`: stream id = base_seed XOR index.
inline std::mt19937_64 drop_stream(std::uint64_t base_seed, std::uint64_t index)
{
    return std::mt19937_64(splitmix64(base_seed ^ index));
}

template <class Rng>
InterfererDraws draw_interferers(std::size_t n, const AntennaPattern& pattern, const SimulationOptions& opt, Rng& rng)
{
    InterfererDraws d;
    d.gain_product.resize(n);
    d.fading.resize(n);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::exponential_distribution<double> exp1(1.0);
    const double mean_sq = opt.interference == InterferenceMode::mean_gain
                               ? average_gain(pattern) * average_gain(pattern)
                               : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (opt.interference == InterferenceMode::sampled) {
            const double tx = gain(pattern, angle(rng));
            const double rx = gain(pattern, angle(rng));
            d.gain_product[j] = tx * rx;
        } else {
            d.gain_product[j] = mean_sq;
        }
        d.fading[j] = opt.fading == Fading::rayleigh ? exp1(rng) : 1.0;
    }
    return d;
}

/// Received power P * g * h * C * max(r, d0)^-alpha.
inline double received_power(const SystemParams& p, double tx_power, double gain_product, double fading,
                             double distance)
{
    const double r = std::max(distance, p.ref_distance_m);
    return tx_power * gain_product * fading * pathloss_constant(p) * std::pow(r, -p.pathloss_exponent);
}

struct LinkSinr {
    double signal = 0.0;
    double interference = 0.0;
    double noise = 0.0;

    double sinr() const { return signal / (interference + noise); }
};

/// SINR of a downlink from transmitter `serving` among `tx` to `rx`.
/// The desired link is beam-aligned (main-lobe gain at both ends) and uses
/// draws.fading[serving]; all other transmitters interfere.
inline LinkSinr downlink_sinr(const SystemParams& p, double tx_power, const AntennaPattern& pattern, double band_hz,
                              Point rx, std::span<const Point> tx, std::size_t serving,
                              const InterfererDraws& draws, const Region& region)
{
    LinkSinr l;
    l.noise = band_hz * p.noise_psd_w_per_hz;
    for (std::size_t j = 0; j < tx.size(); ++j) {
        const double r = region.distance(rx, tx[j]);
        if (j == serving) {
            l.signal = received_power(p, tx_power, pattern.main_gain * pattern.main_gain, draws.fading[j], r);
        } else {
            l.interference += received_power(p, tx_power, draws.gain_product[j], draws.fading[j], r);
        }
    }
    return l;
}

inline std::uint32_t sample_rank(const ContentCatalog& cat, double u)
{
    auto it = std::upper_bound(cat.cumulative.begin() + 1, cat.cumulative.end(), u);
    auto rank = static_cast<std::size_t>(it - cat.cumulative.begin());
    return static_cast<std::uint32_t>(std::min(rank, cat.size));
}

template <class Rng>
std::optional<std::size_t> pick_uniform(const std::vector<std::size_t>& candidates, Rng& rng)
{
    if (candidates.empty()) {
        return std::nullopt;
    }
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng)];
}

} // namespace mc

/// Randomness that does not depend on the caching or link parameters:
/// node positions, pairs, roles and requests.
struct Topology {
    Region region;
    std::vector<Point> sbs;
    std::vector<Point> users;
    Pairing pairing;
    std::vector<UserRole> roles;
    std::vector<std::uint32_t> requested_rank;
    std::vector<double> slot_draw;  // uniform in [0, 1), mapped to a cluster member
};

template <class Rng>
Topology sample_topology(const Scenario& s, const ContentCatalog& cat, Rng& rng, const SimulationOptions& opt = {})
{
    const SystemParams& p = s.system;
    Topology t;
    t.region = Region::from_area(p.area_m2, opt.boundary);
    t.sbs = sample_ppp(p.sbs_density, t.region, rng);
    t.users = sample_ppp(p.ue_density, t.region, rng);
    const double delta = s.policy == Policy::dcec ? p.paired_fraction : 0.0;
    t.pairing = pair_users(t.users, delta, p.max_d2d_distance_m, t.region, rng);

    const std::size_t n = t.users.size();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    t.roles.resize(n);
    t.requested_rank.resize(n);
    t.slot_draw.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        if (t.pairing.peer_of[u]) {
            t.roles[u] = unit(rng) < 0.5 ? UserRole::pair_a : UserRole::pair_b;
        } else {
            t.roles[u] = UserRole::unpaired;
        }
        t.requested_rank[u] = mc::sample_rank(cat, unit(rng));
        t.slot_draw[u] = unit(rng);
    }
    return t;
}

/// True when two scenarios draw topologies from the same distribution, so
/// one topology can serve both.
inline bool shares_topology(const Scenario& a, const Scenario& b)
{
    const auto& p = a.system;
    const auto& q = b.system;
    const bool paired_same = a.policy == b.policy && (a.policy == Policy::mpc || p.paired_fraction == q.paired_fraction);
    return p.area_m2 == q.area_m2 && p.sbs_density == q.sbs_density && p.ue_density == q.ue_density &&
           p.max_d2d_distance_m == q.max_d2d_distance_m && a.catalog_size == b.catalog_size &&
           a.skewness == b.skewness && paired_same;
}

/// Categorizes requests against `placement`, associates users, then tags one
/// typical user per retrieval class and measures its rate. If `keep` is
/// given the realized drop is copied into it.
template <class Rng>
DropResult measure_drop(const Scenario& s, const CachePlacement& placement, const Topology& t, Rng& rng,
                        const SimulationOptions& opt = {}, NetworkDrop* keep = nullptr)
{
    const SystemParams& p = s.system;
    const Region& region = t.region;
    const std::size_t k_cluster = s.policy == Policy::dcec ? s.cache.cluster_size : 1;
    const std::size_t n_users = t.users.size();

    std::vector<RequestClass> classes(n_users);
    std::vector<std::uint32_t> slots(n_users, 0);
    for (std::size_t u = 0; u < n_users; ++u) {
        classes[u] = classify(placement, t.roles[u], t.requested_rank[u]);
        if (classes[u] == RequestClass::cluster) {
            const auto k = static_cast<std::size_t>(t.slot_draw[u] * static_cast<double>(k_cluster));
            slots[u] = static_cast<std::uint32_t>(std::min(k, k_cluster - 1));
        }
    }

    const SpatialIndex sbs_index(t.sbs, region);
    const Association assoc = associate_and_load(sbs_index, t.users, classes, slots);
    const auto& loads = assoc.loads;

    DropResult out;
    if (!t.sbs.empty()) {
        double nb = 0.0;
        double nc = 0.0;
        for (std::size_t j = 0; j < t.sbs.size(); ++j) {
            nb += loads.backhaul[j];
            nc += loads.cellular[j];
        }
        out.mean_backhaul_load = nb / static_cast<double>(t.sbs.size());
        out.mean_cell_load = nc / static_cast<double>(t.sbs.size());
    }

    std::vector<std::size_t> miss_users;
    std::vector<std::size_t> cluster_users;
    std::vector<std::size_t> d2d_users;
    for (std::size_t u = 0; u < n_users; ++u) {
        switch (classes[u]) {
        case RequestClass::miss:
            if (assoc.serving[u]) miss_users.push_back(u);
            break;
        case RequestClass::cluster:
            if (assoc.serving[u]) cluster_users.push_back(u);
            break;
        case RequestClass::d2d:
            d2d_users.push_back(u);
            break;
        case RequestClass::local:
            break;
        }
    }

    const double cell_band = (1.0 - p.d2d_fraction) * p.bandwidth_hz;
    auto cellular = [&](std::size_t u, double& rate, double& load, double* interference) {
        const std::uint32_t srv = *assoc.serving[u];
        const auto draws = mc::draw_interferers(t.sbs.size(), p.sbs_antenna, opt, rng);
        const auto link =
            mc::downlink_sinr(p, p.sbs_tx_power_w, p.sbs_antenna, cell_band, t.users[u], t.sbs, srv, draws, region);
        load = loads.cellular[srv];
        rate = cell_band / load * std::log2(1.0 + link.sinr());
        if (interference != nullptr) {
            *interference = link.interference;
        }
        return srv;
    };

    if (auto u = mc::pick_uniform(miss_users, rng)) {
        double rate = 0.0;
        double load = 0.0;
        double interference = 0.0;
        const auto srv = cellular(*u, rate, load, &interference);
        out.nearest_rate = rate;
        out.nearest_load = load;
        out.nearest_interference_w = interference;
        out.backhaul_rate = p.backhaul_capacity_bps / loads.backhaul[srv];
    }
    if (auto u = mc::pick_uniform(cluster_users, rng)) {
        double rate = 0.0;
        double load = 0.0;
        cellular(*u, rate, load, nullptr);
        out.cluster_rate = rate;
        out.cluster_load = load;
        out.cluster_order = slots[*u] + 1;
    }
    if (auto u = mc::pick_uniform(d2d_users, rng)) {
        // active D2D transmitters: the peer of every user served over D2D
        std::vector<Point> tx;
        tx.reserve(d2d_users.size());
        std::size_t serving = 0;
        for (std::size_t v : d2d_users) {
            if (v == *u) serving = tx.size();
            tx.push_back(t.pairing.peers[*t.pairing.peer_of[v]]);
        }
        const auto draws = mc::draw_interferers(tx.size(), p.ue_antenna, opt, rng);
        const double band = p.d2d_fraction * p.bandwidth_hz;
        auto link =
            mc::downlink_sinr(p, p.ue_tx_power_w, p.ue_antenna, band, t.users[*u], tx, serving, draws, region);
        // the pair distance is exact; recompute the desired power from it
        const double rd = t.pairing.distance[*t.pairing.peer_of[*u]];
        link.signal = mc::received_power(p, p.ue_tx_power_w, p.ue_antenna.main_gain * p.ue_antenna.main_gain,
                                         draws.fading[serving], rd);
        out.d2d_rate = band * std::log2(1.0 + link.sinr());
    }

    if (opt.distance_orders > 0) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const Point probe{unit(rng) * region.side, unit(rng) * region.side};
        std::vector<Neighbor> nn;
        sbs_index.k_nearest(probe, opt.distance_orders, nn);
        if (nn.size() == opt.distance_orders) {
            for (const auto& n : nn) {
                out.ln_rk.push_back(std::log(n.distance));
            }
        }
    }

    if (keep != nullptr) {
        keep->region = t.region;
        keep->sbs = t.sbs;
        keep->users = t.users;
        keep->pairing = t.pairing;
        keep->roles = t.roles;
        keep->requested_rank = t.requested_rank;
        keep->classes = std::move(classes);
        keep->cluster_slot = std::move(slots);
        keep->association = assoc;
    }
    return out;
}

/// One complete drop: a fresh topology measured under `s`.
template <class Rng>
DropResult simulate_drop(const Scenario& s, const ContentCatalog& cat, const CachePlacement& placement, Rng& rng,
                         const SimulationOptions& opt = {}, NetworkDrop* keep = nullptr)
{
    const Topology t = sample_topology(s, cat, rng, opt);
    return measure_drop(s, placement, t, rng, opt, keep);
}

/// Sample mean with its standard error.
struct Estimate {
    std::size_t count = 0;
    double mean = 0.0;
    double std_error = 0.0;

    double ci95() const { return 1.96 * std_error; }
    bool present() const { return count > 0; }
};

class RunningStat {
public:
    void add(double x)
    {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    void add(const std::optional<double>& x)
    {
        if (x) add(*x);
    }
    Estimate estimate() const
    {
        Estimate e;
        e.count = n_;
        e.mean = mean_;
        e.std_error = n_ > 1 ? std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_)) : 0.0;
        return e;
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct SimulationSummary {
    std::size_t drops = 0;
    Estimate nearest_rate;
    Estimate cluster_rate;
    Estimate d2d_rate;
    Estimate backhaul_rate;
    Estimate nearest_load;
    Estimate cluster_load;
    Estimate nearest_interference;
    Estimate mean_backhaul_load;
    Estimate mean_cell_load;
    std::vector<Estimate> ln_rk;
    Estimate total_delay;  // mean from the empirical rates, CI by the delta method
    std::uint64_t fingerprint = 0;
};

/// Delay with empirical mean rates in place of the bounds.
inline DelayBreakdown estimate_delay(const SimulationSummary& sum, const RequestProbabilities& probs,
                                     const SystemParams& p)
{
    auto rate = [](const Estimate& e, double prob, const char* what) {
        if (prob > 0.0 && !e.present()) {
            throw ValidationError(std::string("no simulated ") + what + " samples for a class with nonzero probability");
        }
        return e.mean;
    };
    RateBounds r;
    r.backhaul = rate(sum.backhaul_rate, probs.miss, "backhaul");
    r.nearest = rate(sum.nearest_rate, probs.miss, "nearest-SBS");
    r.cluster = rate(sum.cluster_rate, probs.cluster, "SBS-cluster");
    r.d2d = rate(sum.d2d_rate, probs.d2d, "D2D");
    return analytic::content_delay(p, probs, r);
}

inline std::uint64_t fingerprint(const Scenario& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : describe(s)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Runs `n_drops` drops for each variant and returns results[variant][drop].
/// Every drop samples one topology shared by all variants, which must
/// therefore agree on densities, area, pairing and catalog. Each variant then
/// measures with its own copy of the drop's stream, so a variant's results
/// do not depend on which other variants run alongside it. Output never
/// depends on the thread count.
inline std::vector<std::vector<DropResult>> run_variants(std::span<const Scenario> variants, std::size_t n_drops,
                                                         std::uint64_t base_seed, const SimulationOptions& opt = {})
{
    if (variants.empty()) {
        return {};
    }
    std::vector<CachePlacement> placements;
    for (const auto& v : variants) {
        validate(v);
        if (!shares_topology(variants.front(), v)) {
            throw ValidationError("simulation variants must share densities, area, pairing and catalog");
        }
        placements.push_back(build_placement(v.catalog(), v.cache, v.policy));
    }
    const ContentCatalog cat = variants.front().catalog();
    std::vector<std::vector<DropResult>> results(variants.size(), std::vector<DropResult>(n_drops));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n_drops; i = next++) {
            auto rng = mc::drop_stream(base_seed, i);
            const Topology t = sample_topology(variants.front(), cat, rng, opt);
            for (std::size_t v = 0; v < variants.size(); ++v) {
                auto local = rng;
                results[v][i] = measure_drop(variants[v], placements[v], t, local, opt);
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads, n_drops));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    return results;
}

inline std::vector<DropResult> run_drops(const Scenario& s, std::size_t n_drops, std::uint64_t base_seed,
                                         const SimulationOptions& opt = {})
{
    return std::move(run_variants(std::span<const Scenario>(&s, 1), n_drops, base_seed, opt).front());
}

inline SimulationSummary summarize(const Scenario& s, std::span<const DropResult> results)
{
    RunningStat nearest, cluster, d2d, backhaul, nload, cload, interf, mnb, mnc;
    std::vector<RunningStat> ln_rk;
    for (const auto& r : results) {
        nearest.add(r.nearest_rate);
        cluster.add(r.cluster_rate);
        d2d.add(r.d2d_rate);
        backhaul.add(r.backhaul_rate);
        nload.add(r.nearest_load);
        cload.add(r.cluster_load);
        interf.add(r.nearest_interference_w);
        mnb.add(r.mean_backhaul_load);
        mnc.add(r.mean_cell_load);
        if (ln_rk.size() < r.ln_rk.size()) ln_rk.resize(r.ln_rk.size());
        for (std::size_t k = 0; k < r.ln_rk.size(); ++k) ln_rk[k].add(r.ln_rk[k]);
    }
    SimulationSummary sum;
    sum.drops = results.size();
    sum.nearest_rate = nearest.estimate();
    sum.cluster_rate = cluster.estimate();
    sum.d2d_rate = d2d.estimate();
    sum.backhaul_rate = backhaul.estimate();
    sum.nearest_load = nload.estimate();
    sum.cluster_load = cload.estimate();
    sum.nearest_interference = interf.estimate();
    sum.mean_backhaul_load = mnb.estimate();
    sum.mean_cell_load = mnc.estimate();
    for (const auto& st : ln_rk) sum.ln_rk.push_back(st.estimate());
    sum.fingerprint = fingerprint(s);

    const auto probs = request_probabilities(s.catalog(), s.cache, s.system.paired_fraction, s.policy);
    try {
        const auto d = estimate_delay(sum, probs, s.system);
        const double nu = s.system.content_size_bits;
        double var = 0.0;
        auto add_leg = [&](double prob, const Estimate& e) {
            if (prob > 0.0 && e.mean > 0.0) {
                const double deriv = prob * nu / (e.mean * e.mean);
                var += deriv * deriv * e.std_error * e.std_error;
            }
        };
        add_leg(probs.miss, sum.backhaul_rate);
        add_leg(probs.miss, sum.nearest_rate);
        add_leg(probs.cluster, sum.cluster_rate);
        add_leg(probs.d2d, sum.d2d_rate);
        sum.total_delay.count = results.size();
        sum.total_delay.mean = d.total;
        sum.total_delay.std_error = std::sqrt(var);
    } catch (const ValidationError&) {
        // a required class never appeared; leave total_delay absent
    }
    return sum;
}

inline SimulationSummary run_experiment(const Scenario& s, std::size_t n_drops, std::uint64_t base_seed,
                                        const SimulationOptions& opt = {})
{
    if (n_drops == 0) {
        throw ValidationError("n_drops must be >= 1");
    }
    const auto results = run_drops(s, n_drops, base_seed, opt);
    return summarize(s, results);
}

/// Per-drop sample dump: drop,class,rate_bps,load.
inline void write_samples_csv(std::ostream& os, std::span<const DropResult> results)
{
    os << "drop,class,rate_bps,load\n";
    char buf[128];
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        auto row = [&](const char* cls, const std::optional<double>& rate, const std::optional<double>& load) {
            if (!rate) return;
            if (load) {
                std::snprintf(buf, sizeof buf, "%zu,%s,%.10g,%.10g\n", i, cls, *rate, *load);
            } else {
                std::snprintf(buf, sizeof buf, "%zu,%s,%.10g,\n", i, cls, *rate);
            }
            os << buf;
        };
        row("nearest", r.nearest_rate, r.nearest_load);
        row("cluster", r.cluster_rate, r.cluster_load);
        row("d2d", r.d2d_rate, std::nullopt);
        row("backhaul", r.backhaul_rate, std::nullopt);
    }
}

} // namespace dcec
