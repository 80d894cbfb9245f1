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
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dcec/errors.hpp"
#include "dcec/popularity.hpp"

namespace dcec {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

enum class Boundary { torus, truncated };

inline std::string to_string(Boundary b) { return b == Boundary::torus ? "torus" : "truncated"; }

/// Square simulation window [0, side)^2. On a torus, distances wrap around
/// so every location sees the same (edge-free) neighbourhood.
struct Region {
    double side = 1000.0;
    Boundary boundary = Boundary::torus;

    static Region from_area(double area, Boundary b = Boundary::torus) { return {std::sqrt(area), b}; }

    double area() const { return side * side; }

    double wrap_delta(double d) const
    {
        if (boundary == Boundary::torus && (d > 0.5 * side || d < -0.5 * side)) {
            d -= side * std::nearbyint(d / side);
        }
        return d;
    }

    double distance(Point a, Point b) const { return std::sqrt(distance_sq(a, b)); }
    double distance_sq(Point a, Point b) const
    {
        const double dx = wrap_delta(b.x - a.x);
        const double dy = wrap_delta(b.y - a.y);
        return dx * dx + dy * dy;
    }

    Point wrap(Point p) const
    {
        if (boundary == Boundary::torus) {
            p.x -= side * std::floor(p.x / side);
            p.y -= side * std::floor(p.y / side);
        }
        return p;
    }
};

/// Homogeneous PPP on the region: Poisson(density * area) points, i.i.d.
/// uniform.
template <class Rng>
std::vector<Point> sample_ppp(double density, const Region& region, Rng& rng)
{
    const double mean = density * region.area();
    if (!(mean > 0.0)) {
        return {};
    }
    std::poisson_distribution<long long> count_dist(mean);
    const auto n = static_cast<std::size_t>(count_dist(rng));
    std::uniform_real_distribution<double> coord(0.0, region.side);
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p.x = coord(rng);
        p.y = coord(rng);
    }
    return pts;
}

/// D2D pairing. The first round(delta * N) users are paired; each gets a
/// peer device dropped uniformly in the disk of radius r_max around it, so
/// the pair distance has density 2r / r_max^2.
struct Pairing {
    std::vector<std::optional<std::size_t>> peer_of;  // per user, index into `peers`
    std::vector<Point> peers;
    std::vector<double> distance;  // per peer

    std::size_t paired_count() const { return peers.size(); }
};

template <class Rng>
Pairing pair_users(std::span<const Point> users, double delta, double r_max, const Region& region, Rng& rng)
{
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw ValidationError("paired fraction must lie in [0, 1]");
    }
    Pairing out;
    out.peer_of.assign(users.size(), std::nullopt);
    const auto m = static_cast<std::size_t>(std::llround(delta * static_cast<double>(users.size())));
    out.peers.reserve(m);
    out.distance.reserve(m);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = r_max * std::sqrt(unit(rng));
        const double phi = angle(rng);
        out.peer_of[i] = out.peers.size();
        out.peers.push_back(region.wrap({users[i].x + r * std::cos(phi), users[i].y + r * std::sin(phi)}));
        out.distance.push_back(r);
    }
    return out;
}

struct Neighbor {
    double distance = 0.0;
    std::uint32_t index = 0;

    friend bool operator<(const Neighbor& a, const Neighbor& b)
    {
        return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
    }
};

/// Uniform bucket grid for k-nearest queries. Ties are broken by lowest index.
class SpatialIndex {
public:
    SpatialIndex(std::span<const Point> points, const Region& region) : region_(region), points_(points.begin(), points.end())
    {
        const auto n = points_.size();
        cells_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
        cell_size_ = region_.side / static_cast<double>(cells_);
        start_.assign(cells_ * cells_ + 1, 0);
        std::vector<std::size_t> cell_of(n);
        for (std::size_t i = 0; i < n; ++i) {
            cell_of[i] = cell_index(points_[i]);
            ++start_[cell_of[i] + 1];
        }
        for (std::size_t c = 0; c < cells_ * cells_; ++c) {
            start_[c + 1] += start_[c];
        }
        items_.resize(n);
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        for (std::size_t i = 0; i < n; ++i) {
            items_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
        }
    }

    std::size_t size() const { return points_.size(); }

    /// The min(k, size()) nearest points to q, ascending.
    void k_nearest(Point q, std::size_t k, std::vector<Neighbor>& out) const
    {
        out.clear();
        k = std::min(k, points_.size());
        if (k == 0) {
            return;
        }
        // candidates carry squared distances until the search ends
        const auto [cx, cy] = cell_coords(q);
        const Point w = region_.wrap(q);
        const double margin = std::min({w.x - static_cast<double>(cx) * cell_size_,
                                        static_cast<double>(cx + 1) * cell_size_ - w.x,
                                        w.y - static_cast<double>(cy) * cell_size_,
                                        static_cast<double>(cy + 1) * cell_size_ - w.y});
        for (std::size_t r = 0;; ++r) {
            if (2 * r + 1 >= cells_) {
                out.clear();
                brute_force(q, k, out);
                finish(out);
                return;
            }
            const auto ri = static_cast<long long>(r);
            for (long long dy = -ri; dy <= ri; ++dy) {
                const bool edge_row = (dy == -ri || dy == ri);
                for (long long dx = -ri; dx <= ri; dx += (edge_row || r == 0) ? 1 : 2 * ri) {
                    visit_cell(cx + dx, cy + dy, q, k, out);
                }
            }
            const double reach = std::max(0.0, margin) + static_cast<double>(r) * cell_size_;
            if (out.size() == k && out.back().distance < reach * reach) {
                finish(out);
                return;
            }
        }
    }

private:
    static void finish(std::vector<Neighbor>& out)
    {
        for (auto& n : out) {
            n.distance = std::sqrt(n.distance);
        }
    }

    std::size_t clamp_cell(double v) const
    {
        auto c = static_cast<long long>(v / cell_size_);
        return static_cast<std::size_t>(std::clamp<long long>(c, 0, static_cast<long long>(cells_) - 1));
    }

    std::pair<long long, long long> cell_coords(Point p) const
    {
        const Point w = region_.wrap(p);
        return {static_cast<long long>(clamp_cell(w.x)), static_cast<long long>(clamp_cell(w.y))};
    }

    std::size_t cell_index(Point p) const
    {
        const auto [cx, cy] = cell_coords(p);
        return static_cast<std::size_t>(cy) * cells_ + static_cast<std::size_t>(cx);
    }

    void consider(Point q, std::uint32_t i, std::size_t k, std::vector<Neighbor>& out) const
    {
        const Neighbor cand{region_.distance_sq(q, points_[i]), i};
        if (out.size() == k && !(cand < out.back())) {
            return;
        }
        auto pos = std::upper_bound(out.begin(), out.end(), cand);
        out.insert(pos, cand);
        if (out.size() > k) {
            out.pop_back();
        }
    }

    void visit_cell(long long cx, long long cy, Point q, std::size_t k, std::vector<Neighbor>& out) const
    {
        const auto n = static_cast<long long>(cells_);
        if (region_.boundary == Boundary::torus) {
            cx = ((cx % n) + n) % n;
            cy = ((cy % n) + n) % n;
        } else if (cx < 0 || cy < 0 || cx >= n || cy >= n) {
            return;
        }
        const auto c = static_cast<std::size_t>(cy * n + cx);
        for (std::size_t j = start_[c]; j < start_[c + 1]; ++j) {
            consider(q, items_[j], k, out);
        }
    }

    void brute_force(Point q, std::size_t k, std::vector<Neighbor>& out) const
    {
        out.clear();
        for (std::size_t i = 0; i < points_.size(); ++i) {
            consider(q, static_cast<std::uint32_t>(i), k, out);
        }
    }

    Region region_;
    std::vector<Point> points_;
    std::size_t cells_ = 1;
    double cell_size_ = 1.0;
    std::vector<std::size_t> start_;
    std::vector<std::uint32_t> items_;
};

/// The k smallest distances from `point` to the SBSs, ascending.
inline std::vector<double> ordered_sbs_distances(Point point, std::span<const Point> sbs, std::size_t k,
                                                 const Region& region)
{
    if (k > sbs.size()) {
        throw ValidationError("requested more neighbour distances than there are SBSs");
    }
    std::vector<double> d(sbs.size());
    std::transform(sbs.begin(), sbs.end(), d.begin(), [&](Point s) { return region.distance(point, s); });
    std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
    d.resize(k);
    return d;
}

/// Per-SBS user counts. `cellular` counts miss + cluster users (airtime
/// sharers), `backhaul` counts miss users only.
struct CellLoads {
    std::vector<std::uint32_t> backhaul;
    std::vector<std::uint32_t> cellular;
};

struct Association {
    std::vector<std::optional<std::uint32_t>> serving;  // per user; none for local/D2D hits
    CellLoads loads;
};

/// Attaches miss users to their nearest SBS and cluster users to the
/// `cluster_slot[u]`-th nearest (0-based) SBS, then counts loads.
/// Users whose cluster slot exceeds the number of SBSs are left unserved.
inline Association associate_and_load(const SpatialIndex& sbs_index, std::span<const Point> users,
                                      std::span<const RequestClass> classes,
                                      std::span<const std::uint32_t> cluster_slot)
{
    Association a;
    a.serving.assign(users.size(), std::nullopt);
    a.loads.backhaul.assign(sbs_index.size(), 0);
    a.loads.cellular.assign(sbs_index.size(), 0);
    std::vector<Neighbor> nn;
    for (std::size_t u = 0; u < users.size(); ++u) {
        const RequestClass c = classes[u];
        if (c != RequestClass::miss && c != RequestClass::cluster) {
            continue;
        }
        const std::size_t want = c == RequestClass::miss ? 1 : cluster_slot[u] + 1;
        sbs_index.k_nearest(users[u], want, nn);
        if (nn.size() < want) {
            continue;
        }
        const std::uint32_t s = nn[want - 1].index;
        a.serving[u] = s;
        ++a.loads.cellular[s];
        if (c == RequestClass::miss) {
            ++a.loads.backhaul[s];
        }
    }
    return a;
}

/// One sampled topology with its pairing, requests and association.
struct NetworkDrop {
    Region region;
    std::vector<Point> sbs;
    std::vector<Point> users;
    Pairing pairing;
    std::vector<UserRole> roles;
    std::vector<std::uint32_t> requested_rank;
    std::vector<RequestClass> classes;
    std::vector<std::uint32_t> cluster_slot;
    Association association;
};

/// CSV dump of a drop: kind,x,y,pair_id (pair_id = -1 when unpaired).
inline void write_drop_csv(std::ostream& os, const NetworkDrop& drop)
{
    os << "kind,x,y,pair_id\n";
    char buf[96];
    for (const auto& s : drop.sbs) {
        std::snprintf(buf, sizeof buf, "sbs,%.6f,%.6f,-1\n", s.x, s.y);
        os << buf;
    }
    for (std::size_t u = 0; u < drop.users.size(); ++u) {
        const auto peer = drop.pairing.peer_of[u];
        std::snprintf(buf, sizeof buf, "user,%.6f,%.6f,%lld\n", drop.users[u].x, drop.users[u].y,
                      peer ? static_cast<long long>(*peer) : -1LL);
        os << buf;
    }
    for (std::size_t p = 0; p < drop.pairing.peers.size(); ++p) {
        std::snprintf(buf, sizeof buf, "peer,%.6f,%.6f,%zu\n", drop.pairing.peers[p].x, drop.pairing.peers[p].y, p);
        os << buf;
    }
}

} // namespace dcec
