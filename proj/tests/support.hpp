// SPDX-License-Identifier: MIT
// Fixture networks and brute-force oracles shared by the unit tests and the
// acceptance binary.  The oracles deliberately avoid the library's distance
// and field code: they work on the raw edge list.
#pragma once

#include "netloc/netloc.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using netloc::Edge;
using netloc::Network;
using netloc::Point;
using netloc::Profile;
using netloc::Rational;
using netloc::ratio;

// The example network with eight edges: u carries three pendant edges and
// e4 towards w; v carries e5 towards w and two pendant edges; e8 hangs off w.
// Lengths satisfy len(e4) == len(e5).
inline Network eight_edges() {
    std::vector<std::string> names{"u", "v", "w", "a1", "a2", "a3", "b6", "b7", "c8"};
    std::vector<Edge> edges{
        {0, 3, 1},           {0, 4, 2}, {0, 5, ratio(3, 2)}, {0, 2, 2},
        {1, 2, 2},           {1, 6, ratio(5, 2)}, {1, 7, 1}, {2, 8, 3},
    };
    return Network(names, edges);
}

// Connected network on `verts` vertices: a random spanning tree plus `extra`
// additional edges, lengths p/q with q in {1,2,3} and q <= p <= 2q, then
// normalized.  Retries until no degree-two vertex survives normalization.
inline Network random_network(std::uint64_t seed, std::size_t verts, std::size_t extra) {
    std::mt19937_64 rng(seed);
    for (;;) {
        auto pick = [&](std::size_t lo, std::size_t hi) {
            return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
        };
        auto length = [&] {
            long q = static_cast<long>(pick(1, 3));
            long p = static_cast<long>(pick(static_cast<std::size_t>(q), static_cast<std::size_t>(2 * q)));
            return ratio(p, q);
        };
        std::vector<std::string> names;
        for (std::size_t v = 0; v < verts; ++v) names.push_back("n" + std::to_string(v));
        std::vector<Edge> edges;
        for (std::size_t v = 1; v < verts; ++v) edges.push_back(Edge{pick(0, v - 1), v, length()});
        for (std::size_t k = 0; k < extra; ++k) {
            std::size_t a = pick(0, verts - 1), b = pick(0, verts - 1);
            if (a == b) continue;
            edges.push_back(Edge{a, b, length()});
        }
        Network net = netloc::normalize(Network(names, edges));
        if (!net.degree2_allowed() && net.edge_count() >= 2) return net;
    }
}

// Random point: uniform edge, alpha = k/den with 0 <= k <= den.
inline Point random_point(std::mt19937_64& rng, const Network& net, long den = 12) {
    std::size_t e = std::uniform_int_distribution<std::size_t>(0, net.edge_count() - 1)(rng);
    long k = std::uniform_int_distribution<long>(0, den)(rng);
    return Point{e, ratio(k, den)};
}

inline Profile random_profile(std::mt19937_64& rng, const Network& net, std::size_t n, long den = 12) {
    Profile p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(random_point(rng, net, den));
    return p;
}

struct Named {
    std::string name;
    Network net;
};

// The ten networks used for the construction sweep.
inline std::vector<Named> construction_networks() {
    std::vector<Named> out;
    out.push_back({"segment", netloc::make_segment()});
    out.push_back({"star3", netloc::make_star(3)});
    out.push_back({"star6", netloc::make_star(6)});
    out.push_back({"eight_edges", eight_edges()});
    const std::size_t shapes[6][2] = {{4, 1}, {5, 1}, {5, 2}, {6, 2}, {6, 3}, {7, 2}};
    for (std::size_t k = 0; k < 6; ++k)
        out.push_back({"random" + std::to_string(k), random_network(1000 + k, shapes[k][0], shapes[k][1])});
    return out;
}

}  // namespace fixtures

namespace oracle {

using netloc::Network;
using netloc::Point;
using netloc::Profile;
using netloc::Rational;

// Shortest paths on the graph obtained by subdividing every edge at the
// given points.  Node ids: vertices first, then one node per extra point.
struct Augmented {
    std::size_t nv = 0;
    std::vector<Rational> d;  // (nv + points) squared
    std::size_t size = 0;
    const Rational& at(std::size_t a, std::size_t b) const { return d[a * size + b]; }
};

inline Augmented augmented_distances(const Network& net, const std::vector<Point>& pts) {
    Augmented g;
    g.nv = net.vertex_count();
    g.size = g.nv + pts.size();
    const Rational inf = net.total_length() + 1;
    g.d.assign(g.size * g.size, inf);
    for (std::size_t a = 0; a < g.size; ++a) g.d[a * g.size + a] = 0;
    auto link = [&](std::size_t a, std::size_t b, const Rational& w) {
        if (w < g.d[a * g.size + b]) g.d[a * g.size + b] = g.d[b * g.size + a] = w;
    };
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const auto& ed = net.edge(e);
        // chain along the edge from u (offset 0) to v (offset length)
        std::vector<std::pair<Rational, std::size_t>> chain{{Rational(0), ed.u}, {ed.length, ed.v}};
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (pts[k].edge == e) chain.push_back({(1 - pts[k].alpha) * ed.length, g.nv + k});
        std::stable_sort(chain.begin(), chain.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            link(chain[k].second, chain[k + 1].second, chain[k + 1].first - chain[k].first);
    }
    for (std::size_t m = 0; m < g.size; ++m)
        for (std::size_t a = 0; a < g.size; ++a)
            for (std::size_t b = 0; b < g.size; ++b) {
                Rational via = g.d[a * g.size + m] + g.d[m * g.size + b];
                if (via < g.d[a * g.size + b]) g.d[a * g.size + b] = via;
            }
    return g;
}

inline Rational distance(const Network& net, const Point& x, const Point& y) {
    Augmented g = augmented_distances(net, {x, y});
    return g.at(g.nv, g.nv + 1);
}

// Consumers sampled at cell midpoints.  Each edge e is cut into N_e equal
// cells with N_e = ceil(240 * len(e) / min_len), so every cell is at most
// min_len / 240 wide.
struct Grid {
    std::vector<std::size_t> edge;
    std::vector<Rational> offset;  // midpoint distance from u
    std::vector<Rational> width;
    Rational h;                    // widest cell
};

inline Grid midpoint_grid(const Network& net, long per_min = 240) {
    Grid g;
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Rational& len = net.edge(e).length;
        mpz_class cells = netloc::ceil_q(per_min * len / net.min_length());
        Rational w = len / Rational(cells);
        if (w > g.h) g.h = w;
        for (unsigned long k = 0; k < cells.get_ui(); ++k) {
            g.edge.push_back(e);
            g.offset.push_back(w * k + w / 2);
            g.width.push_back(w);
        }
    }
    return g;
}

// Distance from a consumer at offset t on edge e to a player, given
// augmented distances whose extra nodes are the players.
inline Rational consumer_distance(const Network& net, const Augmented& g, std::size_t e, const Rational& t,
                                  std::size_t player, const Point& at) {
    const auto& ed = net.edge(e);
    Rational best = t + g.at(ed.u, g.nv + player);
    Rational other = (ed.length - t) + g.at(ed.v, g.nv + player);
    if (other < best) best = other;
    if (at.edge == e) {
        Rational pt = (1 - at.alpha) * ed.length;
        Rational direct = t > pt ? Rational(t - pt) : Rational(pt - t);
        if (direct < best) best = direct;
    }
    return best;
}

struct GridResult {
    std::vector<Rational> payoff;
    Rational cost;
    Rational h;
    std::size_t breakpoints_bound = 0;
};

// Payoffs by assigning each cell to its nearest players (ties split equally
// among the tied players, which also covers co-located players) and the
// consumer cost by the midpoint rule.
inline GridResult grid_evaluate(const Network& net, const Profile& profile, long per_min = 240) {
    Grid grid = midpoint_grid(net, per_min);
    Augmented g = augmented_distances(net, profile);
    GridResult r;
    r.payoff.assign(profile.size(), Rational(0));
    r.h = grid.h;
    for (std::size_t c = 0; c < grid.edge.size(); ++c) {
        std::vector<Rational> d(profile.size());
        Rational best;
        for (std::size_t i = 0; i < profile.size(); ++i) {
            d[i] = consumer_distance(net, g, grid.edge[c], grid.offset[c], i, profile[i]);
            if (i == 0 || d[i] < best) best = d[i];
        }
        std::size_t ties = 0;
        for (std::size_t i = 0; i < profile.size(); ++i) ties += d[i] == best;
        Rational share = grid.width[c] / Rational(static_cast<unsigned long>(ties));
        for (std::size_t i = 0; i < profile.size(); ++i)
            if (d[i] == best) r.payoff[i] += share;
        r.cost += best * grid.width[c];
    }
    // The nearest-distance function has at most this many kinks or ownership
    // changes: two per player on its own edge plus a few per edge for the
    // crossings of the two end distances.
    std::vector<std::size_t> on_edge(net.edge_count(), 0);
    for (const Point& p : profile) ++on_edge[p.edge];
    for (std::size_t e = 0; e < net.edge_count(); ++e) r.breakpoints_bound += 2 * on_edge[e] + 4;
    return r;
}

// Best grid deviation of player i: the deviator tries every vertex, every
// current location and every cell boundary and midpoint.
struct GridBest {
    Rational value;
    Point where;
};

inline GridBest grid_best_response(const Network& net, const Profile& profile, std::size_t i, long per_min = 240) {
    std::vector<Point> tries;
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Rational& len = net.edge(e).length;
        mpz_class cells = netloc::ceil_q(per_min * len / net.min_length());
        unsigned long steps = 2 * cells.get_ui();
        for (unsigned long k = 0; k <= steps; ++k) tries.push_back(Point{e, Rational(k) / Rational(steps)});
    }
    for (const Point& p : profile) tries.push_back(p);
    GridBest best{Rational(-1), Point{}};
    for (const Point& y : tries) {
        Profile q = profile;
        q[i] = y;
        Rational v = netloc::payoffs(net, q)[i];
        if (v > best.value) best = {v, y};
    }
    return best;
}

}  // namespace oracle
