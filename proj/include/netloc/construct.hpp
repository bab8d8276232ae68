// SPDX-License-Identifier: MIT
// Explicit equilibrium for many players on any normalized network.
//
// Every vertex of degree >= 3 gets as many players as its degree.  Each edge
// is then filled with a fixed pattern of pairs and singles whose gaps are
// multiples of a common unit xi, plus a stretch of evenly spaced singles with
// gap alpha*xi, alpha in [1, 2].  The unit is chosen so the pattern uses
// n' >= n players with n' - n <= |E|; the surplus is removed one pair member
// per edge, which leaves every gap unchanged.
#pragma once

#include "netloc/network.hpp"
#include "netloc/payoff.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace netloc {

// Smallest player count for which the construction is guaranteed.
inline mpz_class n_bar(const Network& net) {
    if (!net.is_normalized()) throw NormalizationRequired("n_bar needs a normalized network");
    mpz_class total = 3 * static_cast<unsigned long>(net.edge_count());
    for (const Edge& e : net.edges()) total += ceil_q(5 * e.length / net.min_length());
    return total;
}

// Players used by the full pattern at unit z.
inline mpz_class pattern_size(const Network& net, const Rational& z) {
    if (sgn(z) <= 0) throw InvalidArgument("unit must be positive");
    mpz_class total = 3 * static_cast<unsigned long>(net.edge_count());
    for (const Edge& e : net.edges()) total += ceil_q(e.length / (2 * z));
    return total;
}

struct XiChoice {
    Rational xi;
    std::size_t n_prime = 0;
};

// pattern_size is a right-continuous step function, non-increasing in z,
// with jumps only at length/(2k).  We take the smallest value n' >= n that it
// attains and return the left end of the interval on which it equals n'.
// That left end is the largest admissible unit, and it never exceeds
// min_length/10.
inline XiChoice find_xi(const Network& net, std::size_t n) {
    if (!net.is_normalized() || net.degree2_allowed())
        throw NormalizationRequired("the construction needs a normalized network without degree-two vertices");
    if (mpz_class(static_cast<unsigned long>(n)) < n_bar(net))
        throw BelowThreshold("n = " + std::to_string(n) + " is below the threshold " + n_bar(net).get_str());
    std::vector<Rational> cand;
    for (const Edge& e : net.edges()) {
        mpz_class kmax = ceil_q(e.length * static_cast<unsigned long>(n) / net.total_length()) + 1;
        for (unsigned long k = 1; k <= kmax.get_ui(); ++k) cand.push_back(e.length / (2 * k));
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::optional<mpz_class> best;
    Rational left;
    for (const Rational& z : cand) {
        mpz_class f = pattern_size(net, z);
        if (f < static_cast<unsigned long>(n)) continue;
        if (!best || f < *best) {
            best = f;
            left = z;
        }
        // Candidates are visited in increasing z, so the first hit of the
        // smallest level is its left end.
    }
    if (!best) throw InternalConsistency("no admissible unit found");
    if (*best > static_cast<unsigned long>(n + net.edge_count()))
        throw InternalConsistency("pattern overshoots n by more than |E|");
    return XiChoice{left, best->get_ui()};
}

enum class EdgeClass { II, IL, LL };

struct EdgeLayout {
    std::size_t edge = 0;
    EdgeClass kind = EdgeClass::II;
    bool from_u = true;  // pattern is laid out starting at the edge's u end
    Rational alpha;
    std::size_t stretch = 0;  // number of alpha*xi gaps
    // Interior stops as (distance from the pattern start, players there).
    std::vector<std::pair<Rational, std::size_t>> stops;
};

struct ConstructionPlan {
    Rational xi;
    std::size_t n = 0;
    std::size_t n_prime = 0;
    std::vector<EdgeLayout> layouts;
    Profile full;                      // the n'-player pattern
    std::vector<std::size_t> removed;  // indices into `full`
    Profile profile;                   // full minus removed, n players
};

inline ConstructionPlan build_equilibrium(const Network& net, std::size_t n) {
    XiChoice choice = find_xi(net, n);
    const Rational& xi = choice.xi;
    ConstructionPlan plan;
    plan.xi = xi;
    plan.n = n;
    plan.n_prime = choice.n_prime;

    for (std::size_t v = 0; v < net.vertex_count(); ++v)
        if (net.is_interior(v))
            for (std::size_t k = 0; k < net.degree(v); ++k) plan.full.push_back(vertex_point(net, v));

    // Pattern start, removal target, and player index of that target per edge.
    std::vector<std::size_t> removal_slot(net.edge_count(), npos);
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        const Rational& len = ed.length;
        bool iu = net.is_interior(ed.u), iv = net.is_interior(ed.v);
        EdgeLayout lay;
        lay.edge = e;
        mpz_class c = ceil_q(len / (2 * xi));
        long cl = c.get_si();
        Rational removal_at;  // distance from the pattern start
        if (iu && iv) {
            lay.kind = EdgeClass::II;
            lay.from_u = ed.u < ed.v;
            lay.stretch = cl - 2;
            lay.alpha = (len - 6 * xi) / (xi * cl - 2 * xi);
            Rational at = 2 * xi;
            lay.stops.push_back({at, 1});
            for (std::size_t j = 0; j < lay.stretch; ++j) {
                at += lay.alpha * xi;
                lay.stops.push_back({at, 1});
            }
            at += 2 * xi;
            lay.stops.push_back({at, 2});
            removal_at = at;
        } else if (iu || iv) {
            lay.kind = EdgeClass::IL;
            lay.from_u = iu;
            lay.stretch = cl - 3;
            lay.alpha = (len - 7 * xi) / (xi * cl - 3 * xi);
            lay.stops.push_back({2 * xi, 2});
            Rational at = 4 * xi;
            lay.stops.push_back({at, 1});
            for (std::size_t j = 0; j < lay.stretch; ++j) {
                at += lay.alpha * xi;
                lay.stops.push_back({at, 1});
            }
            at += 2 * xi;
            lay.stops.push_back({at, 2});
            removal_at = 2 * xi;
        } else {
            lay.kind = EdgeClass::LL;
            lay.from_u = ed.u < ed.v;
            lay.stretch = cl - 4;
            lay.alpha = (len - 8 * xi) / (xi * cl - 4 * xi);
            lay.stops.push_back({xi, 2});
            Rational at = 3 * xi;
            lay.stops.push_back({at, 1});
            for (std::size_t j = 0; j < lay.stretch; ++j) {
                at += lay.alpha * xi;
                lay.stops.push_back({at, 1});
            }
            at += 2 * xi;
            lay.stops.push_back({at, 2});
            removal_at = at;  // the pair 3*xi before the far leaf
            at += 2 * xi;
            lay.stops.push_back({at, 2});
        }
        if (lay.alpha < 1 || lay.alpha > 2)
            throw InternalConsistency("stretch factor outside [1,2] on edge " + std::to_string(e));
        for (const auto& [dist, count] : lay.stops) {
            Rational t = lay.from_u ? dist : len - dist;
            for (std::size_t k = 0; k < count; ++k) {
                if (dist == removal_at && k == 0) removal_slot[e] = plan.full.size();
                plan.full.push_back(point_at(net, e, t));
            }
        }
        plan.layouts.push_back(std::move(lay));
    }
    if (plan.full.size() != plan.n_prime) throw InternalConsistency("pattern size mismatch");
    for (std::size_t e = 0; e < net.edge_count() && plan.removed.size() < plan.n_prime - n; ++e)
        plan.removed.push_back(removal_slot[e]);
    for (std::size_t i = 0; i < plan.full.size(); ++i)
        if (std::find(plan.removed.begin(), plan.removed.end(), i) == plan.removed.end())
            plan.profile.push_back(plan.full[i]);
    return plan;
}

// Consumer cost of the pattern, summed edge by edge from its gap structure.
// Removing one member of a pair leaves the set of locations unchanged, so
// the value is also the cost of the n-player profile.
inline Rational constructed_cost(const ConstructionPlan& plan) {
    const Rational& xi = plan.xi;
    Rational total = 0;
    for (const EdgeLayout& lay : plan.layouts) {
        Rational fixed = lay.kind == EdgeClass::II ? 6 : lay.kind == EdgeClass::IL ? 7 : 8;
        total += fixed * xi * xi / 2 + Rational(static_cast<unsigned long>(lay.stretch)) * lay.alpha * lay.alpha * xi * xi / 4;
    }
    return total;
}

}  // namespace netloc
