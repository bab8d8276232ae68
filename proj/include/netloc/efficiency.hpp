// SPDX-License-Identifier: MIT
// Efficiency of equilibria: bounds, majorization, a searched optimum, and
// price of anarchy / stability estimates.
#pragma once

#include "netloc/construct.hpp"
#include "netloc/detail/freespace.hpp"
#include "netloc/examples.hpp"
#include "netloc/parallel.hpp"
#include "netloc/payoff.hpp"
#include "netloc/verify.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace netloc {

inline Rational phi(const Network& net, std::size_t n) {
    if (n == 0) throw InvalidArgument("n must be positive");
    EdgeClasses c = classify_edges(net);
    Rational N(static_cast<unsigned long>(n));
    return (4 * N + 4 * Rational(static_cast<unsigned long>(c.ii.size())) +
            2 * Rational(static_cast<unsigned long>(c.il.size()))) /
           (2 * N);
}

// Lower bound on the optimal consumer cost with n locations.
inline Rational opt_lower_bound(const Network& net, std::size_t n) {
    if (n == 0) throw InvalidArgument("n must be positive");
    EdgeClasses c = classify_edges(net);
    Rational denom = 2 * Rational(static_cast<unsigned long>(2 * n + 2 * c.ii.size() + c.il.size()));
    return net.total_length() * net.total_length() / denom;
}

// Upper bound on the cost of any equilibrium with the vertex property.
inline Rational eq_cost_upper_bound(const Network& net, std::size_t n) {
    if (n == 0) throw InvalidArgument("n must be positive");
    return net.total_length() * net.total_length() / (2 * Rational(static_cast<unsigned long>(n)));
}

// True when a is majorized by b.  The shorter vector is padded with zeros;
// both must have the same sum.
inline bool is_majorized(std::span<const Rational> a, std::span<const Rational> b) {
    std::vector<Rational> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::size_t len = std::max(x.size(), y.size());
    x.resize(len, Rational(0));
    y.resize(len, Rational(0));
    Rational sx = 0, sy = 0;
    for (std::size_t i = 0; i < len; ++i) {
        sx += x[i];
        sy += y[i];
    }
    if (sx != sy) throw InvalidArgument("majorization needs vectors with equal sums");
    std::sort(x.begin(), x.end(), std::greater<>());
    std::sort(y.begin(), y.end(), std::greater<>());
    Rational px = 0, py = 0;
    for (std::size_t i = 0; i < len; ++i) {
        px += x[i];
        py += y[i];
        if (px > py) return false;
    }
    return true;
}

// Point at arc length s along the edges taken in id order.
inline Point arc_point(const Network& net, Rational s) {
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Rational& len = net.edge(e).length;
        if (s <= len) return point_at(net, e, s);
        s -= len;
    }
    return point_at(net, net.edge_count() - 1, net.edge(net.edge_count() - 1).length);
}

struct SearchBudget {
    std::uint64_t seed = 1;
    std::size_t starts = 8;
    std::size_t iters = 40;
};

struct OptimumResult {
    Profile profile;
    Rational cost;
    std::size_t start_index = 0;  // which start produced it
};

namespace detail {

// Moves player i to the point that most reduces consumer cost given the
// others, if that beats staying.  Returns true when the player moved.
inline bool improve_player(const Network& net, Profile& profile, std::size_t i, Rational& cost) {
    Profile rest = profile;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    Placement pl = place(net, rest);
    Field f;
    Rational rest_cost = 0;
    if (rest.empty()) {
        // A lone player: pretend every vertex is served from farther away
        // than any real distance.  The gain is then a constant minus the
        // player's cost, so maximizing one minimizes the other.
        const Rational far = 2 * net.total_length() + 1;
        f.vheight.assign(net.vertex_count(), far);
        f.vowners.assign(net.vertex_count(), {0});
        f.on_edge.assign(net.edge_count(), {});
        f.pieces.assign(net.edge_count(), {});
        for (const Edge& e : net.edges()) rest_cost += far * e.length + e.length * e.length / 4;
    } else {
        f = build_field(net, pl.sites);
        for (const auto& edge_pieces : f.pieces)
            for (const auto& pc : edge_pieces) rest_cost += (pc.value(pc.lo) + pc.value(pc.hi)) * (pc.hi - pc.lo) / 2;
    }
    FreeSpace fs = build_free_space(net, pl.sites, f);
    CompGain best;
    for (const auto& c : fs.comps) {
        CompGain g = component_best_gain(net, fs, c);
        if (g.gain > best.gain) best = g;
    }
    Rational current_gain = rest_cost - cost;
    if (!(best.gain > current_gain)) return false;
    // Long descents otherwise pile up huge denominators.  A move with a large
    // denominator is snapped to the 2^-20 grid of its edge and kept only if
    // the snapped point still lowers the exact cost.
    static const mpz_class grid = mpz_class(1) << 20;
    if (best.at.alpha.get_den() > grid) {
        Profile snapped = profile;
        mpz_class k = floor_q(best.at.alpha * grid + Rational(1, 2));
        snapped[i] = Point{best.at.edge, Rational(k, grid)};
        snapped[i].alpha.canonicalize();
        Rational c = social_cost(net, snapped);
        if (!(c < cost)) return false;
        profile = std::move(snapped);
        cost = c;
        return true;
    }
    profile[i] = best.at;
    cost = rest_cost - best.gain;
    return true;
}

inline OptimumResult descend(const Network& net, Profile start, std::size_t iters) {
    Rational cost = social_cost(net, start);
    for (std::size_t sweep = 0; sweep < iters; ++sweep) {
        Rational before = cost;
        bool moved = false;
        for (std::size_t i = 0; i < start.size(); ++i) moved = improve_player(net, start, i, cost) || moved;
        // Stop once a whole sweep gains less than one part in 2^30.
        if (!moved || (before - cost) * (mpz_class(1) << 30) < cost) break;
    }
    if (cost != social_cost(net, start)) throw InternalConsistency("descent lost track of the cost");
    return OptimumResult{std::move(start), cost, 0};
}

}  // namespace detail

// Multistart coordinate descent.  Start 0 places players at the midpoints of
// n equal arc-length strata, the next ones are the caller's seeds, and the
// rest jitter each player inside its stratum with the seeded generator.
// Each step moves one player to the exact cost-minimizing point given the
// others, so the cost never increases.
inline OptimumResult empirical_optimum(const Network& net, std::size_t n, const SearchBudget& budget,
                                       const std::vector<Profile>& seeds = {}) {
    if (n == 0) throw InvalidArgument("n must be positive");
    const Rational& total = net.total_length();
    std::vector<Profile> starts;
    {
        Profile p;
        for (std::size_t i = 0; i < n; ++i) p.push_back(arc_point(net, total * ratio(2 * i + 1, 2 * n)));
        starts.push_back(std::move(p));
    }
    for (const Profile& s : seeds)
        if (s.size() == n) starts.push_back(s);
    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<long> jitter(1, 63);
    for (std::size_t k = 0; k < budget.starts; ++k) {
        Profile p;
        for (std::size_t i = 0; i < n; ++i)
            p.push_back(arc_point(net, total * (Rational(static_cast<unsigned long>(i)) + ratio(jitter(rng), 64)) /
                                           Rational(static_cast<unsigned long>(n))));
        starts.push_back(std::move(p));
    }
    std::vector<OptimumResult> results(starts.size());
    parallel_for(starts.size(), [&](std::size_t k) {
        results[k] = detail::descend(net, starts[k], budget.iters);
        results[k].start_index = k;
    });
    std::size_t best = 0;
    for (std::size_t k = 1; k < results.size(); ++k)
        if (results[k].cost < results[best].cost) best = k;
    return results[best];
}

// ---------------------------------------------------------------------------
// Recognizing the shapes with closed-form families

namespace detail {

inline bool is_segment(const Network& net) { return net.edge_count() == 1 && net.vertex_count() == 2; }

inline bool is_circle(const Network& net) {
    if (net.vertex_count() != 2 || net.edge_count() != 2) return false;
    return net.degree(0) == 2 && net.degree(1) == 2;
}

// Center of a star whose rays all have one length, if the network is one.
inline std::optional<std::size_t> star_center(const Network& net) {
    if (net.edge_count() < 3 || net.vertex_count() != net.edge_count() + 1) return std::nullopt;
    for (std::size_t c = 0; c < net.vertex_count(); ++c) {
        if (net.degree(c) != net.edge_count()) continue;
        for (const Edge& e : net.edges())
            if (e.length != net.edge(0).length) return std::nullopt;
        return c;
    }
    return std::nullopt;
}

// Carries a profile from a template network (make_segment, make_star with
// rays in edge order and the center at u) onto an isomorphic network.
inline Profile transplant(const Network& from, const Network& to, const Profile& profile,
                          const std::function<bool(std::size_t)>& flipped) {
    Profile out;
    for (const Point& p : profile) {
        Point q = canonical(from, p);
        if (flipped(q.edge)) q.alpha = 1 - q.alpha;
        out.push_back(canonical(to, q));
    }
    return out;
}

struct ShapeFamilies {
    std::vector<Profile> equilibria;  // candidates, still to be verified
    std::vector<Profile> optimum_seeds;
};

inline ShapeFamilies shape_families(const Network& net, std::size_t n) {
    ShapeFamilies out;
    auto keep = [&](std::vector<Profile>& into, auto&& make) {
        try {
            into.push_back(make());
        } catch (const InvalidArgument&) {
        }
    };
    if (is_segment(net)) {
        Network tmpl = make_segment();
        auto carry = [&](const Profile& p) { return transplant(tmpl, net, p, [](std::size_t) { return false; }); };
        keep(out.optimum_seeds, [&] { return carry(segment_profile(SegmentKind::Opt, n)); });
        keep(out.equilibria, [&] { return carry(segment_profile(SegmentKind::Tilde, n)); });
        keep(out.equilibria, [&] { return carry(segment_profile(SegmentKind::Hat, n)); });
        if (n >= 5 && n % 2)
            for (std::size_t l = 1; l <= (n - 3) / 2; ++l)
                keep(out.equilibria, [&] { return carry(segment_profile(SegmentKind::HatEll, n, l)); });
    } else if (is_circle(net)) {
        // Circle profiles are generated directly on the network.
        keep(out.optimum_seeds, [&] { return circle_profile(net, CircleKind::Tilde, n); });
        keep(out.equilibria, [&] { return circle_profile(net, CircleKind::Tilde, n); });
        keep(out.equilibria, [&] { return circle_profile(net, CircleKind::Hat, n); });
        keep(out.equilibria, [&] { return circle_profile(net, CircleKind::Breve, n); });
    } else if (auto center = star_center(net)) {
        const std::size_t k = net.edge_count();
        Network tmpl = make_star(k);
        std::size_t c = *center;
        auto carry = [&](const Profile& p) {
            return transplant(tmpl, net, p, [&](std::size_t e) { return net.edge(e).u != c; });
        };
        if (k >= 3 && n >= 2) {
            auto eq = star_equilibrium(k, n);
            if (auto* s = std::get_if<StarEquilibrium>(&eq)) {
                out.equilibria.push_back(carry(s->profile));
                if (s->xi_range) {
                    out.equilibria.push_back(carry(star_family_profile(tmpl, k, n, s->xi_range->first)));
                    out.equilibria.push_back(carry(star_family_profile(tmpl, k, n, s->xi_range->second)));
                }
            }
        }
        if (k == 3) {
            if (n % 6 == 3 && n >= 9) {
                auto r = star_remark_profiles((n - 3) / 6);
                out.equilibria.push_back(carry(r.worst_eq));
                out.optimum_seeds.push_back(carry(r.good_cfg));
            }
            if (n % 6 == 1 && n >= 13) {
                auto r = star_remark_profiles((n - 1) / 6);
                out.equilibria.push_back(carry(r.worst_eq_2));
                out.optimum_seeds.push_back(carry(r.opt));
            }
        }
    }
    return out;
}

// Pairs two neighbouring lone players on one edge at their midpoint.
inline std::vector<Profile> pairing_perturbations(const Network& net, const Profile& eq, std::size_t limit) {
    std::vector<Profile> out;
    Placement pl = place(net, eq);
    std::vector<std::vector<std::size_t>> lone(net.edge_count());
    for (std::size_t s = 0; s < pl.sites.size(); ++s)
        if (!pl.sites[s].is_vertex() && pl.mult[s] == 1) lone[pl.sites[s].edge].push_back(s);
    for (std::size_t e = 0; e < net.edge_count() && out.size() < limit; ++e) {
        auto& ids = lone[e];
        std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) { return pl.sites[a].t < pl.sites[b].t; });
        for (std::size_t k = 0; k + 1 < ids.size() && out.size() < limit; ++k) {
            Profile p = eq;
            Rational mid = (pl.sites[ids[k]].t + pl.sites[ids[k + 1]].t) / 2;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (pl.player_site[i] == ids[k] || pl.player_site[i] == ids[k + 1]) p[i] = point_at(net, e, mid);
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace detail

struct EfficiencyReport {
    std::size_t n = 0;
    Rational total_length;
    Rational phi_n;
    Rational opt_lower_bound;
    Rational eq_cost_upper_bound;
    Rational empirical_opt_cost;
    Profile empirical_opt_profile;
    Rational worst_eq_cost, best_eq_cost;
    Profile worst_eq_profile, best_eq_profile;
    std::size_t equilibria_verified = 0;
    Rational poa_estimate;  // worst found / searched optimum, a lower bound on the price of anarchy
    Rational pos_estimate;  // best found / searched optimum
    std::optional<Rational> poa_upper;  // phi(n), certified once n exceeds n_bar
    Rational pos_upper;                 // best found / opt_lower_bound, certified
    std::uint64_t seed = 0;
};

inline EfficiencyReport efficiency_report(const Network& net, std::size_t n, const SearchBudget& budget) {
    if (n == 0) throw InvalidArgument("n must be positive");
    EfficiencyReport rep;
    rep.n = n;
    rep.seed = budget.seed;
    rep.total_length = net.total_length();
    rep.phi_n = phi(net, n);
    rep.opt_lower_bound = opt_lower_bound(net, n);
    rep.eq_cost_upper_bound = eq_cost_upper_bound(net, n);

    detail::ShapeFamilies fam = detail::shape_families(net, n);
    std::vector<Profile> candidates = fam.equilibria;
    bool constructible = !net.degree2_allowed() && !net.has_degree2_vertex() &&
                         mpz_class(static_cast<unsigned long>(n)) >= n_bar(net);
    if (constructible) candidates.push_back(build_equilibrium(net, n).profile);

    std::vector<Profile> verified;
    std::vector<char> ok(candidates.size(), 0);
    for (std::size_t k = 0; k < candidates.size(); ++k) ok[k] = is_nash(net, candidates[k]).is_nash;
    for (std::size_t k = 0; k < candidates.size(); ++k)
        if (ok[k]) verified.push_back(candidates[k]);
    if (verified.empty())
        throw BelowThreshold("no verified equilibrium available for n = " + std::to_string(n) + " on this network");
    {
        std::vector<Profile> extra;
        for (const Profile& eq : verified)
            for (Profile& p : detail::pairing_perturbations(net, eq, 2)) extra.push_back(std::move(p));
        for (Profile& p : extra)
            if (is_nash(net, p).is_nash) verified.push_back(std::move(p));
    }
    rep.equilibria_verified = verified.size();
    for (std::size_t k = 0; k < verified.size(); ++k) {
        Rational c = social_cost(net, verified[k]);
        if (k == 0 || c > rep.worst_eq_cost) {
            rep.worst_eq_cost = c;
            rep.worst_eq_profile = verified[k];
        }
        if (k == 0 || c < rep.best_eq_cost) {
            rep.best_eq_cost = c;
            rep.best_eq_profile = verified[k];
        }
    }
    std::vector<Profile> seeds = fam.optimum_seeds;
    seeds.push_back(rep.best_eq_profile);
    OptimumResult opt = empirical_optimum(net, n, budget, seeds);
    rep.empirical_opt_cost = opt.cost;
    rep.empirical_opt_profile = opt.profile;
    rep.poa_estimate = rep.worst_eq_cost / opt.cost;
    rep.pos_estimate = rep.best_eq_cost / opt.cost;
    rep.pos_upper = rep.best_eq_cost / rep.opt_lower_bound;
    if (constructible && mpz_class(static_cast<unsigned long>(n)) > n_bar(net)) rep.poa_upper = rep.phi_n;
    return rep;
}

}  // namespace netloc
