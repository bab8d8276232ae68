// SPDX-License-Identifier: MIT
// Exact best responses and Nash verification.
#pragma once

#include "netloc/detail/freespace.hpp"
#include "netloc/parallel.hpp"
#include "netloc/payoff.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace netloc {

struct BestResponse {
    Rational value;
    bool attained = true;
    Point witness;  // a best point, or the limit point of an approached supremum
    std::size_t approach_edge = npos;
    Rational approach_from, approach_to, approach_rate;

    // A concrete point whose payoff exceeds `threshold`; needs value > threshold.
    Point point_beating(const Network& net, const Rational& threshold) const {
        if (!(value > threshold)) throw InvalidArgument("best response does not beat the threshold");
        if (attained) return witness;
        Rational span = abs(approach_to - approach_from);
        Rational step = (value - threshold) / (2 * approach_rate);
        if (step > span) step = span;
        Rational t = approach_to > approach_from ? Rational(approach_to - step) : Rational(approach_to + step);
        return point_at(net, approach_edge, t);
    }
};

inline Profile replace_player(Profile profile, std::size_t i, const Point& y) {
    profile.at(i) = y;
    return profile;
}

inline Rational deviation_payoff(const Network& net, const Profile& profile, std::size_t i, const Point& y) {
    if (i >= profile.size()) throw InvalidArgument("player index out of range");
    return payoffs(net, replace_player(profile, i, y))[i];
}

// Precomputes the field and free space of a profile once so that best
// responses of many players can share work.  Players at a shared location
// see the same free space as the full profile, so only lone players need a
// residual recomputation, and even then only the component they open up is new.
class Analysis {
public:
    Analysis(const Network& net, const Profile& profile) : net_(net), profile_(profile) {
        if (profile.empty()) throw InvalidArgument("empty profile");
        pl_ = place(net, profile);
        field_ = detail::build_field(net, pl_.sites);
        mass_.assign(pl_.sites.size(), Rational(0));
        for (const auto& edge_pieces : field_.pieces)
            for (const auto& pc : edge_pieces)
                for (std::size_t s : pc.owners) mass_[s] += (pc.hi - pc.lo) / pc.owners.size();
        fs_ = detail::build_free_space(net, pl_.sites, field_);
        for (const auto& c : fs_.comps) sups_.push_back(detail::component_sup(net, fs_, c));
        for (std::size_t k = 0; k < fs_.comps.size(); ++k) cache_.emplace(fs_.comps[k].key(fs_.segs), sups_[k]);
    }

    const Placement& placement() const { return pl_; }

    Rational payoff(std::size_t i) const {
        std::size_t s = pl_.player_site.at(i);
        return mass_[s] / pl_.mult[s];
    }

    BestResponse best_response(std::size_t i) const {
        if (i >= profile_.size()) throw InvalidArgument("player index out of range");
        BestResponse br;
        if (profile_.size() == 1) {
            br.value = net_.total_length();
            br.witness = canonical(net_, profile_[i]);
            return br;
        }
        const std::size_t own = pl_.player_site[i];
        bool seen = false;
        auto take = [&](const Rational& v, const Point& p) {
            if (!seen || v > br.value || (v == br.value && !br.attained)) {
                br.value = v;
                br.attained = true;
                br.witness = p;
                br.approach_edge = npos;
                seen = true;
            }
        };
        auto take_sup = [&](const detail::CompSup& cs) {
            if (cs.value < 0) return;
            if (seen && !(cs.value > br.value) && !(cs.value == br.value && cs.attained && !br.attained)) return;
            br.value = cs.value;
            br.attained = cs.attained;
            br.witness = cs.witness;
            br.approach_edge = cs.edge;
            br.approach_from = cs.from;
            br.approach_to = cs.to;
            br.approach_rate = cs.rate;
            seen = true;
        };
        if (pl_.mult[own] >= 2) {
            take(mass_[own] / pl_.mult[own], point_of(net_, pl_.sites[own]));
            for (std::size_t s = 0; s < pl_.sites.size(); ++s)
                if (s != own) take(mass_[s] / (pl_.mult[s] + 1), point_of(net_, pl_.sites[s]));
            for (const auto& cs : sups_) take_sup(cs);
            return br;
        }
        std::vector<Site> rest;
        std::vector<std::size_t> rest_mult;
        for (std::size_t s = 0; s < pl_.sites.size(); ++s)
            if (s != own) {
                rest.push_back(pl_.sites[s]);
                rest_mult.push_back(pl_.mult[s]);
            }
        detail::Field rf = detail::build_field(net_, rest);
        std::vector<Rational> rmass(rest.size(), Rational(0));
        for (const auto& edge_pieces : rf.pieces)
            for (const auto& pc : edge_pieces)
                for (std::size_t s : pc.owners) rmass[s] += (pc.hi - pc.lo) / pc.owners.size();
        for (std::size_t s = 0; s < rest.size(); ++s) take(rmass[s] / (rest_mult[s] + 1), point_of(net_, rest[s]));
        detail::FreeSpace rfs = detail::build_free_space(net_, rest, rf);
        for (const auto& c : rfs.comps) {
            auto it = cache_.find(c.key(rfs.segs));
            take_sup(it != cache_.end() ? it->second : detail::component_sup(net_, rfs, c));
        }
        return br;
    }

private:
    const Network& net_;
    Profile profile_;
    Placement pl_;
    detail::Field field_;
    std::vector<Rational> mass_;
    detail::FreeSpace fs_;
    std::vector<detail::CompSup> sups_;
    std::map<std::vector<std::tuple<std::size_t, Rational, Rational, bool, bool>>, detail::CompSup> cache_;
};

inline BestResponse best_response_value(const Network& net, const Profile& profile, std::size_t i) {
    return Analysis(net, profile).best_response(i);
}

struct PlayerCheck {
    Rational payoff;
    BestResponse best;
    bool profitable() const { return best.value > payoff; }
};

struct Counterexample {
    std::size_t player = 0;
    Point deviation;
    Rational gain;  // exact payoff gain when moving there
};

struct NashCertificate {
    bool is_nash = true;
    std::vector<PlayerCheck> players;
    std::optional<Counterexample> counterexample;
};

inline NashCertificate is_nash(const Network& net, const Profile& profile) {
    Analysis an(net, profile);
    const Placement& pl = an.placement();
    // One best response per distinct location: co-located players are interchangeable.
    std::vector<std::size_t> rep(pl.sites.size(), npos);
    for (std::size_t i = 0; i < profile.size(); ++i)
        if (rep[pl.player_site[i]] == npos) rep[pl.player_site[i]] = i;
    std::vector<BestResponse> per_site(pl.sites.size());
    parallel_for(pl.sites.size(), [&](std::size_t s) { per_site[s] = an.best_response(rep[s]); });
    NashCertificate cert;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        PlayerCheck pc{an.payoff(i), per_site[pl.player_site[i]]};
        if (pc.profitable() && cert.is_nash) {
            cert.is_nash = false;
            Point y = pc.best.point_beating(net, pc.payoff);
            Rational gain = deviation_payoff(net, profile, i, y) - pc.payoff;
            if (sgn(gain) <= 0) throw InternalConsistency("reported deviation is not profitable");
            cert.counterexample = Counterexample{i, y, gain};
        }
        cert.players.push_back(std::move(pc));
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Structural consequences of being an equilibrium

struct LemmaCheck {
    std::string name;
    bool applicable = true;
    bool holds = true;
    std::string detail;
};

struct StructuralReport {
    std::vector<LemmaCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (c.applicable && !c.holds) return false;
        return true;
    }
};

inline StructuralReport check_structural_lemmas(const Network& net, const Profile& profile, const NashCertificate& cert) {
    if (!cert.is_nash) throw InvalidArgument("structural checks apply to verified equilibria only");
    StructuralReport rep;
    const std::size_t n = profile.size();
    const Rational& total = net.total_length();
    std::vector<Rational> pay = payoffs(net, profile);
    Placement pl = place(net, profile);
    bool vp = has_vertex_property(net, profile);

    {
        LemmaCheck c{"eccentricity at most 2*Lambda/n", true, true, {}};
        Rational ecc = eccentricity(net, profile);
        c.holds = ecc <= 2 * total / n;
        c.detail = "eccentricity " + to_string(ecc);
        rep.checks.push_back(c);
    }
    {
        LemmaCheck c{"smallest payoff at most Lambda/n", true, true, {}};
        Rational lo = *std::min_element(pay.begin(), pay.end());
        c.holds = lo <= total / n;
        c.detail = "smallest payoff " + to_string(lo);
        rep.checks.push_back(c);
    }
    {
        LemmaCheck c{"half intervals at most Lambda/n", vp, true, {}};
        if (vp) {
            for (const auto& h : half_intervals(net, profile))
                if (h.length > total / n) {
                    c.holds = false;
                    c.detail = "half interval of length " + to_string(h.length);
                }
        }
        rep.checks.push_back(c);
    }
    {
        LemmaCheck c{"multiplicity at most degree", vp, true, {}};
        if (vp)
            for (std::size_t s = 0; s < pl.sites.size(); ++s) {
                std::size_t deg = pl.sites[s].is_vertex() ? net.degree(pl.sites[s].vertex) : 2;
                if (pl.mult[s] > deg) {
                    c.holds = false;
                    c.detail = "location with " + std::to_string(pl.mult[s]) + " players and degree " + std::to_string(deg);
                }
            }
        rep.checks.push_back(c);
    }
    // Saturated locations: multiplicity equals degree.
    std::vector<std::size_t> saturated;
    for (std::size_t s = 0; s < pl.sites.size(); ++s) {
        std::size_t deg = pl.sites[s].is_vertex() ? net.degree(pl.sites[s].vertex) : 2;
        if (pl.mult[s] == deg) saturated.push_back(s);
    }
    {
        LemmaCheck c{"balanced players share one payoff", n >= 2, true, {}};
        std::optional<Rational> common;
        for (std::size_t i = 0; i < n && c.applicable; ++i) {
            std::size_t s = pl.player_site[i];
            if (std::find(saturated.begin(), saturated.end(), s) == saturated.end()) continue;
            if (!common) common = pay[i];
            else if (*common != pay[i]) {
                c.holds = false;
                c.detail = "payoffs " + to_string(*common) + " and " + to_string(pay[i]);
            }
        }
        rep.checks.push_back(c);
    }
    {
        LemmaCheck c{"saturated locations split evenly across directions", vp && n >= 2, true, {}};
        if (c.applicable)
            for (std::size_t s : saturated) {
                Point w = point_of(net, pl.sites[s]);
                std::vector<Rational> ds;
                if (pl.sites[s].is_vertex())
                    for (std::size_t e : net.incident(pl.sites[s].vertex)) ds.push_back(delta(net, profile, w, e));
                else {
                    ds.push_back(delta(net, profile, w, pl.sites[s].edge, true));
                    ds.push_back(delta(net, profile, w, pl.sites[s].edge, false));
                }
                for (const Rational& d : ds)
                    if (d != ds.front()) {
                        c.holds = false;
                        c.detail = "unequal deltas at a saturated location";
                    }
            }
        rep.checks.push_back(c);
    }
    {
        // On an edge ending at a leaf, the interior location closest to the
        // leaf is shared by at least two players.
        LemmaCheck c{"player nearest a leaf is not alone", vp, true, {}};
        if (vp)
            for (std::size_t leaf : leaf_vertices(net)) {
                std::size_t e = net.incident(leaf).front();
                bool leaf_at_v = net.edge(e).v == leaf;
                std::optional<std::size_t> nearest;
                for (std::size_t s = 0; s < pl.sites.size(); ++s) {
                    const Site& st = pl.sites[s];
                    if (st.is_vertex() || st.edge != e) continue;
                    if (!nearest || (leaf_at_v ? st.t > pl.sites[*nearest].t : st.t < pl.sites[*nearest].t)) nearest = s;
                }
                if (nearest && pl.mult[*nearest] < 2) {
                    c.holds = false;
                    c.detail = "single player next to leaf " + net.name(leaf);
                }
            }
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace netloc
