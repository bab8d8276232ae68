// SPDX-License-Identifier: MIT
// Payoffs and consumer cost of a strategy profile.
//
// Everything here is driven by the distance field D(y) = min_i d(x_i, y).  On
// an edge the field is the lower envelope of V-shaped cones rooted at the
// occupied locations and at the two end vertices (whose heights are the
// distances from the nearest location).  Between two consecutive roots only
// those two cones matter, so each edge splits into pieces on which D is
// linear and which are owned by a fixed set of locations.  A piece owned by
// several locations is a positive-measure tie and is shared equally.
#pragma once

#include "netloc/network.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace netloc {

// Distinct occupied locations of a profile.
struct Placement {
    std::vector<Site> sites;
    std::vector<std::size_t> mult;         // players per site
    std::vector<std::size_t> player_site;  // site index per player
};

inline Placement place(const Network& net, const Profile& profile) {
    Placement pl;
    std::map<Site, std::size_t> index;
    for (const Point& p : profile) {
        Site s = site_of(net, p);
        auto [it, fresh] = index.emplace(s, pl.sites.size());
        if (fresh) {
            pl.sites.push_back(s);
            pl.mult.push_back(0);
        }
        ++pl.mult[it->second];
        pl.player_site.push_back(it->second);
    }
    return pl;
}

namespace detail {

struct Piece {
    Rational lo, hi;      // offsets from the edge's u end
    Rational root;        // D(t) = height + |t - root| on [lo, hi]
    Rational height;
    std::vector<std::size_t> owners;  // site indices

    Rational value(const Rational& t) const { return height + abs(t - root); }
};

struct Field {
    std::vector<Rational> vheight;                   // D at each vertex
    std::vector<std::vector<std::size_t>> vowners;   // nearest sites per vertex
    std::vector<std::vector<Piece>> pieces;          // per edge, left to right
    std::vector<std::vector<std::size_t>> on_edge;   // interior sites per edge, sorted by t
};

inline Field build_field(const Network& net, const std::vector<Site>& sites) {
    if (sites.empty()) throw InvalidArgument("distance field of an empty profile");
    Field f;
    const std::size_t nv = net.vertex_count();
    f.vheight.resize(nv);
    f.vowners.assign(nv, {});
    for (std::size_t w = 0; w < nv; ++w) {
        for (std::size_t s = 0; s < sites.size(); ++s) {
            Rational d = site_vertex_distance(net, sites[s], w);
            if (f.vowners[w].empty() || d < f.vheight[w]) {
                f.vheight[w] = d;
                f.vowners[w] = {s};
            } else if (d == f.vheight[w]) {
                f.vowners[w].push_back(s);
            }
        }
    }
    f.on_edge.assign(net.edge_count(), {});
    for (std::size_t s = 0; s < sites.size(); ++s)
        if (!sites[s].is_vertex()) f.on_edge[sites[s].edge].push_back(s);
    f.pieces.assign(net.edge_count(), {});
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        auto& ids = f.on_edge[e];
        std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) { return sites[a].t < sites[b].t; });
        const Edge& ed = net.edge(e);
        struct Root {
            Rational pos, height;
            std::vector<std::size_t> owners;
        };
        std::vector<Root> roots;
        roots.push_back({0, f.vheight[ed.u], f.vowners[ed.u]});
        for (std::size_t s : ids) roots.push_back({sites[s].t, 0, {s}});
        roots.push_back({ed.length, f.vheight[ed.v], f.vowners[ed.v]});
        for (std::size_t k = 0; k + 1 < roots.size(); ++k) {
            const Root& p = roots[k];
            const Root& q = roots[k + 1];
            Rational cross = (q.height - p.height + p.pos + q.pos) / 2;
            if (cross < p.pos || cross > q.pos)
                throw InternalConsistency("distance field cones cross outside their gap");
            if (cross > p.pos) f.pieces[e].push_back({p.pos, cross, p.pos, p.height, p.owners});
            if (q.pos > cross) f.pieces[e].push_back({cross, q.pos, q.pos, q.height, q.owners});
        }
    }
    return f;
}

}  // namespace detail

// A sub-interval of an edge in alpha coordinates (lo <= hi).
struct Interval {
    std::size_t edge = 0;
    Rational lo, hi;
    Rational measure;
};

// Consumers attracted by one location.  `ties` lists the portions that are
// split with other locations, paired with the number of locations sharing.
struct AttractionCell {
    Point location;
    std::size_t multiplicity = 0;
    Rational mass;  // consumers captured by the location, before splitting among co-located players
    std::vector<Interval> exclusive;
    std::vector<std::pair<Interval, std::size_t>> ties;
};

inline Interval to_interval(const Network& net, std::size_t e, const Rational& lo, const Rational& hi) {
    const Rational& len = net.edge(e).length;
    return Interval{e, 1 - hi / len, 1 - lo / len, hi - lo};
}

inline std::vector<AttractionCell> attraction(const Network& net, const Profile& profile) {
    Placement pl = place(net, profile);
    detail::Field f = detail::build_field(net, pl.sites);
    std::vector<AttractionCell> cells(pl.sites.size());
    for (std::size_t s = 0; s < pl.sites.size(); ++s) {
        cells[s].location = point_of(net, pl.sites[s]);
        cells[s].multiplicity = pl.mult[s];
        cells[s].mass = 0;
    }
    for (std::size_t e = 0; e < net.edge_count(); ++e)
        for (const auto& pc : f.pieces[e]) {
            Interval iv = to_interval(net, e, pc.lo, pc.hi);
            Rational share = iv.measure / pc.owners.size();
            for (std::size_t s : pc.owners) {
                cells[s].mass += share;
                if (pc.owners.size() == 1)
                    cells[s].exclusive.push_back(iv);
                else
                    cells[s].ties.emplace_back(iv, pc.owners.size());
            }
        }
    return cells;
}

inline std::vector<Rational> payoffs(const Network& net, const Profile& profile) {
    if (profile.empty()) throw InvalidArgument("payoffs of an empty profile");
    Placement pl = place(net, profile);
    detail::Field f = detail::build_field(net, pl.sites);
    std::vector<Rational> mass(pl.sites.size(), Rational(0));
    for (std::size_t e = 0; e < net.edge_count(); ++e)
        for (const auto& pc : f.pieces[e]) {
            Rational share = (pc.hi - pc.lo) / pc.owners.size();
            for (std::size_t s : pc.owners) mass[s] += share;
        }
    std::vector<Rational> out;
    out.reserve(profile.size());
    for (std::size_t s : pl.player_site) out.push_back(mass[s] / pl.mult[s]);
    return out;
}

// Integral over the network of the distance to the nearest location.  D is
// linear on every piece, so the trapezoid rule is exact.
inline Rational social_cost(const Network& net, const Profile& profile) {
    if (profile.empty()) throw InvalidArgument("social cost of an empty profile");
    Placement pl = place(net, profile);
    detail::Field f = detail::build_field(net, pl.sites);
    Rational total = 0;
    for (std::size_t e = 0; e < net.edge_count(); ++e)
        for (const auto& pc : f.pieces[e]) total += (pc.value(pc.lo) + pc.value(pc.hi)) * (pc.hi - pc.lo) / 2;
    return total;
}

// Largest distance from any consumer to its nearest location.
inline Rational eccentricity(const Network& net, const Profile& profile) {
    Placement pl = place(net, profile);
    detail::Field f = detail::build_field(net, pl.sites);
    Rational best = 0;
    for (const auto& edge_pieces : f.pieces)
        for (const auto& pc : edge_pieces) {
            Rational m = std::max(pc.value(pc.lo), pc.value(pc.hi));
            if (m > best) best = m;
        }
    return best;
}

// Every vertex of degree at least three hosts a player.
inline bool has_vertex_property(const Network& net, const Profile& profile) {
    Placement pl = place(net, profile);
    std::vector<bool> occupied(net.vertex_count(), false);
    for (const Site& s : pl.sites)
        if (s.is_vertex()) occupied[s.vertex] = true;
    for (std::size_t v = 0; v < net.vertex_count(); ++v)
        if (net.is_interior(v) && !occupied[v]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Half intervals

struct HalfInterval {
    Point owner;    // occupied location the half interval starts from
    Point far_end;  // leaf or midpoint towards the next location
    Rational length;
};

namespace detail {

// Walks `dist` along a free path starting at site `from` on edge e heading
// in direction dir (+1 towards v, -1 towards u).  The path only crosses
// unoccupied vertices of degree two, which is all the vertex property allows
// inside a gap.
inline Point walk(const Network& net, std::size_t e, Rational t, int dir, Rational dist) {
    for (;;) {
        const Edge& ed = net.edge(e);
        Rational room = dir > 0 ? ed.length - t : t;
        if (dist <= room) return point_at(net, e, dir > 0 ? Rational(t + dist) : Rational(t - dist));
        dist -= room;
        std::size_t w = dir > 0 ? ed.v : ed.u;
        if (net.degree(w) != 2) throw InternalConsistency("half interval walk left its gap");
        std::size_t next = net.incident(w)[0] == e ? net.incident(w)[1] : net.incident(w)[0];
        const Edge& nx = net.edge(next);
        e = next;
        if (nx.u == w) {
            t = 0;
            dir = +1;
        } else {
            t = nx.length;
            dir = -1;
        }
    }
}

}  // namespace detail

// Requires the vertex property.  Each gap between two consecutive locations
// gives two half intervals of half its length, each gap ending at a leaf
// gives one, and a location shared by m players adds 2(m-1) of length zero.
inline std::vector<HalfInterval> half_intervals(const Network& net, const Profile& profile) {
    if (profile.empty()) throw InvalidArgument("half intervals of an empty profile");
    if (!has_vertex_property(net, profile))
        throw VertexPropertyViolated("half intervals need every vertex of degree >= 3 occupied");
    Placement pl = place(net, profile);
    detail::Field f = detail::build_field(net, pl.sites);
    std::vector<bool> occupied(net.vertex_count(), false);
    for (const Site& s : pl.sites)
        if (s.is_vertex()) occupied[s.vertex] = true;

    std::vector<HalfInterval> out;
    // Visit each gap from each of its location ends.  A gap end is a location;
    // we start at every location and every direction that leads into free space.
    struct Start {
        std::size_t edge;
        Rational t;
        int dir;
        std::size_t site;
    };
    std::vector<Start> starts;
    for (std::size_t s = 0; s < pl.sites.size(); ++s) {
        const Site& st = pl.sites[s];
        if (st.is_vertex()) {
            for (std::size_t e : net.incident(st.vertex)) {
                const Edge& ed = net.edge(e);
                if (ed.u == st.vertex) starts.push_back({e, 0, +1, s});
                else starts.push_back({e, ed.length, -1, s});
            }
        } else {
            starts.push_back({st.edge, st.t, +1, s});
            starts.push_back({st.edge, st.t, -1, s});
        }
    }
    for (const Start& st : starts) {
        // Follow the gap to its far end to learn its length and type.
        std::size_t e = st.edge;
        Rational t = st.t;
        int dir = st.dir;
        Rational len = 0;
        bool leaf_end = false;
        for (;;) {
            const Edge& ed = net.edge(e);
            // Next occupied interior site in this direction.
            std::optional<Rational> hit;
            for (std::size_t s : f.on_edge[e]) {
                const Rational& ts = pl.sites[s].t;
                if (dir > 0 && ts > t && (!hit || ts < *hit)) hit = ts;
                if (dir < 0 && ts < t && (!hit || ts > *hit)) hit = ts;
            }
            if (hit) {
                len += abs(*hit - t);
                break;
            }
            len += dir > 0 ? ed.length - t : t;
            std::size_t w = dir > 0 ? ed.v : ed.u;
            if (occupied[w]) break;
            if (net.is_leaf(w)) {
                leaf_end = true;
                break;
            }
            if (net.degree(w) != 2) throw InternalConsistency("gap reaches an unoccupied branching vertex");
            std::size_t next = net.incident(w)[0] == e ? net.incident(w)[1] : net.incident(w)[0];
            const Edge& nx = net.edge(next);
            e = next;
            if (nx.u == w) {
                t = 0;
                dir = +1;
            } else {
                t = nx.length;
                dir = -1;
            }
        }
        Rational h = leaf_end ? len : len / 2;
        out.push_back({point_of(net, pl.sites[st.site]), detail::walk(net, st.edge, st.t, st.dir, h), h});
    }
    for (std::size_t s = 0; s < pl.sites.size(); ++s)
        for (std::size_t k = 0; k < 2 * (pl.mult[s] - 1); ++k)
            out.push_back({point_of(net, pl.sites[s]), point_of(net, pl.sites[s]), 0});
    return out;
}

// delta(w, direction): the consumers on one side of the occupied location w
// that w can claim.  `toward_v` picks the direction along edge e; for a
// vertex w it must point away from w and is derived automatically.
inline Rational delta(const Network& net, const Profile& profile, const Point& w, std::size_t e,
                      std::optional<bool> toward_v = std::nullopt) {
    if (e >= net.edge_count()) throw InvalidArgument("edge id out of range");
    Placement pl = place(net, profile);
    Site ws = site_of(net, w);
    auto found = std::find(pl.sites.begin(), pl.sites.end(), ws);
    if (found == pl.sites.end()) throw InvalidArgument("delta needs an occupied location");
    const Edge& ed = net.edge(e);
    Rational t0;
    bool forward;
    if (ws.is_vertex()) {
        if (ed.u != ws.vertex && ed.v != ws.vertex) throw InvalidArgument("edge is not incident to the location");
        forward = ed.u == ws.vertex;
        t0 = forward ? Rational(0) : ed.length;
    } else {
        if (ws.edge != e) throw InvalidArgument("edge is not incident to the location");
        if (!toward_v) throw InvalidArgument("interior location needs an explicit direction");
        forward = *toward_v;
        t0 = ws.t;
    }
    // Walk away from w; an unoccupied degree-two vertex is passed straight
    // through, since it only joins two pieces of one path.
    Rational walked = 0;
    for (std::size_t steps = 0; steps <= net.edge_count(); ++steps) {
        const Edge& cur = net.edge(e);
        std::optional<Rational> hit;
        for (const Site& s : pl.sites)
            if (!s.is_vertex() && s.edge == e) {
                if (forward && s.t > t0 && (!hit || s.t < *hit)) hit = s.t;
                if (!forward && s.t < t0 && (!hit || s.t > *hit)) hit = s.t;
            }
        if (hit) return (walked + abs(*hit - t0)) / 2;
        std::size_t far = forward ? cur.v : cur.u;
        walked += forward ? cur.length - t0 : t0;
        bool far_occupied = std::any_of(pl.sites.begin(), pl.sites.end(),
                                        [&](const Site& s) { return s.is_vertex() && s.vertex == far; });
        if (far_occupied) return walked / 2;
        if (net.is_leaf(far)) return walked;
        if (net.degree(far) != 2) break;
        const auto& inc = net.incident(far);
        std::size_t next = inc[0] == e ? inc[1] : inc[0];
        forward = net.edge(next).u == far;
        t0 = forward ? Rational(0) : net.edge(next).length;
        e = next;
    }
    throw VertexPropertyViolated("delta direction runs into an unoccupied vertex");
}

}  // namespace netloc
