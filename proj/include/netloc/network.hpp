// SPDX-License-Identifier: MIT
// Metric networks, points on them, and shortest-path distances.
//
// A point is written (edge, alpha) against the stored orientation (u, v) of
// the edge and denotes alpha*u + (1 - alpha)*v, so alpha = 1 is u and
// alpha = 0 is v.  Internally every point is turned into a Site, which is
// either a vertex id or an edge id plus an offset t in (0, length) measured
// from u.  Sites are canonical, so the same vertex reached through two
// different incident edges compares equal.
#pragma once

#include "netloc/core.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace netloc {

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    Rational length;
};

struct Point {
    std::size_t edge = 0;
    Rational alpha;
};

using Profile = std::vector<Point>;

struct Site {
    std::size_t vertex = npos;  // set for vertex sites
    std::size_t edge = npos;    // set for interior sites
    Rational t;                 // offset from the edge's u end, interior only

    bool is_vertex() const { return vertex != npos; }

    friend bool operator==(const Site& a, const Site& b) {
        return a.vertex == b.vertex && a.edge == b.edge && a.t == b.t;
    }
    friend bool operator<(const Site& a, const Site& b) {
        if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
        if (a.is_vertex()) return a.vertex < b.vertex;
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.t < b.t;
    }
};

class Network {
public:
    Network() = default;

    Network(std::vector<std::string> names, std::vector<Edge> edges, bool degree2_allowed = false)
        : names_(std::move(names)), edges_(std::move(edges)), degree2_allowed_(degree2_allowed) {
        validate_and_index();
    }

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& name(std::size_t v) const { return names_.at(v); }
    const std::vector<std::string>& names() const { return names_; }
    bool degree2_allowed() const { return degree2_allowed_; }

    // Incident edge ids; a parallel edge appears once per copy.
    const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }
    std::size_t degree(std::size_t v) const { return incident_.at(v).size(); }
    bool is_leaf(std::size_t v) const { return degree(v) == 1; }
    bool is_interior(std::size_t v) const { return degree(v) >= 3; }

    const Rational& total_length() const { return total_; }
    const Rational& min_length() const { return min_len_; }

    // Shortest-path distance between two vertices.
    const Rational& vdist(std::size_t a, std::size_t b) const { return dist_[a * names_.size() + b]; }

    std::optional<std::size_t> find_vertex(const std::string& nm) const {
        auto it = std::find(names_.begin(), names_.end(), nm);
        if (it == names_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names_.begin());
    }

    bool has_degree2_vertex() const {
        for (std::size_t v = 0; v < vertex_count(); ++v)
            if (degree(v) == 2) return true;
        return false;
    }

    // Normalized means no vertex of degree two unless the network explicitly
    // allows them (the circle is the only such case produced by normalize).
    bool is_normalized() const { return degree2_allowed_ || !has_degree2_vertex(); }

    std::size_t other_end(std::size_t e, std::size_t w) const {
        const Edge& ed = edges_.at(e);
        if (ed.u == w) return ed.v;
        if (ed.v == w) return ed.u;
        throw InvalidArgument("vertex is not an endpoint of edge " + std::to_string(e));
    }

private:
    void validate_and_index() {
        if (names_.size() < 2) throw InvalidNetwork("a network needs at least two vertices");
        if (edges_.empty()) throw InvalidNetwork("a network needs at least one edge");
        {
            auto sorted = names_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw InvalidNetwork("duplicate vertex name");
        }
        const std::size_t nv = names_.size();
        incident_.assign(nv, {});
        total_ = 0;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const Edge& ed = edges_[e];
            if (ed.u >= nv || ed.v >= nv)
                throw InvalidNetwork("edge " + std::to_string(e) + " references an unknown vertex");
            if (ed.u == ed.v) throw InvalidNetwork("self-loop on edge " + std::to_string(e));
            if (sgn(ed.length) <= 0)
                throw InvalidNetwork("edge " + std::to_string(e) + " has non-positive length");
            incident_[ed.u].push_back(e);
            incident_[ed.v].push_back(e);
            total_ += ed.length;
            if (e == 0 || ed.length < min_len_) min_len_ = ed.length;
        }
        for (std::size_t v = 0; v < nv; ++v)
            if (incident_[v].empty()) throw InvalidNetwork("isolated vertex '" + names_[v] + "'");

        // Floyd-Warshall over exact lengths; a missing path is a disconnected network.
        std::vector<std::optional<Rational>> d(nv * nv);
        for (std::size_t v = 0; v < nv; ++v) d[v * nv + v] = Rational(0);
        for (const Edge& ed : edges_) {
            auto relax = [&](std::size_t a, std::size_t b) {
                auto& cell = d[a * nv + b];
                if (!cell || ed.length < *cell) cell = ed.length;
            };
            relax(ed.u, ed.v);
            relax(ed.v, ed.u);
        }
        for (std::size_t k = 0; k < nv; ++k)
            for (std::size_t i = 0; i < nv; ++i) {
                if (!d[i * nv + k]) continue;
                for (std::size_t j = 0; j < nv; ++j) {
                    if (!d[k * nv + j]) continue;
                    Rational via = *d[i * nv + k] + *d[k * nv + j];
                    auto& cell = d[i * nv + j];
                    if (!cell || via < *cell) cell = via;
                }
            }
        dist_.resize(nv * nv);
        for (std::size_t i = 0; i < nv * nv; ++i) {
            if (!d[i]) throw InvalidNetwork("network is not connected");
            dist_[i] = *d[i];
        }
    }

    std::vector<std::string> names_;
    std::vector<Edge> edges_;
    bool degree2_allowed_ = false;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<Rational> dist_;
    Rational total_;
    Rational min_len_;
};

// ---------------------------------------------------------------------------
// Points and sites

inline Site site_of(const Network& net, const Point& p) {
    if (p.edge >= net.edge_count()) throw InvalidPoint("edge id " + std::to_string(p.edge) + " out of range");
    if (sgn(p.alpha) < 0 || p.alpha > 1) throw InvalidPoint("alpha " + to_string(p.alpha) + " outside [0,1]");
    const Edge& ed = net.edge(p.edge);
    if (p.alpha == 1) return Site{ed.u, npos, 0};
    if (sgn(p.alpha) == 0) return Site{ed.v, npos, 0};
    return Site{npos, p.edge, (1 - p.alpha) * ed.length};
}

// Canonical point for a site: vertices are expressed on their lowest-id
// incident edge.
inline Point point_of(const Network& net, const Site& s) {
    if (s.is_vertex()) {
        std::size_t e = *std::min_element(net.incident(s.vertex).begin(), net.incident(s.vertex).end());
        return Point{e, net.edge(e).u == s.vertex ? Rational(1) : Rational(0)};
    }
    return Point{s.edge, 1 - s.t / net.edge(s.edge).length};
}

inline Point canonical(const Network& net, const Point& p) { return point_of(net, site_of(net, p)); }

// Point at offset t from the u end of edge e, with t in [0, length].
inline Point point_at(const Network& net, std::size_t e, const Rational& t) {
    if (e >= net.edge_count()) throw InvalidPoint("edge id out of range");
    const Rational& len = net.edge(e).length;
    if (sgn(t) < 0 || t > len) throw InvalidPoint("offset outside the edge");
    return canonical(net, Point{e, 1 - t / len});
}

inline Point vertex_point(const Network& net, std::size_t v) { return point_of(net, Site{v, npos, 0}); }

inline bool same_point(const Network& net, const Point& a, const Point& b) { return site_of(net, a) == site_of(net, b); }

// Distance from a site to a vertex.
inline Rational site_vertex_distance(const Network& net, const Site& s, std::size_t w) {
    if (s.is_vertex()) return net.vdist(s.vertex, w);
    const Edge& ed = net.edge(s.edge);
    Rational a = s.t + net.vdist(ed.u, w);
    Rational b = ed.length - s.t + net.vdist(ed.v, w);
    return a < b ? a : b;
}

inline Rational site_distance(const Network& net, const Site& x, const Site& y) {
    if (y.is_vertex()) return site_vertex_distance(net, x, y.vertex);
    const Edge& ed = net.edge(y.edge);
    Rational best = y.t + site_vertex_distance(net, x, ed.u);
    Rational other = ed.length - y.t + site_vertex_distance(net, x, ed.v);
    if (other < best) best = other;
    if (!x.is_vertex() && x.edge == y.edge) {
        Rational direct = abs(x.t - y.t);
        if (direct < best) best = direct;
    }
    return best;
}

inline Rational distance(const Network& net, const Point& x, const Point& y) {
    return site_distance(net, site_of(net, x), site_of(net, y));
}

// ---------------------------------------------------------------------------
// Structure

struct EdgeClasses {
    std::vector<std::size_t> ii;  // both ends of degree >= 3
    std::vector<std::size_t> il;  // one end of degree >= 3, one leaf
    std::vector<std::size_t> ll;  // both ends leaves (the segment)
    std::vector<std::size_t> other;  // touches a degree-two vertex (circle only)
};

inline EdgeClasses classify_edges(const Network& net) {
    if (!net.is_normalized())
        throw NormalizationRequired("network has a vertex of degree two; call normalize first");
    EdgeClasses c;
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        std::size_t du = net.degree(net.edge(e).u), dv = net.degree(net.edge(e).v);
        if (du == 2 || dv == 2)
            c.other.push_back(e);
        else if (du >= 3 && dv >= 3)
            c.ii.push_back(e);
        else if (du == 1 && dv == 1)
            c.ll.push_back(e);
        else
            c.il.push_back(e);
    }
    return c;
}

inline std::vector<std::size_t> interior_vertices(const Network& net) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < net.vertex_count(); ++v)
        if (net.is_interior(v)) out.push_back(v);
    return out;
}

inline std::vector<std::size_t> leaf_vertices(const Network& net) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < net.vertex_count(); ++v)
        if (net.is_leaf(v)) out.push_back(v);
    return out;
}

// Suppresses degree-two vertices by merging their two edges; networks that
// already declare degree-two vertices are returned unchanged.  A vertex whose
// suppression would create a self-loop is kept, and the result is then
// flagged degree2_allowed (a cycle ends up as two vertices joined by two
// parallel edges).  Vertex order and edge order are otherwise preserved; a
// merged edge takes the slot of the lower-numbered of the two it replaces.
inline Network normalize(const Network& net) {
    if (net.degree2_allowed()) return net;
    struct E {
        std::size_t u, v;
        Rational len;
        bool alive = true;
    };
    std::vector<E> es;
    for (const Edge& ed : net.edges()) es.push_back({ed.u, ed.v, ed.length});
    std::vector<bool> alive_v(net.vertex_count(), true);
    std::vector<std::vector<std::size_t>> inc(net.vertex_count());
    for (std::size_t e = 0; e < es.size(); ++e) {
        inc[es[e].u].push_back(e);
        inc[es[e].v].push_back(e);
    }
    bool kept_degree2 = false;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t w = 0; w < inc.size(); ++w) {
            if (!alive_v[w] || inc[w].size() != 2) continue;
            std::size_t e1 = std::min(inc[w][0], inc[w][1]);
            std::size_t e2 = std::max(inc[w][0], inc[w][1]);
            std::size_t a = es[e1].u == w ? es[e1].v : es[e1].u;
            std::size_t b = es[e2].u == w ? es[e2].v : es[e2].u;
            if (a == b) continue;  // would become a loop
            es[e1] = {a, b, es[e1].len + es[e2].len, true};
            es[e2].alive = false;
            alive_v[w] = false;
            inc[w].clear();
            std::replace(inc[b].begin(), inc[b].end(), e2, e1);
            changed = true;
        }
    }
    std::vector<std::size_t> remap(net.vertex_count(), npos);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < net.vertex_count(); ++v)
        if (alive_v[v]) {
            remap[v] = names.size();
            names.push_back(net.name(v));
            if (inc[v].size() == 2) kept_degree2 = true;
        }
    std::vector<Edge> edges;
    for (const E& e : es)
        if (e.alive) edges.push_back(Edge{remap[e.u], remap[e.v], e.len});
    return Network(std::move(names), std::move(edges), kept_degree2);
}

// ---------------------------------------------------------------------------
// Builders for the standard shapes

// Unit-free segment [0, L] with u at 0.  Offset t is the coordinate.
inline Network make_segment(const Rational& length = 1) {
    return Network({"v0", "v1"}, {Edge{0, 1, length}});
}

// Star with k rays of the given length; vertex 0 is the center and ray i
// (edge i) runs from the center to leaf i+1.
inline Network make_star(std::size_t k, const Rational& ray = 1) {
    if (k < 1) throw InvalidArgument("a star needs at least one ray");
    std::vector<std::string> names{"c"};
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < k; ++i) {
        names.push_back("l" + std::to_string(i + 1));
        edges.push_back(Edge{0, i + 1, ray});
    }
    return Network(std::move(names), std::move(edges));
}

// Circle of the given perimeter as two vertices joined by two half arcs.
// Arc position theta runs from p0 through p1 back to p0.
inline Network make_circle(const Rational& perimeter = 1) {
    Rational half = perimeter / 2;
    return Network({"p0", "p1"}, {Edge{0, 1, half}, Edge{1, 0, half}}, true);
}

}  // namespace netloc
