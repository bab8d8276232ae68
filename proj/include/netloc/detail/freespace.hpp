// SPDX-License-Identifier: MIT
// Free space of a profile and the exact evaluation of a single deviator.
//
// Removing the occupied locations from the network leaves open segments.
// Segments that meet at an unoccupied vertex belong to the same component.
// A newcomer placed in a component only ever captures consumers inside it:
// any path leaving the component passes through a location, which is
// strictly closer to everything beyond.  So each component can be studied on
// its own, with the occupied locations on its boundary acting as ports.
//
// Inside a segment of length l with ends P and Q the residual field is
// min(hP + tau, hQ + l - tau).  The newcomer's distance is a minimum of a few
// lines with slope +1 or -1 in tau.  When the newcomer slides along a segment
// of its own component (coordinate u), every line intercept is affine in u.
// Between consecutive "events" (values of u where two breakpoints collide or
// two parallel lines meet) the captured measure is linear in u and the
// consumer-cost reduction is quadratic, which is what makes an exact search
// possible.
#pragma once

#include "netloc/payoff.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace netloc::detail {

struct Aff {
    Rational c0, cu;
    Rational at(const Rational& u) const { return c0 + cu * u; }
};

struct Line {
    Aff c;
    int sigma;  // value(tau) = c + sigma * tau
};

struct SubProblem {
    Aff lo, hi;
    std::vector<Line> g;  // newcomer distance branches
    std::vector<Line> d;  // residual field branches
    std::vector<std::size_t> d_owners;
};

struct Capture {
    Rational measure = 0;  // consumers taken, ties already shared
    Rational gain = 0;     // reduction of the consumer cost
};

inline Capture evaluate(const SubProblem& p, const Rational& u) {
    Capture out;
    if (p.g.empty()) return out;
    Rational lo = p.lo.at(u), hi = p.hi.at(u);
    if (hi <= lo) return out;
    std::vector<Rational> gv, dv;
    for (const Line& l : p.g) gv.push_back(l.c.at(u));
    for (const Line& l : p.d) dv.push_back(l.c.at(u));
    std::vector<Rational> bps{lo, hi};
    auto add_cross = [&](const Rational& c1, int s1, const Rational& c2, int s2) {
        if (s1 == s2) return;
        Rational tau = s1 > 0 ? (c2 - c1) / 2 : (c1 - c2) / 2;
        if (tau > lo && tau < hi) bps.push_back(tau);
    };
    const std::size_t ng = gv.size(), nd = dv.size();
    for (std::size_t i = 0; i < ng + nd; ++i)
        for (std::size_t j = i + 1; j < ng + nd; ++j) {
            const Rational& ci = i < ng ? gv[i] : dv[i - ng];
            const Rational& cj = j < ng ? gv[j] : dv[j - ng];
            int si = i < ng ? p.g[i].sigma : p.d[i - ng].sigma;
            int sj = j < ng ? p.g[j].sigma : p.d[j - ng].sigma;
            add_cross(ci, si, cj, sj);
        }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    auto gmin = [&](const Rational& t) {
        Rational best = gv[0] + p.g[0].sigma * t;
        for (std::size_t i = 1; i < ng; ++i) {
            Rational v = gv[i] + p.g[i].sigma * t;
            if (v < best) best = v;
        }
        return best;
    };
    auto dmin = [&](const Rational& t, std::size_t* arg) {
        Rational best = dv[0] + p.d[0].sigma * t;
        std::size_t a = 0;
        for (std::size_t i = 1; i < nd; ++i) {
            Rational v = dv[i] + p.d[i].sigma * t;
            if (v < best) {
                best = v;
                a = i;
            }
        }
        if (arg) *arg = a;
        return best;
    };
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const Rational& a = bps[k];
        const Rational& b = bps[k + 1];
        Rational mid = (a + b) / 2;
        std::size_t owner = 0;
        Rational gm = gmin(mid), dm = dmin(mid, &owner);
        if (gm < dm) {
            out.measure += b - a;
            out.gain += ((dmin(a, nullptr) - gmin(a)) + (dmin(b, nullptr) - gmin(b))) * (b - a) / 2;
        } else if (gm == dm) {
            out.measure += (b - a) / (p.d_owners[owner] + 1);
        }
    }
    return out;
}

// Values of u in (0, len) at which the combinatorial structure of a
// subproblem can change.  Over-generation is harmless.
inline void collect_events(const SubProblem& p, const Rational& len, std::vector<Rational>& out) {
    std::vector<Aff> bps{p.lo, p.hi};
    std::vector<Line> all = p.g;
    all.insert(all.end(), p.d.begin(), p.d.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const Line& a = all[i];
            const Line& b = all[j];
            if (a.sigma == b.sigma) {
                // Parallel lines meet where their intercepts agree.
                Rational dc = a.c.cu - b.c.cu;
                if (sgn(dc) != 0) {
                    Rational u = (b.c.c0 - a.c.c0) / dc;
                    if (sgn(u) > 0 && u < len) out.push_back(u);
                }
                continue;
            }
            const Line& plus = a.sigma > 0 ? a : b;
            const Line& minus = a.sigma > 0 ? b : a;
            bps.push_back(Aff{(minus.c.c0 - plus.c.c0) / 2, (minus.c.cu - plus.c.cu) / 2});
        }
    for (std::size_t i = 0; i < bps.size(); ++i)
        for (std::size_t j = i + 1; j < bps.size(); ++j) {
            Rational dc = bps[i].cu - bps[j].cu;
            if (sgn(dc) == 0) continue;
            Rational u = (bps[j].c0 - bps[i].c0) / dc;
            if (sgn(u) > 0 && u < len) out.push_back(u);
        }
}

struct SegEnd {
    bool port = false;
    std::size_t vertex = npos;  // unoccupied vertex, when !port
    std::size_t site = npos;    // occupied site, when port
    Rational height;            // residual field at this end
    std::size_t owners = 1;     // number of sites achieving that height
};

struct Segment {
    std::size_t edge = 0;
    Rational lo, hi;  // offsets on the edge
    SegEnd end[2];    // end[0] at lo, end[1] at hi
    Rational length() const { return hi - lo; }
};

struct Component {
    std::vector<std::size_t> segs;
    std::vector<std::size_t> verts;  // unoccupied vertices inside
    std::map<std::size_t, std::size_t> local;
    std::vector<std::optional<Rational>> dk;  // within-component distances between verts

    const std::optional<Rational>& dist(std::size_t a, std::size_t b) const {
        return dk[local.at(a) * verts.size() + local.at(b)];
    }

    // Key identifying the component independently of which profile produced it.
    std::vector<std::tuple<std::size_t, Rational, Rational, bool, bool>> key(const std::vector<Segment>& all) const {
        std::vector<std::tuple<std::size_t, Rational, Rational, bool, bool>> k;
        for (std::size_t s : segs) k.emplace_back(all[s].edge, all[s].lo, all[s].hi, all[s].end[0].port, all[s].end[1].port);
        std::sort(k.begin(), k.end());
        return k;
    }
};

struct FreeSpace {
    std::vector<Segment> segs;
    std::vector<Component> comps;
};

inline FreeSpace build_free_space(const Network& net, const std::vector<Site>& sites, const Field& f) {
    FreeSpace fs;
    std::vector<std::size_t> vsite(net.vertex_count(), npos);
    for (std::size_t s = 0; s < sites.size(); ++s)
        if (sites[s].is_vertex()) vsite[sites[s].vertex] = s;
    auto vertex_end = [&](std::size_t w) {
        SegEnd end;
        if (vsite[w] != npos) {
            end.port = true;
            end.site = vsite[w];
            end.height = 0;
        } else {
            end.vertex = w;
            end.height = f.vheight[w];
            end.owners = f.vowners[w].size();
        }
        return end;
    };
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        std::vector<std::pair<Rational, SegEnd>> stops;
        stops.emplace_back(Rational(0), vertex_end(ed.u));
        for (std::size_t s : f.on_edge[e]) {
            SegEnd end;
            end.port = true;
            end.site = s;
            end.height = 0;
            stops.emplace_back(sites[s].t, end);
        }
        stops.emplace_back(ed.length, vertex_end(ed.v));
        for (std::size_t k = 0; k + 1 < stops.size(); ++k) {
            Segment sg;
            sg.edge = e;
            sg.lo = stops[k].first;
            sg.hi = stops[k + 1].first;
            sg.end[0] = stops[k].second;
            sg.end[1] = stops[k + 1].second;
            fs.segs.push_back(std::move(sg));
        }
    }
    // Union-find over unoccupied vertices.
    std::vector<std::size_t> parent(net.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Segment& sg : fs.segs)
        if (!sg.end[0].port && !sg.end[1].port) parent[find(sg.end[0].vertex)] = find(sg.end[1].vertex);
    std::map<std::size_t, std::size_t> comp_of_root;
    for (std::size_t i = 0; i < fs.segs.size(); ++i) {
        const Segment& sg = fs.segs[i];
        std::size_t ci;
        std::size_t w = !sg.end[0].port ? sg.end[0].vertex : (!sg.end[1].port ? sg.end[1].vertex : npos);
        if (w == npos) {
            ci = fs.comps.size();
            fs.comps.emplace_back();
        } else {
            auto [it, fresh] = comp_of_root.emplace(find(w), fs.comps.size());
            if (fresh) fs.comps.emplace_back();
            ci = it->second;
        }
        fs.comps[ci].segs.push_back(i);
        for (const SegEnd& end : sg.end)
            if (!end.port && !fs.comps[ci].local.count(end.vertex)) {
                fs.comps[ci].local[end.vertex] = fs.comps[ci].verts.size();
                fs.comps[ci].verts.push_back(end.vertex);
            }
    }
    for (Component& c : fs.comps) {
        const std::size_t m = c.verts.size();
        c.dk.assign(m * m, std::nullopt);
        for (std::size_t i = 0; i < m; ++i) c.dk[i * m + i] = Rational(0);
        for (std::size_t s : c.segs) {
            const Segment& sg = fs.segs[s];
            if (sg.end[0].port || sg.end[1].port) continue;
            std::size_t a = c.local[sg.end[0].vertex], b = c.local[sg.end[1].vertex];
            Rational len = sg.length();
            for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
                if (!c.dk[x * m + y] || len < *c.dk[x * m + y]) c.dk[x * m + y] = len;
        }
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t i = 0; i < m; ++i) {
                if (!c.dk[i * m + k]) continue;
                for (std::size_t j = 0; j < m; ++j) {
                    if (!c.dk[k * m + j]) continue;
                    Rational via = *c.dk[i * m + k] + *c.dk[k * m + j];
                    if (!c.dk[i * m + j] || via < *c.dk[i * m + j]) c.dk[i * m + j] = via;
                }
            }
    }
    return fs;
}

// Newcomer position inside a component: an unoccupied vertex, or offset u
// from the lo end of one of its segments.
struct Spot {
    std::size_t vertex = npos;
    std::size_t seg = npos;
};

// Subproblems describing the newcomer's capture in component c.  Intercepts
// are affine in the newcomer's offset u when the spot is a segment and
// constant when it is a vertex.
inline std::vector<SubProblem> build_subproblems(const FreeSpace& fs, const Component& c, const Spot& spot) {
    // Branches of the newcomer's distance to each unoccupied vertex.
    std::map<std::size_t, std::vector<Aff>> dy;
    for (std::size_t x : c.verts) {
        std::vector<Aff> br;
        if (spot.vertex != npos) {
            if (auto d = c.dist(spot.vertex, x)) br.push_back(Aff{*d, 0});
        } else {
            const Segment& s0 = fs.segs[spot.seg];
            if (!s0.end[0].port)
                if (auto d = c.dist(s0.end[0].vertex, x)) br.push_back(Aff{*d, 1});
            if (!s0.end[1].port)
                if (auto d = c.dist(s0.end[1].vertex, x)) br.push_back(Aff{s0.length() + *d, -1});
        }
        dy[x] = std::move(br);
    }
    std::vector<SubProblem> out;
    for (std::size_t si : c.segs) {
        const Segment& sg = fs.segs[si];
        Rational len = sg.length();
        std::vector<Line> dl{Line{Aff{sg.end[0].height, 0}, +1}, Line{Aff{sg.end[1].height + len, 0}, -1}};
        std::vector<std::size_t> downers{sg.end[0].owners, sg.end[1].owners};
        if (spot.seg == si) {
            SubProblem left{Aff{0, 0}, Aff{0, 1}, {Line{Aff{0, 1}, -1}}, dl, downers};
            SubProblem right{Aff{0, 1}, Aff{len, 0}, {Line{Aff{0, -1}, +1}}, dl, downers};
            if (!sg.end[0].port && !sg.end[1].port) {
                Rational around = *c.dist(sg.end[0].vertex, sg.end[1].vertex);
                left.g.push_back(Line{Aff{len + around, -1}, +1});
                right.g.push_back(Line{Aff{len + around, 1}, -1});
            }
            out.push_back(std::move(left));
            out.push_back(std::move(right));
            continue;
        }
        SubProblem p{Aff{0, 0}, Aff{len, 0}, {}, dl, downers};
        if (!sg.end[0].port)
            for (const Aff& b : dy[sg.end[0].vertex]) p.g.push_back(Line{b, +1});
        if (!sg.end[1].port)
            for (const Aff& b : dy[sg.end[1].vertex]) p.g.push_back(Line{Aff{b.c0 + len, b.cu}, -1});
        if (!p.g.empty()) out.push_back(std::move(p));
    }
    return out;
}

inline Capture evaluate_all(const std::vector<SubProblem>& ps, const Rational& u) {
    Capture total;
    for (const SubProblem& p : ps) {
        Capture c = evaluate(p, u);
        total.measure += c.measure;
        total.gain += c.gain;
    }
    return total;
}

// Best newcomer payoff over one component.
struct CompSup {
    Rational value = -1;
    bool attained = false;
    Point witness;  // attaining point, or the limit point when not attained
    // For an unattained supremum: the open stretch of edge approaching the
    // limit, [from, to] in offsets with `to` the limit, and the slope of the
    // payoff per unit of offset moved towards the limit.
    std::size_t edge = npos;
    Rational from, to, rate;
};

inline void consider(CompSup& best, const Rational& v, bool attained, const Point& at) {
    if (v > best.value || (v == best.value && attained && !best.attained)) {
        best.value = v;
        best.attained = attained;
        best.witness = at;
        best.edge = npos;
    }
}

inline CompSup component_sup(const Network& net, const FreeSpace& fs, const Component& c) {
    CompSup best;
    for (std::size_t w : c.verts) {
        auto ps = build_subproblems(fs, c, Spot{w, npos});
        consider(best, evaluate_all(ps, 0).measure, true, vertex_point(net, w));
    }
    for (std::size_t si : c.segs) {
        const Segment& sg = fs.segs[si];
        Rational len = sg.length();
        auto ps = build_subproblems(fs, c, Spot{npos, si});
        std::vector<Rational> ev;
        for (const SubProblem& p : ps) collect_events(p, len, ev);
        ev.push_back(0);
        ev.push_back(len);
        std::sort(ev.begin(), ev.end());
        ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
        auto at = [&](const Rational& u) { return point_at(net, sg.edge, sg.lo + u); };
        for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
            const Rational& a = ev[k];
            const Rational& b = ev[k + 1];
            if (k > 0) consider(best, evaluate_all(ps, a).measure, true, at(a));
            Rational h = (b - a) / 4;
            Rational v1 = evaluate_all(ps, a + h).measure;
            Rational v2 = evaluate_all(ps, a + 2 * h).measure;
            Rational v3 = evaluate_all(ps, a + 3 * h).measure;
            if (v2 - v1 != v3 - v2) throw InternalConsistency("newcomer payoff not linear between events");
            Rational slope = (v2 - v1) / h;
            if (sgn(slope) == 0) {
                consider(best, v2, true, at(a + 2 * h));
                continue;
            }
            // Open stretch: the supremum sits at one end and is approached only.
            bool up = sgn(slope) > 0;
            Rational lim = up ? Rational(v3 + slope * h) : Rational(v1 - slope * h);
            if (lim > best.value) {
                best.value = lim;
                best.attained = false;
                best.witness = at(up ? b : a);
                best.edge = sg.edge;
                best.from = sg.lo + a + 2 * h;
                best.to = sg.lo + (up ? b : a);
                best.rate = abs(slope);
            }
        }
    }
    return best;
}

// Largest reduction of consumer cost from adding one location in component c.
struct CompGain {
    Rational gain = -1;
    Point at;
};

inline CompGain component_best_gain(const Network& net, const FreeSpace& fs, const Component& c) {
    CompGain best;
    auto consider_gain = [&](const Rational& g, const Point& p) {
        if (g > best.gain) {
            best.gain = g;
            best.at = p;
        }
    };
    for (std::size_t w : c.verts) {
        auto ps = build_subproblems(fs, c, Spot{w, npos});
        consider_gain(evaluate_all(ps, 0).gain, vertex_point(net, w));
    }
    for (std::size_t si : c.segs) {
        const Segment& sg = fs.segs[si];
        Rational len = sg.length();
        auto ps = build_subproblems(fs, c, Spot{npos, si});
        std::vector<Rational> ev;
        for (const SubProblem& p : ps) collect_events(p, len, ev);
        ev.push_back(0);
        ev.push_back(len);
        std::sort(ev.begin(), ev.end());
        ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
        auto at = [&](const Rational& u) { return point_at(net, sg.edge, sg.lo + u); };
        for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
            const Rational& a = ev[k];
            const Rational& b = ev[k + 1];
            if (k > 0) consider_gain(evaluate_all(ps, a).gain, at(a));
            // Quadratic between events: fit on three points, confirm on a fourth.
            Rational h = (b - a) / 4;
            Rational g1 = evaluate_all(ps, a + h).gain;
            Rational g2 = evaluate_all(ps, a + 2 * h).gain;
            Rational g3 = evaluate_all(ps, a + 3 * h).gain;
            Rational curv = (g1 - 2 * g2 + g3) / (2 * h * h);
            Rational slope_mid = (g3 - g1) / (2 * h);
            Rational probe = a + h / 2;
            Rational dx = probe - (a + 2 * h);
            if (g2 + slope_mid * dx + curv * dx * dx != evaluate_all(ps, probe).gain)
                throw InternalConsistency("cost reduction not quadratic between events");
            consider_gain(g2, at(a + 2 * h));
            if (sgn(curv) < 0) {
                Rational top = a + 2 * h - slope_mid / (2 * curv);
                if (top > a && top < b) consider_gain(evaluate_all(ps, top).gain, at(top));
            }
        }
    }
    return best;
}

}  // namespace netloc::detail
