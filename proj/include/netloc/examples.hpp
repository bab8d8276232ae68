// SPDX-License-Identifier: MIT
// Closed-form profiles on the circle, the segment and the star.
#pragma once

#include "netloc/network.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace netloc {

// ---------------------------------------------------------------- circle

// Point at arc position theta in [0, L] on a circle built by make_circle.
inline Point circle_point(const Network& circle, Rational theta) {
    const Rational perimeter = circle.total_length();
    while (theta >= perimeter) theta -= perimeter;
    while (sgn(theta) < 0) theta += perimeter;
    const Edge& first = circle.edge(0);
    if (theta <= first.length) return point_at(circle, 0, first.u == 0 ? theta : first.length - theta);
    const Edge& second = circle.edge(1);
    Rational along = theta - first.length;  // from p1 towards p0
    return point_at(circle, 1, second.u == 1 ? along : second.length - along);
}

enum class CircleKind { Tilde, Hat, Breve };

// tilde: n equally spaced players (the optimum).  hat (n even): n/2 pairs
// equally spaced.  breve (n odd): (n-1)/2 pairs and one single, all
// (n+1)/2 locations equally spaced.
inline Profile circle_profile(const Network& circle, CircleKind kind, std::size_t n) {
    if (n < 1) throw InvalidArgument("need at least one player");
    const Rational L = circle.total_length();
    Profile out;
    switch (kind) {
        case CircleKind::Tilde:
            for (std::size_t i = 1; i <= n; ++i) out.push_back(circle_point(circle, L * ratio(i, n)));
            break;
        case CircleKind::Hat:
            if (n % 2) throw InvalidArgument("hat profile needs an even number of players");
            for (std::size_t i = 1; i <= n / 2; ++i)
                for (int k = 0; k < 2; ++k) out.push_back(circle_point(circle, L * ratio(2 * i, n)));
            break;
        case CircleKind::Breve:
            if (n % 2 == 0) throw InvalidArgument("breve profile needs an odd number of players");
            for (std::size_t i = 1; i <= n / 2; ++i)
                for (int k = 0; k < 2; ++k) out.push_back(circle_point(circle, L * ratio(2 * i, n + 1)));
            out.push_back(circle_point(circle, L));
            break;
    }
    return out;
}

// ---------------------------------------------------------------- segment

enum class SegmentKind { Opt, Tilde, Hat, HatEll };

// Segment profiles on make_segment() (unit length, coordinate = offset).
//   opt     players at (2i-1)/(2n)
//   tilde   pairs next to both leaves, singles evenly spaced between (n >= 4)
//   hat     n/2 pairs at (2i-1)/n (n even)
//   hat_ell n odd >= 5: pairs and one single on the grid (2i-1)/(n+1), the
//           single sitting at position ell+1 from the left, 1 <= ell <= (n-3)/2
inline Profile segment_profile(SegmentKind kind, std::size_t n, std::optional<std::size_t> ell = std::nullopt) {
    Network seg = make_segment();
    auto at = [&](const Rational& x) { return point_at(seg, 0, x); };
    Profile out;
    switch (kind) {
        case SegmentKind::Opt:
            if (n < 1) throw InvalidArgument("need at least one player");
            for (std::size_t i = 1; i <= n; ++i) out.push_back(at(ratio(2 * i - 1, 2 * n)));
            break;
        case SegmentKind::Tilde: {
            if (n < 4) throw InvalidArgument("tilde profile needs n >= 4");
            const unsigned long d = 2 * n - 4;
            out.push_back(at(ratio(1, d)));
            out.push_back(at(ratio(1, d)));
            for (std::size_t i = 3; i <= n - 2; ++i) out.push_back(at(ratio(2 * i - 3, d)));
            out.push_back(at(ratio(d - 1, d)));
            out.push_back(at(ratio(d - 1, d)));
            break;
        }
        case SegmentKind::Hat:
            if (n < 2 || n % 2) throw InvalidArgument("hat profile needs an even n >= 2");
            for (std::size_t i = 1; i <= n / 2; ++i)
                for (int k = 0; k < 2; ++k) out.push_back(at(ratio(2 * i - 1, n)));
            break;
        case SegmentKind::HatEll: {
            if (n < 5 || n % 2 == 0) throw InvalidArgument("hat_ell profile needs an odd n >= 5");
            std::size_t top = (n - 3) / 2;
            std::size_t l = ell.value_or(std::min<std::size_t>(2, top));
            if (l < 1 || l > top) throw InvalidArgument("ell must lie in 1..(n-3)/2");
            const unsigned long d = n + 1;
            for (std::size_t i = 1; i <= l; ++i)
                for (int k = 0; k < 2; ++k) out.push_back(at(ratio(2 * i - 1, d)));
            out.push_back(at(ratio(2 * l + 1, d)));
            for (std::size_t i = l + 1; i <= (n - 1) / 2; ++i)
                for (int k = 0; k < 2; ++k) out.push_back(at(ratio(2 * i + 1, d)));
            break;
        }
    }
    return out;
}

// Segment profile with pairs at xi and 1 - xi, singles at 3*xi and
// 1 - 3*xi, and n - 5 free gaps eta between the singles; xi is fixed by the
// total length, 6*xi + sum(eta) = 1.
inline Profile segment_eta_profile(const std::vector<Rational>& eta, Rational* xi_out = nullptr) {
    Rational sum = 0;
    for (const Rational& g : eta) {
        if (sgn(g) <= 0) throw InvalidArgument("gaps must be positive");
        sum += g;
    }
    Rational xi = (1 - sum) / 6;
    if (sgn(xi) <= 0) throw InvalidArgument("gaps leave no room for the end pattern");
    if (xi_out) *xi_out = xi;
    Network seg = make_segment();
    Profile out{point_at(seg, 0, xi), point_at(seg, 0, xi)};
    Rational x = 3 * xi;
    out.push_back(point_at(seg, 0, x));
    for (const Rational& g : eta) {
        x += g;
        out.push_back(point_at(seg, 0, x));
    }
    out.push_back(point_at(seg, 0, 1 - xi));
    out.push_back(point_at(seg, 0, 1 - xi));
    return out;
}

// ---------------------------------------------------------------- star

// Point at distance r from the center on ray `ray` of make_star(k).
inline Point star_point(const Network& star, std::size_t ray, const Rational& r) {
    if (sgn(r) == 0) return vertex_point(star, 0);
    return point_at(star, ray, r);
}

struct NoEquilibrium {
    std::string reason;
};

struct StarEquilibrium {
    Profile profile;
    std::optional<Rational> xi;  // set for the xi family
    std::optional<std::pair<Rational, Rational>> xi_range;
};

// Admissible unit interval for the n >= 3k+1 family.  With n = m*k + r the
// center holds r players and every ray m players laid out, from the center:
// gap y, singles 2*xi apart, a pair, then xi to the leaf, y = 1 - (2m-3)*xi.
// When k divides n the center needs k players, so the layout uses m-1 per ray
// and the interval shrinks to the single point xi = 1/(2m-3).
inline std::pair<std::size_t, std::size_t> star_split(std::size_t k, std::size_t n) {
    std::size_t m = n / k, r = n % k;
    if (r == 0) {
        m -= 1;
        r = k;
    }
    return {m, r};
}

inline std::pair<Rational, Rational> star_xi_interval(std::size_t k, std::size_t n) {
    if (k < 3 || n < 3 * k + 1) throw InvalidArgument("the xi family needs k >= 3 and n >= 3k+1");
    auto [m, r] = star_split(k, n);
    Rational K(static_cast<unsigned long>(k)), M(static_cast<unsigned long>(m)), R(static_cast<unsigned long>(r));
    Rational lo = K / (2 * (R + 1) + 2 * K * M - 3 * K);
    Rational hi = K / (2 * R + 2 * K * M - 3 * K);
    Rational floor_from_y = Rational(1) / (2 * M - 1);  // keeps y <= 2*xi
    if (floor_from_y > lo) lo = floor_from_y;
    // The single nearest the center must not gain by joining it: it would
    // hand its own stretch of ray to the center, so the center's share grows
    // to (k*y/2 + xi)/(r+1), which must not exceed y/2 + xi.
    if (k > r + 1) {
        Rational gap = K - R - 1;
        Rational floor_from_single = gap / ((2 * M - 3) * gap + 2 * R);
        if (floor_from_single > lo) lo = floor_from_single;
    }
    return {lo, hi};
}

inline Profile star_family_profile(const Network& star, std::size_t k, std::size_t n, const Rational& xi) {
    auto [m, r] = star_split(k, n);
    Rational y = 1 - Rational(static_cast<unsigned long>(2 * m - 3)) * xi;
    if (sgn(y) <= 0) throw InvalidArgument("xi too large for the ray layout");
    Profile out;
    for (std::size_t i = 0; i < r; ++i) out.push_back(vertex_point(star, 0));
    for (std::size_t ray = 0; ray < k; ++ray) {
        Rational at = y;
        for (std::size_t s = 0; s + 2 < m; ++s) {
            out.push_back(star_point(star, ray, at));
            at += 2 * xi;
        }
        out.push_back(star_point(star, ray, at));
        out.push_back(star_point(star, ray, at));
    }
    return out;
}

inline std::variant<StarEquilibrium, NoEquilibrium> star_equilibrium(std::size_t k, std::size_t n,
                                                                     std::optional<Rational> xi = std::nullopt) {
    if (k < 3) throw InvalidArgument("star needs k >= 3");
    if (n < 2) throw InvalidArgument("need at least two players");
    Network star = make_star(k);
    StarEquilibrium eq;
    if (n <= k) {
        for (std::size_t i = 0; i < n; ++i) eq.profile.push_back(vertex_point(star, 0));
        return eq;
    }
    if (n < 3 * k - 1) return NoEquilibrium{"no equilibrium for k < n < 3k-1"};
    if (n <= 3 * k) {
        for (std::size_t i = 0; i < n - 2 * k; ++i) eq.profile.push_back(vertex_point(star, 0));
        for (std::size_t ray = 0; ray < k; ++ray)
            for (int c = 0; c < 2; ++c) eq.profile.push_back(star_point(star, ray, ratio(2, 3)));
        return eq;
    }
    auto range = star_xi_interval(k, n);
    Rational pick = xi.value_or((range.first + range.second) / 2);
    eq.profile = star_family_profile(star, k, n, pick);
    eq.xi = pick;
    eq.xi_range = range;
    return eq;
}

// Profiles on S_3 (unit rays).  worst_eq is an equilibrium for every b >= 1,
// worst_eq_2 only from b = 2 on.
struct StarRemarkProfiles {
    std::size_t b = 0;
    Profile worst_eq;    // n = 3(2b+1)
    Profile good_cfg;    // n = 3(2b+1)
    Profile worst_eq_2;  // n = 6b+1
    Profile opt;         // n = 6b+1
};

inline StarRemarkProfiles star_remark_profiles(std::size_t b) {
    if (b < 1) throw InvalidArgument("b must be at least 1");
    Network star = make_star(3);
    StarRemarkProfiles p;
    p.b = b;
    const unsigned long q = 2 * b + 1;
    auto center = [&](Profile& pr, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) pr.push_back(vertex_point(star, 0));
    };
    // b pairs per ray at 2j/(2b+1), three players at the center.
    center(p.worst_eq, 3);
    for (std::size_t ray = 0; ray < 3; ++ray)
        for (std::size_t j = 1; j <= b; ++j)
            for (int c = 0; c < 2; ++c) p.worst_eq.push_back(star_point(star, ray, ratio(2 * j, q)));
    // One player at the center, 2b+1 singles on two rays, 2b on the third.
    center(p.good_cfg, 1);
    for (std::size_t ray = 0; ray < 2; ++ray)
        for (std::size_t j = 1; j <= 2 * b + 1; ++j) p.good_cfg.push_back(star_point(star, ray, ratio(2 * j, 4 * b + 3)));
    for (std::size_t j = 1; j <= 2 * b; ++j) p.good_cfg.push_back(star_point(star, 2, ratio(2 * j, 4 * b + 1)));
    // Two at the center, b pairs on two rays, and on the third ray a single
    // nearest the center followed by b-1 pairs.
    center(p.worst_eq_2, 2);
    for (std::size_t ray = 0; ray < 2; ++ray)
        for (std::size_t j = 1; j <= b; ++j)
            for (int c = 0; c < 2; ++c) p.worst_eq_2.push_back(star_point(star, ray, ratio(2 * j, q)));
    p.worst_eq_2.push_back(star_point(star, 2, ratio(2, q)));
    for (std::size_t j = 2; j <= b; ++j)
        for (int c = 0; c < 2; ++c) p.worst_eq_2.push_back(star_point(star, 2, ratio(2 * j, q)));
    // One at the center and 2b evenly spaced singles per ray.
    center(p.opt, 1);
    for (std::size_t ray = 0; ray < 3; ++ray)
        for (std::size_t j = 1; j <= 2 * b; ++j) p.opt.push_back(star_point(star, ray, ratio(2 * j, 4 * b + 1)));
    return p;
}

}  // namespace netloc
