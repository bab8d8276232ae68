// SPDX-License-Identifier: MIT
#include "support.hpp"

#include <gtest/gtest.h>

using namespace netloc;

namespace {
Rational q(std::size_t n) { return Rational(static_cast<unsigned long>(n)); }
}  // namespace

TEST(Phi, Values) {
    for (std::size_t n : {1, 5, 40}) EXPECT_EQ(phi(make_segment(), n), 2);
    for (std::size_t k : {3, 6})
        for (std::size_t n : {4, 30}) EXPECT_EQ(phi(make_star(k), n), (4 * q(n) + 2 * q(k)) / (2 * q(n)));
    Network f = fixtures::eight_edges();
    Rational prev = phi(f, 1);
    for (std::size_t n = 2; n < 200; n *= 2) {
        Rational cur = phi(f, n);
        EXPECT_LT(cur, prev);
        EXPECT_GT(cur, 2);
        prev = cur;
    }
    EXPECT_THROW(phi(f, 0), InvalidArgument);
}

TEST(Bounds, Values) {
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(opt_lower_bound(make_segment(), n), 1 / (4 * q(n)));
    EXPECT_EQ(opt_lower_bound(make_star(3), 9), ratio(3, 14));
    EXPECT_EQ(eq_cost_upper_bound(make_segment(), 8), ratio(1, 16));
    Network c = make_circle(2);
    EXPECT_EQ(eq_cost_upper_bound(c, 4), ratio(1, 2));
}

TEST(Majorization, Basics) {
    std::vector<Rational> half{ratio(1, 2), ratio(1, 2)}, one{1, 0}, one_short{1};
    EXPECT_TRUE(is_majorized(half, one));
    EXPECT_FALSE(is_majorized(one, half));
    EXPECT_TRUE(is_majorized(half, half));
    EXPECT_TRUE(is_majorized(half, one_short));  // zero padding
    std::vector<Rational> other{1, 1};
    EXPECT_THROW(is_majorized(half, other), InvalidArgument);
}

TEST(Optimum, SegmentFour) {
    OptimumResult r = empirical_optimum(make_segment(), 4, SearchBudget{});
    EXPECT_EQ(r.cost, ratio(1, 16));
    std::vector<Rational> xs;
    for (const Point& p : r.profile) xs.push_back(site_of(make_segment(), p).t);
    std::sort(xs.begin(), xs.end());
    EXPECT_EQ(xs, (std::vector<Rational>{ratio(1, 8), ratio(3, 8), ratio(5, 8), ratio(7, 8)}));
}

TEST(Optimum, CircleThree) {
    Network c = make_circle();
    OptimumResult r = empirical_optimum(c, 3, SearchBudget{});
    EXPECT_EQ(r.cost, ratio(1, 12));
}

TEST(Optimum, DeterministicForSeed) {
    Network net = fixtures::random_network(77, 5, 1);
    SearchBudget b{5, 4, 10};
    OptimumResult a = empirical_optimum(net, 4, b), c = empirical_optimum(net, 4, b);
    EXPECT_EQ(a.cost, c.cost);
    ASSERT_EQ(a.profile.size(), c.profile.size());
    for (std::size_t i = 0; i < a.profile.size(); ++i) EXPECT_TRUE(same_point(net, a.profile[i], c.profile[i]));
}

TEST(Optimum, NoWorseThanGridSearch) {
    // Two edges, up to three players: exhaustive search over the 1/60 grid.
    Network net({"a", "b", "c", "d"}, {Edge{0, 1, 1}, Edge{0, 2, ratio(3, 2)}, Edge{0, 3, 2}});
    std::vector<Point> grid;
    for (std::size_t e = 0; e < net.edge_count(); ++e)
        for (long k = 0; k <= 60; k += 3) grid.push_back(Point{e, ratio(k, 60)});
    for (std::size_t n : {1, 2}) {
        Rational best = -1;
        std::vector<std::size_t> idx(n, 0);
        for (;;) {
            Profile p;
            for (std::size_t i : idx) p.push_back(grid[i]);
            Rational c = social_cost(net, p);
            if (best < 0 || c < best) best = c;
            std::size_t j = 0;
            while (j < n && ++idx[j] == grid.size()) idx[j++] = 0;
            if (j == n) break;
        }
        EXPECT_LE(empirical_optimum(net, n, SearchBudget{}).cost, best) << n;
        EXPECT_GE(empirical_optimum(net, n, SearchBudget{}).cost, opt_lower_bound(net, n)) << n;
    }
}

TEST(Report, SegmentPriceOfAnarchy) {
    Network seg = make_segment();
    for (std::size_t n : {6, 8}) {
        EfficiencyReport r = efficiency_report(seg, n, SearchBudget{});
        EXPECT_EQ(r.poa_estimate, 2) << n;
        EXPECT_EQ(r.empirical_opt_cost, 1 / (4 * q(n)));
    }
    for (std::size_t n : {4, 5, 6}) EXPECT_EQ(efficiency_report(seg, n, SearchBudget{}).pos_estimate, q(n) / (q(n) - 2)) << n;
    EfficiencyReport r5 = efficiency_report(seg, 5, SearchBudget{});
    EXPECT_EQ(r5.poa_estimate, ratio(5, 3));
    EXPECT_FALSE(r5.poa_upper.has_value());
    EXPECT_THROW(efficiency_report(seg, 3, SearchBudget{}), BelowThreshold);
}

TEST(Report, CirclePriceOfStabilityIsOne) {
    Network c = make_circle();
    for (std::size_t n = 2; n <= 5; ++n) EXPECT_EQ(efficiency_report(c, n, SearchBudget{}).pos_estimate, 1) << n;
}

TEST(Report, AboveThresholdHasPhiBracket) {
    Network s = make_star(3);
    EfficiencyReport r = efficiency_report(s, 25, SearchBudget{2, 2, 10});
    ASSERT_TRUE(r.poa_upper.has_value());
    EXPECT_EQ(*r.poa_upper, phi(s, 25));
    EXPECT_LE(r.worst_eq_cost / r.opt_lower_bound, *r.poa_upper);
    EXPECT_GE(r.empirical_opt_cost, r.opt_lower_bound);
    EXPECT_GE(r.equilibria_verified, 1u);
}

TEST(Report, StarTwentyOneExceedsTwo) {
    EfficiencyReport r = efficiency_report(make_star(3), 21, SearchBudget{7, 8, 40});
    EXPECT_GE(r.poa_estimate, ratio(585, 287));
    EXPECT_EQ(r.seed, 7u);
}
