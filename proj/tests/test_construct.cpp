// SPDX-License-Identifier: MIT
#include "support.hpp"

#include <gtest/gtest.h>

using namespace netloc;

TEST(Threshold, Values) {
    EXPECT_EQ(n_bar(make_segment()), 8);
    EXPECT_EQ(n_bar(make_star(3)), 24);
    EXPECT_EQ(n_bar(Network({"a", "b", "c"}, {Edge{0, 1, 1}, Edge{1, 2, 2}}, true)), 21);
    EXPECT_EQ(n_bar(fixtures::eight_edges()), 100);
}

TEST(PatternSize, Values) {
    Network seg = make_segment();
    EXPECT_EQ(pattern_size(seg, ratio(1, 10)), 8);
    EXPECT_EQ(pattern_size(seg, ratio(1, 12)), 9);
    Network f = fixtures::eight_edges();
    EXPECT_EQ(pattern_size(f, 1000), 4 * 8);
    EXPECT_THROW(pattern_size(seg, 0), InvalidArgument);
}

TEST(FindXi, SegmentExamples) {
    Network seg = make_segment();
    XiChoice a = find_xi(seg, 8);
    EXPECT_EQ(a.xi, ratio(1, 10));
    EXPECT_EQ(a.n_prime, 8u);
    XiChoice b = find_xi(seg, 9);
    EXPECT_EQ(b.xi, ratio(1, 12));
    EXPECT_EQ(b.n_prime, 9u);
}

TEST(FindXi, WithinRange) {
    for (const auto& [name, net] : fixtures::construction_networks()) {
        std::size_t lo = n_bar(net).get_ui();
        for (std::size_t n = lo; n <= lo + net.edge_count(); ++n) {
            XiChoice c = find_xi(net, n);
            EXPECT_GE(c.n_prime, n) << name;
            EXPECT_LE(c.n_prime, n + net.edge_count()) << name;
            EXPECT_EQ(pattern_size(net, c.xi), c.n_prime) << name;
            EXPECT_LE(c.xi, net.min_length() / 10) << name;
        }
    }
}

TEST(Build, Preconditions) {
    EXPECT_THROW(build_equilibrium(make_segment(), 7), BelowThreshold);
    EXPECT_THROW(build_equilibrium(make_circle(), 50), NormalizationRequired);
}

TEST(Build, SegmentEight) {
    Network seg = make_segment();
    ConstructionPlan plan = build_equilibrium(seg, 8);
    EXPECT_EQ(plan.xi, ratio(1, 10));
    EXPECT_EQ(plan.n_prime, 8u);
    EXPECT_TRUE(plan.removed.empty());
    ASSERT_EQ(plan.layouts.size(), 1u);
    EXPECT_EQ(plan.layouts[0].alpha, 2);
    EXPECT_EQ(plan.layouts[0].kind, EdgeClass::LL);
    EXPECT_EQ(constructed_cost(plan), ratio(1, 20));
    EXPECT_EQ(social_cost(seg, plan.profile), ratio(1, 20));
    std::vector<Rational> xs;
    for (const Point& p : plan.profile) xs.push_back(site_of(seg, p).t);
    std::sort(xs.begin(), xs.end());
    std::vector<Rational> want{ratio(1, 10), ratio(1, 10), ratio(3, 10), ratio(1, 2), ratio(7, 10), ratio(7, 10), ratio(9, 10), ratio(9, 10)};
    EXPECT_EQ(xs, want);
    EXPECT_TRUE(is_nash(seg, plan.profile).is_nash);
    EXPECT_LE(social_cost(seg, plan.profile), eq_cost_upper_bound(seg, 8));
}

TEST(Build, StretchFactorsInRange) {
    for (const auto& [name, net] : fixtures::construction_networks()) {
        std::size_t lo = n_bar(net).get_ui();
        ConstructionPlan plan = build_equilibrium(net, lo + 1);
        EXPECT_EQ(plan.profile.size(), lo + 1) << name;
        EXPECT_EQ(plan.full.size(), plan.n_prime) << name;
        EXPECT_EQ(plan.removed.size(), plan.n_prime - plan.n) << name;
        for (const EdgeLayout& lay : plan.layouts) {
            EXPECT_GE(lay.alpha, 1) << name;
            EXPECT_LE(lay.alpha, 2) << name;
        }
    }
}

TEST(Build, RemovalsTouchDistinctEdges) {
    Network f = fixtures::eight_edges();
    for (std::size_t n = 100; n <= 116; ++n) {
        ConstructionPlan plan = build_equilibrium(f, n);
        std::vector<std::size_t> edges;
        for (std::size_t r : plan.removed) {
            Site s = site_of(f, plan.full[r]);
            ASSERT_FALSE(s.is_vertex());
            edges.push_back(s.edge);
        }
        std::sort(edges.begin(), edges.end());
        EXPECT_EQ(std::adjacent_find(edges.begin(), edges.end()), edges.end()) << n;
    }
}

TEST(Build, CostMatchesAndEquilibrium) {
    for (const auto& [name, net] : fixtures::construction_networks()) {
        std::size_t lo = n_bar(net).get_ui();
        for (std::size_t n : {lo, lo + net.edge_count()}) {
            ConstructionPlan plan = build_equilibrium(net, n);
            EXPECT_EQ(constructed_cost(plan), social_cost(net, plan.full)) << name << " n=" << n;
            EXPECT_TRUE(is_nash(net, plan.profile).is_nash) << name << " n=" << n;
            EXPECT_TRUE(is_nash(net, plan.full).is_nash) << name << " n'=" << plan.n_prime;
        }
    }
}

TEST(Build, CostTrendTowardsQuarter) {
    Network seg = make_segment();
    Rational prev = 10;
    for (std::size_t n : {8, 16, 32, 64}) {
        Rational r = constructed_cost(build_equilibrium(seg, n)) * 4 * Rational(static_cast<unsigned long>(n));
        EXPECT_GT(r, 1);
        EXPECT_LT(r, prev);
        prev = r;
    }
}
