// SPDX-License-Identifier: MIT
#include "support.hpp"

#include <gtest/gtest.h>

using namespace netloc;

TEST(Rational, ParsesAndCanonicalizes) {
    EXPECT_EQ(parse_rational("6/4"), ratio(3, 2));
    EXPECT_EQ(parse_rational(" -2/6 "), ratio(-1, 3));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
    for (const char* bad : {"", "1/0", "a/2", "1/2/3", "1.5", "/3", "3/"}) EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(Network, RejectsInvalidInput) {
    using V = std::vector<std::string>;
    EXPECT_THROW(Network(V{"a"}, {}), InvalidNetwork);
    EXPECT_THROW(Network(V{"a", "b"}, {}), InvalidNetwork);
    EXPECT_THROW(Network(V{"a", "b"}, {Edge{0, 0, 1}}), InvalidNetwork);
    EXPECT_THROW(Network(V{"a", "b"}, {Edge{0, 1, 0}}), InvalidNetwork);
    EXPECT_THROW(Network(V{"a", "a"}, {Edge{0, 1, 1}}), InvalidNetwork);
    EXPECT_THROW(Network(V{"a", "b", "c", "d"}, {Edge{0, 1, 1}, Edge{2, 3, 1}}), InvalidNetwork);
    // Degree-two vertices load fine; they are rejected where classification needs them gone.
    EXPECT_NO_THROW(Network(V{"a", "b", "c"}, {Edge{0, 1, 1}, Edge{1, 2, 1}}));
}

TEST(Network, TotalLengthAndDegrees) {
    EXPECT_EQ(make_segment().total_length(), 1);
    EXPECT_EQ(make_star(5).total_length(), 5);
    Network f = fixtures::eight_edges();
    EXPECT_EQ(f.total_length(), 15);
    Network s6 = make_star(6);
    EXPECT_EQ(s6.degree(0), 6u);
    EXPECT_TRUE(s6.is_leaf(3));
    Network c = make_circle();
    EXPECT_EQ(c.total_length(), 1);
    EXPECT_EQ(c.degree(0), 2u);
    EXPECT_EQ(c.degree(1), 2u);
}

TEST(Network, PointsAreCanonical) {
    Network s = make_star(3);
    // alpha = 1 is the edge's u end, which is the center for every ray.
    EXPECT_TRUE(same_point(s, Point{0, 1}, Point{2, 1}));
    EXPECT_FALSE(same_point(s, Point{0, 0}, Point{1, 0}));
    EXPECT_THROW(site_of(s, Point{0, ratio(3, 2)}), InvalidPoint);
    EXPECT_THROW(site_of(s, Point{7, ratio(1, 2)}), InvalidPoint);
    Point p = point_at(s, 1, ratio(1, 4));
    EXPECT_EQ(p.alpha, ratio(3, 4));
}

TEST(Network, DistanceMatchesAugmentedFloydWarshall) {
    Network net = fixtures::random_network(42, 6, 3);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 100; ++k) {
        Point x = fixtures::random_point(rng, net), y = fixtures::random_point(rng, net);
        ASSERT_EQ(distance(net, x, y), oracle::distance(net, x, y));
    }
    Point z = fixtures::random_point(rng, net);
    EXPECT_EQ(distance(net, z, z), 0);
}

TEST(Network, EightEdgesPendantEdgeIsEquidistant) {
    Network f = fixtures::eight_edges();
    Point u = vertex_point(f, 0), v = vertex_point(f, 1);
    for (int k = 0; k <= 6; ++k) {
        Point y{7, ratio(k, 6)};
        EXPECT_EQ(distance(f, u, y), distance(f, v, y));
    }
}

TEST(Network, Classification) {
    EdgeClasses seg = classify_edges(make_segment());
    EXPECT_EQ(seg.ll.size(), 1u);
    EXPECT_TRUE(seg.il.empty() && seg.ii.empty());
    EdgeClasses star = classify_edges(make_star(4));
    EXPECT_EQ(star.il.size(), 4u);
    EdgeClasses f = classify_edges(fixtures::eight_edges());
    EXPECT_EQ(f.ii, (std::vector<std::size_t>{3, 4}));
    EXPECT_EQ(f.il, (std::vector<std::size_t>{0, 1, 2, 5, 6, 7}));
    EXPECT_THROW(classify_edges(Network({"a", "b", "c"}, {Edge{0, 1, 1}, Edge{1, 2, 1}})), NormalizationRequired);
    EXPECT_EQ(classify_edges(make_circle()).other.size(), 2u);
}

TEST(Normalize, MergesPaths) {
    Network path({"a", "b", "c"}, {Edge{0, 1, 1}, Edge{1, 2, 2}});
    Network n = normalize(path);
    ASSERT_EQ(n.edge_count(), 1u);
    EXPECT_EQ(n.edge(0).length, 3);
    EXPECT_EQ(n.vertex_count(), 2u);
    EXPECT_FALSE(n.degree2_allowed());
}

TEST(Normalize, IdentityWithoutDegreeTwo) {
    Network f = fixtures::eight_edges();
    Network n = normalize(f);
    ASSERT_EQ(n.edge_count(), f.edge_count());
    for (std::size_t e = 0; e < f.edge_count(); ++e) {
        EXPECT_EQ(n.edge(e).u, f.edge(e).u);
        EXPECT_EQ(n.edge(e).v, f.edge(e).v);
        EXPECT_EQ(n.edge(e).length, f.edge(e).length);
    }
}

TEST(Normalize, TriangleBecomesTwoParallelEdges) {
    Network tri({"a", "b", "c"}, {Edge{0, 1, 1}, Edge{1, 2, 1}, Edge{2, 0, 1}});
    Network n = normalize(tri);
    EXPECT_EQ(n.vertex_count(), 2u);
    EXPECT_EQ(n.edge_count(), 2u);
    EXPECT_EQ(n.total_length(), 3);
    EXPECT_TRUE(n.degree2_allowed());
    EXPECT_EQ(normalize(make_circle()).edge_count(), 2u);  // flagged input is left alone
}
