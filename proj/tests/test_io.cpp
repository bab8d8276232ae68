// SPDX-License-Identifier: MIT
#include "support.hpp"

#include "netloc/io.hpp"

#include <gtest/gtest.h>

using namespace netloc;
using netloc::io::json;

TEST(Io, NetworkRoundTrip) {
    Network f = fixtures::eight_edges();
    Network back = io::network_from_json(json::parse(io::to_json(f).dump()));
    EXPECT_EQ(back.names(), f.names());
    ASSERT_EQ(back.edge_count(), f.edge_count());
    for (std::size_t e = 0; e < f.edge_count(); ++e) EXPECT_EQ(back.edge(e).length, f.edge(e).length);
    EXPECT_EQ(io::network_from_json(io::to_json(make_circle())).degree2_allowed(), true);
}

TEST(Io, ProfileRoundTripIsCanonical) {
    Network s = make_star(3);
    std::mt19937_64 rng(3);
    Profile p = fixtures::random_profile(rng, s, 12);
    json j = io::to_json(s, p);
    Profile back = io::profile_from_json(json::parse(j.dump()));
    ASSERT_EQ(back.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_TRUE(same_point(s, back[i], p[i]));
        EXPECT_EQ(back[i].edge, canonical(s, p[i]).edge);
        EXPECT_EQ(back[i].alpha, canonical(s, p[i]).alpha);
    }
    EXPECT_EQ(io::to_json(s, back).dump(), j.dump());
}

TEST(Io, AcceptsIntegersAndVertexIndices) {
    Network n = io::network_from_json(json::parse(R"({"vertices":["a","b"],"edges":[{"u":0,"v":"b","length":3}]})"));
    EXPECT_EQ(n.total_length(), 3);
    Profile p = io::profile_from_json(json::parse(R"({"profile":[{"edge":0,"alpha":1}]})"));
    EXPECT_EQ(p[0].alpha, 1);
}

TEST(Io, RejectsMalformedInput) {
    EXPECT_THROW(io::network_from_json(json::parse(R"({"vertices":["a"]})")), ParseError);
    EXPECT_THROW(io::network_from_json(json::parse(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"z","length":"1"}]})")), ParseError);
    EXPECT_THROW(io::network_from_json(json::parse(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","length":1.5}]})")), ParseError);
    EXPECT_THROW(io::network_from_json(json::parse(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","length":"-1"}]})")), InvalidNetwork);
    EXPECT_THROW(io::profile_from_json(json::parse(R"([{"edge":0}])")), ParseError);
    EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), ParseError);
}
