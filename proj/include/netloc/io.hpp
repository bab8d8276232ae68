// SPDX-License-Identifier: MIT
// JSON reading and writing.  Rationals travel as "p/q" strings (integers may
// also be given as JSON numbers on input).
//
//   network: {"vertices": ["a", "b"],
//             "edges": [{"u": "a", "v": "b", "length": "3/2"}],
//             "degree2_allowed": false}
//   point:   {"edge": 0, "alpha": "1/3"}
//   profile: [point, ...]
#pragma once

#include "netloc/network.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace netloc::io {

using json = nlohmann::ordered_json;

inline Rational rational_from(const json& j, const std::string& what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
    throw ParseError(what + ": expected a rational string or an integer");
}

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const Network& net) {
    json j;
    j["vertices"] = net.names();
    j["edges"] = json::array();
    for (const Edge& e : net.edges())
        j["edges"].push_back({{"u", net.name(e.u)}, {"v", net.name(e.v)}, {"length", to_string(e.length)}});
    j["degree2_allowed"] = net.degree2_allowed();
    return j;
}

inline Network network_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
            throw ParseError("network needs 'vertices' and 'edges'");
        std::vector<std::string> names = j.at("vertices").get<std::vector<std::string>>();
        std::vector<Edge> edges;
        auto index = [&](const json& v) -> std::size_t {
            if (v.is_number_unsigned() || v.is_number_integer()) return v.get<std::size_t>();
            auto it = std::find(names.begin(), names.end(), v.get<std::string>());
            if (it == names.end()) throw ParseError("unknown vertex '" + v.get<std::string>() + "'");
            return static_cast<std::size_t>(it - names.begin());
        };
        for (const json& e : j.at("edges"))
            edges.push_back(Edge{index(e.at("u")), index(e.at("v")), rational_from(e.at("length"), "edge length")});
        bool d2 = j.value("degree2_allowed", false);
        return Network(std::move(names), std::move(edges), d2);
    } catch (const json::exception& ex) {
        throw ParseError(std::string("network JSON: ") + ex.what());
    }
}

inline json to_json(const Point& p) { return {{"edge", p.edge}, {"alpha", to_string(p.alpha)}}; }

inline json to_json(const Network& net, const Profile& profile) {
    json arr = json::array();
    for (const Point& p : profile) arr.push_back(to_json(canonical(net, p)));
    return arr;
}

inline Point point_from_json(const json& j) {
    try {
        return Point{j.at("edge").get<std::size_t>(), rational_from(j.at("alpha"), "alpha")};
    } catch (const json::exception& ex) {
        throw ParseError(std::string("point JSON: ") + ex.what());
    }
}

inline Profile profile_from_json(const json& j) {
    const json& arr = j.is_object() && j.contains("profile") ? j.at("profile") : j;
    if (!arr.is_array()) throw ParseError("profile must be an array of points");
    Profile out;
    for (const json& p : arr) out.push_back(point_from_json(p));
    return out;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError("'" + path + "': " + ex.what());
    }
}

// Accepts a bare network or a bundle {"network": ..., "profile": ...}.
inline Network read_network(const std::string& path) {
    json j = read_json_file(path);
    return network_from_json(j.is_object() && j.contains("network") ? j.at("network") : j);
}

inline Profile read_profile(const std::string& path) { return profile_from_json(read_json_file(path)); }

}  // namespace netloc::io
