// SPDX-License-Identifier: MIT
// Command-line front end.  Every subcommand writes one JSON document (or CSV
// for the cost curve) to stdout or --out.
//
// Exit status: 0 success, 1 `verify` found a profitable deviation,
// 2 bad input (flags, files, JSON), 3 domain error.
#include "netloc/io.hpp"
#include "netloc/netloc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace netloc;
using io::json;

namespace {

struct Options {
    std::string net_path, profile_path, out_path, format = "json";
    std::size_t n = 0, n_to = 0, k = 3, b = 1;
    std::optional<std::size_t> ell;
    std::string xi;
    std::string shape, kind;
    std::uint64_t seed = 1;
    std::size_t starts = 8, iters = 40;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out) throw ParseError("cannot write '" + opt.out_path + "'");
    out << text;
}

void emit(const Options& opt, const json& j) { emit(opt, j.dump(2) + "\n"); }

Network load_net(const Options& opt) {
    if (opt.net_path.empty()) throw ParseError("--net is required");
    return io::read_network(opt.net_path);
}

Profile load_profile(const Network& net, const Options& opt) {
    if (opt.profile_path.empty()) throw ParseError("--profile is required");
    Profile p = io::read_profile(opt.profile_path);
    for (Point& x : p) x = canonical(net, x);  // also validates
    return p;
}

std::size_t need_n(const Options& opt) {
    if (opt.n == 0) throw ParseError("--n is required and must be positive");
    return opt.n;
}

json rationals(const std::vector<Rational>& v) {
    json arr = json::array();
    for (const Rational& q : v) arr.push_back(to_string(q));
    return arr;
}

json interval_json(const Interval& iv) {
    return {{"edge", iv.edge}, {"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}, {"measure", to_string(iv.measure)}};
}

int cmd_dist(const Options& opt) {
    Network net = load_net(opt);
    Profile p = load_profile(net, opt);
    if (opt.format == "csv") {
        std::ostringstream os;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                os << to_string(distance(net, p[i], p[j])) << (j + 1 < p.size() ? "," : "\n");
        emit(opt, os.str());
        return 0;
    }
    json rows = json::array();
    for (const Point& x : p) {
        std::vector<Rational> row;
        for (const Point& y : p) row.push_back(distance(net, x, y));
        rows.push_back(rationals(row));
    }
    emit(opt, json{{"distances", rows}});
    return 0;
}

int cmd_payoffs(const Options& opt) {
    Network net = load_net(opt);
    Profile p = load_profile(net, opt);
    json cells = json::array();
    for (const AttractionCell& c : attraction(net, p)) {
        json ties = json::array();
        for (const auto& [iv, k] : c.ties) {
            json t = interval_json(iv);
            t["shared_by"] = k;
            ties.push_back(t);
        }
        json ex = json::array();
        for (const Interval& iv : c.exclusive) ex.push_back(interval_json(iv));
        cells.push_back({{"location", io::to_json(c.location)},
                         {"multiplicity", c.multiplicity},
                         {"mass", to_string(c.mass)},
                         {"exclusive", ex},
                         {"ties", ties}});
    }
    emit(opt, json{{"payoffs", rationals(payoffs(net, p))}, {"total_length", to_string(net.total_length())}, {"cells", cells}});
    return 0;
}

// With --profile: cost of that profile.  Without: the constructed
// equilibrium's cost for n in [--n, --n-to], as JSON or CSV.
int cmd_cost(const Options& opt) {
    Network net = load_net(opt);
    if (!opt.profile_path.empty()) {
        Profile p = load_profile(net, opt);
        emit(opt, json{{"social_cost", to_string(social_cost(net, p))}, {"eccentricity", to_string(eccentricity(net, p))}});
        return 0;
    }
    std::size_t lo = need_n(opt), hi = std::max(opt.n_to, lo);
    struct Row {
        std::size_t n;
        Rational cost, phi_n, bound;
    };
    std::vector<Row> rows;
    for (std::size_t n = lo; n <= hi; ++n)
        rows.push_back({n, social_cost(net, build_equilibrium(net, n).profile), phi(net, n), eq_cost_upper_bound(net, n)});
    if (opt.format == "csv") {
        std::ostringstream os;
        os << "n,cost,phi_n,bound\n";
        for (const Row& r : rows) os << r.n << "," << to_string(r.cost) << "," << to_string(r.phi_n) << "," << to_string(r.bound) << "\n";
        emit(opt, os.str());
    } else {
        json arr = json::array();
        for (const Row& r : rows)
            arr.push_back({{"n", r.n}, {"cost", to_string(r.cost)}, {"phi_n", to_string(r.phi_n)}, {"bound", to_string(r.bound)}});
        emit(opt, json{{"curve", arr}});
    }
    return 0;
}

int cmd_construct(const Options& opt) {
    Network net = load_net(opt);
    ConstructionPlan plan = build_equilibrium(net, need_n(opt));
    static const char* kinds[] = {"II", "IL", "LL"};
    json edges = json::array();
    for (const EdgeLayout& lay : plan.layouts)
        edges.push_back({{"edge", lay.edge},
                         {"class", kinds[static_cast<int>(lay.kind)]},
                         {"from", net.name(lay.from_u ? net.edge(lay.edge).u : net.edge(lay.edge).v)},
                         {"alpha", to_string(lay.alpha)},
                         {"stretched_gaps", lay.stretch}});
    emit(opt, json{{"n", plan.n},
                   {"xi", to_string(plan.xi)},
                   {"n_prime", plan.n_prime},
                   {"edges", edges},
                   {"removed", plan.removed},
                   {"constructed_cost", to_string(constructed_cost(plan))},
                   {"social_cost", to_string(social_cost(net, plan.profile))},
                   {"profile", io::to_json(net, plan.profile)}});
    return 0;
}

int cmd_verify(const Options& opt) {
    Network net = load_net(opt);
    Profile p = load_profile(net, opt);
    NashCertificate cert = is_nash(net, p);
    json players = json::array();
    for (const PlayerCheck& c : cert.players) {
        json entry{{"payoff", to_string(c.payoff)}, {"best_response", to_string(c.best.value)}, {"attained", c.best.attained}};
        if (c.best.attained) entry["best_point"] = io::to_json(canonical(net, c.best.witness));
        else entry["approached_point"] = io::to_json(canonical(net, c.best.witness));
        players.push_back(entry);
    }
    json out{{"is_nash", cert.is_nash}, {"players", players}};
    if (cert.counterexample) {
        const Counterexample& w = *cert.counterexample;
        out["counterexample"] = {{"player", w.player}, {"deviation", io::to_json(canonical(net, w.deviation))}, {"gain", to_string(w.gain)}};
    } else {
        StructuralReport rep = check_structural_lemmas(net, p, cert);
        json checks = json::array();
        for (const LemmaCheck& c : rep.checks)
            checks.push_back({{"name", c.name}, {"applicable", c.applicable}, {"holds", c.holds}, {"detail", c.detail}});
        out["structure"] = checks;
    }
    emit(opt, out);
    return cert.is_nash ? 0 : 1;
}

SearchBudget budget_of(const Options& opt) { return SearchBudget{opt.seed, opt.starts, opt.iters}; }

int cmd_report(const Options& opt) {
    Network net = load_net(opt);
    EfficiencyReport r = efficiency_report(net, need_n(opt), budget_of(opt));
    json out{{"n", r.n},
             {"seed", r.seed},
             {"total_length", to_string(r.total_length)},
             {"phi_n", to_string(r.phi_n)},
             {"opt_lower_bound", to_string(r.opt_lower_bound)},
             {"eq_cost_upper_bound", to_string(r.eq_cost_upper_bound)},
             {"empirical_opt_cost", to_string(r.empirical_opt_cost)},
             {"worst_eq_cost", to_string(r.worst_eq_cost)},
             {"best_eq_cost", to_string(r.best_eq_cost)},
             {"equilibria_verified", r.equilibria_verified},
             {"poa_estimate", to_string(r.poa_estimate)},
             {"pos_estimate", to_string(r.pos_estimate)},
             {"poa_upper", r.poa_upper ? json(to_string(*r.poa_upper)) : json(nullptr)},
             {"pos_upper", to_string(r.pos_upper)},
             {"worst_eq_profile", io::to_json(net, r.worst_eq_profile)},
             {"best_eq_profile", io::to_json(net, r.best_eq_profile)},
             {"empirical_opt_profile", io::to_json(net, r.empirical_opt_profile)}};
    emit(opt, out);
    return 0;
}

int cmd_search(const Options& opt) {
    Network net = load_net(opt);
    OptimumResult r = empirical_optimum(net, need_n(opt), budget_of(opt));
    emit(opt, json{{"n", opt.n},
                   {"seed", opt.seed},
                   {"cost", to_string(r.cost)},
                   {"opt_lower_bound", to_string(opt_lower_bound(net, opt.n))},
                   {"start_index", r.start_index},
                   {"profile", io::to_json(net, r.profile)}});
    return 0;
}

int cmd_examples(const Options& opt) {
    Network net = make_segment();
    Profile p;
    json extra = json::object();
    if (opt.shape == "circle") {
        net = make_circle();
        static const std::map<std::string, CircleKind> kinds{
            {"tilde", CircleKind::Tilde}, {"hat", CircleKind::Hat}, {"breve", CircleKind::Breve}};
        auto it = kinds.find(opt.kind.empty() ? "tilde" : opt.kind);
        if (it == kinds.end()) throw ParseError("circle profiles: tilde, hat, breve");
        p = circle_profile(net, it->second, need_n(opt));
    } else if (opt.shape == "segment") {
        static const std::map<std::string, SegmentKind> kinds{{"opt", SegmentKind::Opt},
                                                              {"tilde", SegmentKind::Tilde},
                                                              {"hat", SegmentKind::Hat},
                                                              {"hat_ell", SegmentKind::HatEll}};
        auto it = kinds.find(opt.kind.empty() ? "opt" : opt.kind);
        if (it == kinds.end()) throw ParseError("segment profiles: opt, tilde, hat, hat_ell");
        p = segment_profile(it->second, need_n(opt), opt.ell);
    } else if (opt.shape == "star") {
        std::string kind = opt.kind.empty() ? "eq" : opt.kind;
        if (kind == "eq") {
            net = make_star(opt.k);
            std::optional<Rational> xi;
            if (!opt.xi.empty()) xi = parse_rational(opt.xi);
            auto res = star_equilibrium(opt.k, need_n(opt), xi);
            if (auto* none = std::get_if<NoEquilibrium>(&res)) throw InvalidArgument(none->reason);
            const StarEquilibrium& eq = std::get<StarEquilibrium>(res);
            p = eq.profile;
            if (eq.xi) extra["xi"] = to_string(*eq.xi);
            if (eq.xi_range) extra["xi_range"] = {to_string(eq.xi_range->first), to_string(eq.xi_range->second)};
        } else {
            net = make_star(3);
            StarRemarkProfiles r = star_remark_profiles(opt.b);
            static const std::map<std::string, Profile StarRemarkProfiles::*> kinds{
                {"worst_eq", &StarRemarkProfiles::worst_eq},
                {"good_cfg", &StarRemarkProfiles::good_cfg},
                {"worst_eq_2", &StarRemarkProfiles::worst_eq_2},
                {"opt", &StarRemarkProfiles::opt}};
            auto it = kinds.find(kind);
            if (it == kinds.end()) throw ParseError("star profiles: eq, worst_eq, good_cfg, worst_eq_2, opt");
            p = r.*(it->second);
        }
    } else {
        throw ParseError("examples: shape must be circle, segment or star");
    }
    json out{{"network", io::to_json(net)}, {"profile", io::to_json(net, p)}};
    for (auto& [key, value] : extra.items()) out[key] = value;
    emit(opt, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of location games on networks"};
    app.require_subcommand(1);
    Options opt;

    auto net_flag = [&](CLI::App* sub) { sub->add_option("--net", opt.net_path, "network JSON (or a bundle with a network)"); };
    auto profile_flag = [&](CLI::App* sub) { sub->add_option("--profile", opt.profile_path, "profile JSON (or a bundle with a profile)"); };
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out_path, "write output here instead of stdout");
        sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };
    auto search_flags = [&](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--starts", opt.starts, "random restarts");
        sub->add_option("--iters", opt.iters, "descent sweeps per start");
    };

    std::map<CLI::App*, int (*)(const Options&)> handlers;
    auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        handlers[sub] = fn;
        return sub;
    };

    auto* dist = add("dist", "pairwise distances between the profile's points", cmd_dist);
    net_flag(dist);
    profile_flag(dist);
    auto* pay = add("payoffs", "payoffs and attraction cells", cmd_payoffs);
    net_flag(pay);
    profile_flag(pay);
    auto* cost = add("cost", "consumer cost of a profile, or the constructed-equilibrium cost curve", cmd_cost);
    net_flag(cost);
    profile_flag(cost);
    cost->add_option("--n", opt.n, "first player count of the curve");
    cost->add_option("--n-to", opt.n_to, "last player count of the curve");
    auto* cons = add("construct", "equilibrium construction for n players", cmd_construct);
    net_flag(cons);
    cons->add_option("--n", opt.n, "number of players");
    auto* ver = add("verify", "exact Nash check; exit 1 when a deviation pays", cmd_verify);
    net_flag(ver);
    profile_flag(ver);
    auto* rep = add("report", "efficiency report", cmd_report);
    net_flag(rep);
    rep->add_option("--n", opt.n, "number of players");
    search_flags(rep);
    auto* so = add("search-optimum", "multistart search for a low-cost profile", cmd_search);
    net_flag(so);
    so->add_option("--n", opt.n, "number of players");
    search_flags(so);
    auto* ex = add("examples", "closed-form profiles on the circle, segment and star", cmd_examples);
    ex->add_option("shape", opt.shape, "circle, segment or star")->required();
    ex->add_option("--n", opt.n, "number of players");
    ex->add_option("--k", opt.k, "number of rays of the star");
    ex->add_option("--b", opt.b, "size parameter of the three-ray star profiles");
    ex->add_option("--profile", opt.kind, "which profile of the family");
    ex->add_option("--ell", opt.ell, "position of the single player (segment hat_ell)");
    ex->add_option("--xi", opt.xi, "unit of the star family, as p/q");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (auto& [sub, fn] : handlers)
            if (sub->parsed()) return fn(opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
