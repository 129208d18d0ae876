#pragma once

// Command implementations for the `ribbon` tool. Each command writes to the
// given streams and returns the process exit code:
//   0 success, 1 verification failure, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ribbon/duality.hpp"
#include "ribbon/medial.hpp"
#include "ribbon/presentation.hpp"
#include "ribbon/tracing.hpp"
#include "ribbon/verify.hpp"

namespace ribbon::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_input = 2;

/// Bad input: unreadable file, parse error, violated precondition.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline ArrowPresentation load(const std::string& path) {
    if (path.empty()) throw InputError("--input is required");
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse(ss.str());
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// "1,2,5" -> labels; "ALL" -> every label; "" -> none.
inline EdgeSet parse_edge_list(const std::string& list, const EdgeIndex& idx) {
    EdgeSet a(idx.size());
    if (list == "ALL") return EdgeSet(idx.size(), true);
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        tok = tok.substr(b, tok.find_last_not_of(" \t") - b + 1);
        const auto e = idx.find(tok);
        if (!e) throw InputError("unknown edge label " + tok);
        a.insert(*e);
    }
    return a;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string format_family(const EdgeSetFamily& f, const EdgeIndex& idx) {
    std::string out;
    for (const auto& s : f) out += (out.empty() ? "" : ", ") + format_edge_set(s, idx);
    if (out.empty()) out = "(none)";
    return out + " (" + std::to_string(f.size()) + (f.size() == 1 ? " set)" : " sets)");
}

inline nlohmann::json walks_json(const TransitionSystem& ts, const StateCircles& sc) {
    auto arr = nlohmann::json::array();
    for (const auto& w : sc.walks) {
        auto steps = nlohmann::json::array();
        for (const auto& s : w.steps)
            steps.push_back({{"gap", s.gap}, {"forward", s.forward}, {"edge", ts.edges().label(s.edge)}, {"from", s.from}, {"to", s.to}});
        nlohmann::json j{{"length", w.length()}, {"steps", std::move(steps)}};
        if (w.isolated_gap) j["isolated_gap"] = *w.isolated_gap;
        arr.push_back(std::move(j));
    }
    return arr;
}

/// Medial edges as gap -> (tail incidence, head incidence).
inline nlohmann::json direction_json(const TransitionSystem& ts, const Direction& dir) {
    auto arr = nlohmann::json::array();
    for (const auto& me : medial_edges(ts)) {
        const bool fwd = dir.forward[me.gap];
        const auto& from = ts.slots()[fwd ? me.start_slot : me.end_slot];
        const auto& to = ts.slots()[fwd ? me.end_slot : me.start_slot];
        arr.push_back({{"gap", me.gap},
                       {"from", {{"edge", ts.edges().label(from.edge)}, {"slot", from.position}}},
                       {"to", {{"edge", ts.edges().label(to.edge)}, {"slot", to.position}}}});
    }
    return arr;
}

inline nlohmann::json classification_json(const EdgeClassification& c, const EdgeIndex& idx) {
    return {{"c", edge_set_json(c.c, idx)}, {"d", edge_set_json(c.d, idx)}, {"t", edge_set_json(c.t, idx)}};
}

inline std::string direction_string(const TransitionSystem& ts, const Direction& d) {
    std::string s;
    for (std::size_t g = 0; g < d.forward.size(); ++g)
        if (ts.gaps()[g].medial) s += d.forward[g] ? '+' : '-';
    return s;
}

// ---------------------------------------------------------------------------

inline int cmd_info(const ArrowPresentation& ap, bool json, std::ostream& out) {
    const TransitionSystem ts(ap);
    const auto s = surface_invariants(ap);
    const auto t = straight_ahead_walks(ts).t;
    const bool eul = is_eulerian(ap), bip = is_bipartite(ap), evf = is_even_face(ap);
    if (json) {
        out << nlohmann::json{{"V", s.vertex_count}, {"E", s.edge_count}, {"F", s.boundary_count}, {"chi", s.euler_characteristic},
                              {"components", s.components}, {"orientable", s.orientable}, {"genus", s.genus},
                              {"genus_kind", to_string(s.genus_kind)}, {"eulerian", eul}, {"bipartite", bip},
                              {"even_face", evf}, {"t", t}}
                   .dump(2)
            << '\n';
        return exit_ok;
    }
    out << "V=" << s.vertex_count << " E=" << s.edge_count << " F=" << s.boundary_count << " χ=" << s.euler_characteristic << ' '
        << (s.orientable ? "orientable" : "nonorientable") << " genus=" << s.genus << " eulerian=" << yes_no(eul)
        << " bipartite=" << yes_no(bip) << " even-face=" << yes_no(evf) << " t=" << t << '\n';
    return exit_ok;
}

inline int cmd_dual(const ArrowPresentation& ap, const std::string& edges, bool json, std::ostream& out) {
    const TransitionSystem ts(ap);
    const auto a = parse_edge_list(edges, ts.edges());
    const auto d = partial_dual(ts, a);
    if (json)
        out << nlohmann::json{{"edges", edge_set_json(a, ts.edges())}, {"presentation", serialize(d)}}.dump(2) << '\n';
    else
        out << serialize(d);
    return exit_ok;
}

inline int cmd_medial(const ArrowPresentation& ap, bool json, std::ostream& out) {
    const TransitionSystem ts(ap);
    const auto& idx = ts.edges();
    const auto sa = straight_ahead_walks(ts);
    std::optional<BoundCounts> bounds;
    if (ts.edge_count() <= 12) bounds = bound_counts(ts);
    if (json) {
        auto vertices = nlohmann::json::array();
        for (std::size_t e = 0; e < ts.edge_count(); ++e) {
            const auto g = ts.cyclic_gaps(e);
            vertices.push_back({{"edge", idx.label(e)}, {"cyclic_gaps", g}});
        }
        nlohmann::json j{{"vertices", vertices}, {"t", sa.t}, {"straight_ahead_walks", walks_json(ts, sa.walks)}};
        if (bounds) j["bounds"] = {{"lower", bounds->lower}, {"n_ct", bounds->n_ct}, {"upper", bounds->upper}};
        out << j.dump(2) << '\n';
        return exit_ok;
    }
    for (std::size_t e = 0; e < ts.edge_count(); ++e) {
        const auto g = ts.cyclic_gaps(e);
        out << "v(" << idx.label(e) << "): gaps " << g[0] << ' ' << g[1] << ' ' << g[2] << ' ' << g[3] << '\n';
    }
    out << "t=" << sa.t << '\n';
    if (bounds) out << "2^t=" << bounds->lower << " N_CT=" << bounds->n_ct << " upper=" << bounds->upper << '\n';
    return exit_ok;
}

inline int cmd_enumerate(const ArrowPresentation& ap, const std::string& kind, bool json, std::ostream& out) {
    const TransitionSystem ts(ap);
    const auto& idx = ts.edges();
    if (ts.edge_count() > 12) throw InputError("enumeration is limited to 12 edges");
    if (kind == "ct-directions") {
        const auto ct = enumerate_crossing_total(ts);
        if (json) {
            auto arr = nlohmann::json::array();
            for (const auto& cd : ct.directions)
                arr.push_back({{"direction", direction_json(ts, cd.direction)}, {"classification", classification_json(cd.classification, idx)}});
            out << nlohmann::json{{"count", ct.directions.size()}, {"directions", arr}}.dump(2) << '\n';
            return exit_ok;
        }
        for (const auto& cd : ct.directions)
            out << direction_string(ts, cd.direction) << "  C=" << format_edge_set(cd.classification.c, idx)
                << " D=" << format_edge_set(cd.classification.d, idx) << " T=" << format_edge_set(cd.classification.t, idx) << '\n';
        out << "(" << ct.directions.size() << (ct.directions.size() == 1 ? " direction)" : " directions)") << '\n';
        return exit_ok;
    }
    EdgeSetFamily family;
    if (kind == "eulerian") {
        family = eulerian_sets(enumerate_crossing_total(ts).directions);
    } else if (kind == "even-face") {
        family = even_face_sets(enumerate_crossing_total(ts).directions);
    } else if (kind == "bipartite") {
        if (!is_orientable(ap)) throw InputError("--kind bipartite requires an orientable ribbon graph");
        family = all_crossing_c_sets(enumerate_all_crossing(ts));
    } else {
        throw InputError("unknown --kind " + kind);
    }
    if (json) {
        auto arr = nlohmann::json::array();
        for (const auto& s : family) arr.push_back(edge_set_json(s, idx));
        out << nlohmann::json{{"kind", kind}, {"count", family.size()}, {"sets", arr}}.dump(2) << '\n';
    } else {
        out << format_family(family, idx) << '\n';
    }
    return exit_ok;
}

struct VerifyRequest {
    std::string input;
    bool all_fixtures = false;
    std::optional<std::size_t> exhaustive;
    std::optional<std::size_t> random;
    std::optional<std::size_t> counterexamples;
    std::uint64_t seed = 1;
    std::size_t max_edges = 8;
    bool inject_cd_swap = false;
};

inline void print_report(const VerificationReport& r, std::ostream& out) {
    std::map<std::string, std::array<std::size_t, 3>> per_claim;  // pass, fail, surface-only
    for (const auto& e : r.entries()) ++per_claim[e.claim][static_cast<std::size_t>(e.outcome)];
    for (const auto& [claim, n] : per_claim) {
        out << claim << ": " << (n[1] == 0 ? "PASS" : "FAIL") << " (" << n[0] << " passed, " << n[1] << " failed";
        if (n[2] > 0) out << ", " << n[2] << " surface-only";
        out << ")\n";
    }
    for (const auto& e : r.failures()) {
        out << "  failure " << e.claim << " on " << e.instance;
        if (!e.witness.is_null()) out << " witness " << e.witness.dump();
        if (!e.detail.empty()) out << " (" << e.detail << ")";
        out << '\n';
    }
}

inline int cmd_verify(const VerifyRequest& req, bool json, std::ostream& out) {
    VerifyOptions opt;
    if (req.inject_cd_swap) opt.convention = ColourConvention::swapped;
    DualIdentityOptions dual_opt;
    dual_opt.seed = req.seed;

    std::vector<Instance> instances;
    VerificationReport report;
    if (!req.input.empty()) {
        auto ap = load(req.input);
        if (ap.edge_count() > 12) throw InputError("verification is limited to 12 edges");
        instances.push_back({req.input, std::move(ap)});
    }
    if (req.all_fixtures) {
        report.merge(verify_fixtures());
        const auto f = fixture_instances();
        instances.insert(instances.end(), f.begin(), f.end());
    }
    if (req.exhaustive) {
        if (*req.exhaustive > 4) throw InputError("--exhaustive is limited to 4 edges");
        const auto ex = exhaustive_catalog(*req.exhaustive);
        instances.insert(instances.end(), ex.begin(), ex.end());
    }
    if (req.random) {
        if (req.max_edges > 12) throw InputError("--max-edges is limited to 12");
        const auto rnd = random_catalog(*req.random, req.max_edges, req.seed);
        instances.insert(instances.end(), rnd.begin(), rnd.end());
    }
    if (instances.empty() && !req.counterexamples) throw InputError("nothing to verify: give --input, --all-fixtures, --exhaustive, --random or --counterexamples");

    report.merge(verify_corpus(instances, opt, dual_opt));

    nlohmann::json cx_json;
    if (req.counterexamples) {
        if (*req.counterexamples > 4) throw InputError("--counterexamples is limited to 4 edges");
        const auto found = counterexample_search(*req.counterexamples);
        ReportEntry e{"counterexample.exists", "search/" + std::to_string(*req.counterexamples)};
        e.checks = found.size();
        if (found.empty() && *req.counterexamples >= 1) e.outcome = Outcome::fail;
        std::size_t signature = 0;
        for (const auto& c : found) signature += c.unique_partition_with_loop ? 1 : 0;
        e.detail = std::to_string(found.size()) + " non-orientable graphs violate the bipartite characterization; " +
                   std::to_string(signature) + " have a unique c-edge set whose dual has a loop";
        if (!found.empty()) {
            const auto& c = found.front();
            const EdgeIndex idx(c.graph);
            e.witness = {{"graph", serialize(c.graph)}, {"kind", to_string(c.witnesses.front().kind)}, {"A", edge_set_json(c.witnesses.front().a, idx)}};
        }
        report.add(std::move(e));
    }

    if (json)
        out << report.to_json().dump(2) << '\n';
    else {
        out << instances.size() << " instances\n";
        print_report(report, out);
    }
    return report.passed() ? exit_ok : exit_failed;
}

inline int cmd_fixtures(const std::string& out_dir, bool json, std::ostream& out) {
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& f : fixture_catalog()) {
            std::ofstream file(std::filesystem::path(out_dir) / (f.name + ".arp"));
            if (!file) throw InputError("cannot write to " + out_dir);
            file << f.text;
        }
    }
    if (json) {
        auto arr = nlohmann::json::array();
        for (const auto& f : fixture_catalog()) arr.push_back({{"name", f.name}, {"presentation", f.text}});
        out << arr.dump(2) << '\n';
        return exit_ok;
    }
    for (const auto& f : fixture_catalog()) {
        out << "# " << f.name << '\n' << f.text;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

/// Parses the command line and dispatches.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ribbon graphs: partial duals, medial-graph directions and characterization checks", "ribbon"};
    app.require_subcommand(1);

    std::string input, edges, kind, out_dir;
    bool json = false;
    VerifyRequest vr;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* opt = sub->add_option("--input,-i", input, "arrow presentation file (.arp)");
        if (needs_input) opt->required();
        sub->add_flag("--json", json, "machine-readable output");
    };

    auto* info = app.add_subcommand("info", "surface invariants and predicates");
    add_common(info, true);
    auto* dual = app.add_subcommand("dual", "partial dual with respect to an edge list");
    add_common(dual, true);
    dual->add_option("--edges", edges, "comma-separated labels, or ALL")->required();
    auto* medial = app.add_subcommand("medial", "medial transition system and direction counts");
    add_common(medial, true);
    auto* enumerate = app.add_subcommand("enumerate", "subset families and crossing-total directions");
    add_common(enumerate, true);
    enumerate->add_option("--kind", kind, "eulerian | even-face | bipartite | ct-directions")
        ->required()
        ->check(CLI::IsMember({"eulerian", "even-face", "bipartite", "ct-directions"}));
    auto* verify = app.add_subcommand("verify", "run the characterization checks");
    add_common(verify, false);
    verify->add_flag("--all-fixtures", vr.all_fixtures, "the shipped fixture catalog");
    verify->add_option("--exhaustive", vr.exhaustive, "every graph with at most N edges (N <= 4)");
    verify->add_option("--random", vr.random, "K seeded random graphs");
    verify->add_option("--counterexamples", vr.counterexamples, "search non-orientable graphs up to N edges");
    verify->add_option("--seed", vr.seed, "random seed");
    verify->add_option("--max-edges", vr.max_edges, "edge cap for --random");
    verify->add_flag("--inject-cd-swap", vr.inject_cd_swap, "classify with black and white exchanged (fault injection)");
    auto* fixtures = app.add_subcommand("fixtures", "print or write the fixture catalog");
    fixtures->add_option("--out", out_dir, "directory to write <name>.arp files into");
    fixtures->add_flag("--json", json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_input;
    }

    try {
        if (*info) return cmd_info(load(input), json, out);
        if (*dual) return cmd_dual(load(input), edges, json, out);
        if (*medial) return cmd_medial(load(input), json, out);
        if (*enumerate) return cmd_enumerate(load(input), kind, json, out);
        if (*verify) {
            vr.input = input;
            return cmd_verify(vr, json, out);
        }
        if (*fixtures) return cmd_fixtures(out_dir, json, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

}  // namespace ribbon::cli
