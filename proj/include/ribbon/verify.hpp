#pragma once

// Exhaustive and randomized checking of the characterization theorems over
// fixture catalogs and generated ribbon graphs.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ribbon/duality.hpp"
#include "ribbon/medial.hpp"
#include "ribbon/presentation.hpp"
#include "ribbon/report.hpp"
#include "ribbon/tracing.hpp"

namespace ribbon {

// ---------------------------------------------------------------------------
// Fixtures

struct FixtureExpectation {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t faces = 0;
    long euler_characteristic = 0;
    bool orientable = true;
    long genus = 0;
    std::optional<std::size_t> t;
    std::optional<std::size_t> n_ct;
};

struct Fixture {
    std::string name;
    std::string text;
    FixtureExpectation expected;

    ArrowPresentation presentation() const { return parse(text); }
};

inline const std::vector<Fixture>& fixture_catalog() {
    static const std::vector<Fixture> catalog = {
        {"annulus", "C1: 1+ 1+\n", {1, 1, 2, 2, true, 0, 1, 2}},
        {"moebius", "C1: 1+ 1-\n", {1, 1, 1, 1, false, 1, 2, 4}},
        {"path", "C1: 1+\nC2: 1-\n", {2, 1, 1, 2, true, 0, 1, 2}},
        {"theta", "C1: 1+ 2+ 3+\nC2: 3+ 2+ 1+\n", {2, 3, 3, 2, true, 0, 1, 8}},
        {"torus_bouquet", "C1: 1+ 2+ 1+ 2+\n", {1, 2, 1, 0, true, 1, 2, 6}},
        {"nonorientable_counterexample", "C1: 1+ 2+ 1+ 2- 3+ 3+ 4+ 4+\n", {1, 4, 3, 0, false, 2, 1, std::nullopt}},
    };
    return catalog;
}

inline const Fixture& fixture(const std::string& name) {
    for (const auto& f : fixture_catalog())
        if (f.name == name) return f;
    throw std::out_of_range("unknown fixture " + name);
}

// ---------------------------------------------------------------------------
// Instance generation

struct Instance {
    std::string name;
    ArrowPresentation presentation;
};

/// All presentations with `edge_count` labels on at most `vertex_budget`
/// non-empty circles, one representative per normal form (the normal form
/// itself), ordered by normal-form text. Zero edges yields the single
/// isolated vertex.
inline std::vector<ArrowPresentation> generate_all(std::size_t edge_count, std::size_t vertex_budget) {
    if (edge_count == 0) return {parse("C1:\n")};
    if (edge_count > 5) throw std::invalid_argument("exhaustive generation is capped at 5 edges");
    const auto len = 2 * edge_count;
    std::vector<std::size_t> seq;
    for (std::size_t e = 0; e < edge_count; ++e) seq.insert(seq.end(), {e, e});

    std::map<NormalForm, bool> seen;
    do {
        for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << (len - 1)); ++cuts) {
            const auto blocks = static_cast<std::size_t>(__builtin_popcountll(cuts)) + 1;
            if (blocks > vertex_budget) continue;
            // Each block starts with its smallest label; blocks ordered by first label.
            std::vector<std::pair<std::size_t, std::size_t>> bounds;
            std::size_t b = 0;
            for (std::size_t i = 0; i + 1 < len; ++i)
                if ((cuts >> i) & 1U) {
                    bounds.emplace_back(b, i + 1);
                    b = i + 1;
                }
            bounds.emplace_back(b, len);
            bool canonical = true;
            for (std::size_t k = 0; k < bounds.size() && canonical; ++k) {
                const auto [lo, hi] = bounds[k];
                if (*std::min_element(seq.begin() + static_cast<long>(lo), seq.begin() + static_cast<long>(hi)) != seq[lo]) canonical = false;
                if (k > 0 && seq[bounds[k - 1].first] > seq[lo]) canonical = false;
            }
            if (!canonical) continue;

            for (std::uint64_t flags = 0; flags < (std::uint64_t{1} << edge_count); ++flags) {
                std::vector<bool> first_seen(edge_count, false);
                std::vector<Circle> circles;
                for (const auto& [lo, hi] : bounds) {
                    Circle c{"C" + std::to_string(circles.size() + 1), {}};
                    for (auto i = lo; i < hi; ++i) {
                        const auto e = seq[i];
                        Flag f = Flag::plus;
                        if (first_seen[e]) f = ((flags >> e) & 1U) ? Flag::minus : Flag::plus;
                        first_seen[e] = true;
                        c.occurrences.push_back({std::to_string(e + 1), f});
                    }
                    circles.push_back(std::move(c));
                }
                seen.emplace(normal_form(ArrowPresentation(std::move(circles))), true);
            }
        }
    } while (std::next_permutation(seq.begin(), seq.end()));

    std::vector<ArrowPresentation> out;
    for (const auto& [nf, _] : seen) out.push_back(parse(nf.text));
    return out;
}

/// Every normal-form-distinct presentation with at most `max_edges` edges.
inline std::vector<Instance> exhaustive_catalog(std::size_t max_edges) {
    std::vector<Instance> out;
    for (std::size_t n = 0; n <= max_edges; ++n) {
        const auto all = generate_all(n, std::max<std::size_t>(1, 2 * n));
        for (std::size_t i = 0; i < all.size(); ++i)
            out.push_back({"exhaustive/e" + std::to_string(n) + "/" + std::to_string(i), all[i]});
    }
    return out;
}

/// A random presentation with 1..max_edges edges on 1..(edges+1) circles;
/// occurrences are assigned to circles uniformly, shuffled, and given random
/// flags. Empty circles may occur.
inline ArrowPresentation generate_random(std::mt19937_64& rng, std::size_t max_edges) {
    std::uniform_int_distribution<std::size_t> edges_dist(1, std::max<std::size_t>(1, max_edges));
    const auto n = edges_dist(rng);
    std::uniform_int_distribution<std::size_t> circles_dist(1, n + 1);
    const auto k = circles_dist(rng);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::bernoulli_distribution coin(0.5);
    std::vector<Circle> circles(k);
    for (std::size_t c = 0; c < k; ++c) circles[c].name = "C" + std::to_string(c + 1);
    for (std::size_t e = 0; e < n; ++e)
        for (int copy = 0; copy < 2; ++copy)
            circles[pick(rng)].occurrences.push_back({std::to_string(e + 1), coin(rng) ? Flag::plus : Flag::minus});
    for (auto& c : circles) std::shuffle(c.occurrences.begin(), c.occurrences.end(), rng);
    return ArrowPresentation(std::move(circles));
}

inline std::vector<Instance> random_catalog(std::size_t count, std::size_t max_edges, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back({"random/" + std::to_string(seed) + "/" + std::to_string(i), generate_random(rng, max_edges)});
    return out;
}

inline std::vector<Instance> fixture_instances() {
    std::vector<Instance> out;
    for (const auto& f : fixture_catalog()) out.push_back({"fixture/" + f.name, f.presentation()});
    return out;
}

// ---------------------------------------------------------------------------
// Theorem checks

struct VerifyOptions {
    ColourConvention convention = ColourConvention::standard;
    std::size_t max_edges = 12;
};

namespace detail {

/// All partial duals G^A, indexed by the mask of A.
class DualTable {
public:
    explicit DualTable(const TransitionSystem& ts) : m_(ts.edge_count()) {
        for (const auto& a : all_subsets(m_)) duals_.push_back(partial_dual(ts, a));
    }
    std::size_t edge_count() const noexcept { return m_; }
    const ArrowPresentation& operator[](const EdgeSet& a) const { return duals_.at(a.mask()); }
    const ArrowPresentation& operator[](std::uint64_t mask) const { return duals_.at(mask); }
    std::size_t size() const noexcept { return duals_.size(); }

private:
    std::size_t m_;
    std::vector<ArrowPresentation> duals_;
};

inline nlohmann::json family_json(const EdgeSetFamily& f, const EdgeIndex& idx) {
    auto arr = nlohmann::json::array();
    for (const auto& s : f) arr.push_back(edge_set_json(s, idx));
    return arr;
}

inline void require_size(const TransitionSystem& ts, const VerifyOptions& opt) {
    if (ts.edge_count() > opt.max_edges)
        throw std::invalid_argument("instance has " + std::to_string(ts.edge_count()) + " edges; limit is " + std::to_string(opt.max_edges));
}

inline nlohmann::json direction_bits(const Direction& d) {
    std::string s;
    for (bool b : d.forward) s += b ? '+' : '-';
    return s;
}

/// Equality entry for two subset families; the witness is the first subset
/// in their symmetric difference.
inline ReportEntry family_entry(const std::string& claim, const std::string& instance, const EdgeSetFamily& lhs,
                                const EdgeSetFamily& rhs, const EdgeIndex& idx, std::size_t checks) {
    ReportEntry e{claim, instance};
    e.checks = checks;
    if (lhs != rhs) {
        e.outcome = Outcome::fail;
        for (const auto& s : lhs)
            if (!rhs.count(s)) {
                e.witness = {{"A", edge_set_json(s, idx)}, {"side", "lhs-only"}};
                break;
            }
        if (e.witness.is_null())
            for (const auto& s : rhs)
                if (!lhs.count(s)) {
                    e.witness = {{"A", edge_set_json(s, idx)}, {"side", "rhs-only"}};
                    break;
                }
        e.detail = "lhs " + family_json(lhs, idx).dump() + " rhs " + family_json(rhs, idx).dump();
    }
    return e;
}

inline EdgeSetFamily subsets_where(std::size_t m, const auto& pred) {
    EdgeSetFamily f;
    for (const auto& a : all_subsets(m))
        if (pred(a)) f.insert(a);
    return f;
}

}  // namespace detail

/// G^A is even-face iff G^(A^c) is Eulerian, for every A.
inline VerificationReport verify_main_theorem(const ArrowPresentation& ap, const std::string& instance,
                                              const VerifyOptions& opt = {}) {
    const TransitionSystem ts(ap);
    detail::require_size(ts, opt);
    const detail::DualTable duals(ts);
    VerificationReport report;
    ReportEntry e{"main.even-face-eulerian", instance};
    for (const auto& a : all_subsets(ts.edge_count())) {
        ++e.checks;
        const bool lhs = is_even_face(duals[a]);
        const bool rhs = is_eulerian(duals[a.complement()]);
        if (lhs != rhs) {
            e.outcome = Outcome::fail;
            e.witness = {{"A", edge_set_json(a, ts.edges())}, {"even_face", lhs}, {"complement_eulerian", rhs}};
            break;
        }
    }
    report.add(std::move(e));
    return report;
}

/// Bipartite partial duals of an orientable ribbon graph are exactly the
/// c-edge sets of all-crossing directions; also checks |all-crossing| = 2^t.
inline VerificationReport verify_bipartite_characterization(const ArrowPresentation& ap, const std::string& instance,
                                                            const VerifyOptions& opt = {}) {
    if (!is_orientable(ap))
        throw std::invalid_argument("bipartite characterization requires an orientable ribbon graph; use counterexample_search");
    const TransitionSystem ts(ap);
    detail::require_size(ts, opt);
    const detail::DualTable duals(ts);
    VerificationReport report;

    const auto t = straight_ahead_walks(ts).t;
    const auto ac = enumerate_all_crossing(ts, opt.convention);
    {
        ReportEntry e{"all-crossing.count", instance};
        e.checks = 1;
        bool t_free = std::all_of(ac.begin(), ac.end(), [&](const auto& cd) {
            return cd.classification.t.empty() && is_crossing_total(ts, cd.direction);
        });
        if (ac.size() != (std::size_t{1} << t) || !t_free) {
            e.outcome = Outcome::fail;
            e.witness = {{"t", t}, {"directions", ac.size()}, {"all_t_free", t_free}};
        }
        report.add(std::move(e));
    }
    const auto lhs = detail::subsets_where(ts.edge_count(), [&](const EdgeSet& a) { return is_bipartite(duals[a]); });
    report.add(detail::family_entry("bipartite.characterization", instance, lhs, all_crossing_c_sets(ac), ts.edges(),
                                    duals.size() + ac.size()));
    return report;
}

/// Eulerian partial duals are D ∪ T' over crossing-total directions; also the
/// even-state lemma, the even-face corollary (directly and by complement),
/// the c/d colour-swap lemma and the even-state construction.
inline VerificationReport verify_eulerian_characterization(const ArrowPresentation& ap, const std::string& instance,
                                                           const VerifyOptions& opt = {}) {
    const TransitionSystem ts(ap);
    detail::require_size(ts, opt);
    const auto m = ts.edge_count();
    const detail::DualTable duals(ts);
    const auto ct = enumerate_crossing_total(ts, opt.convention);
    const auto& idx = ts.edges();
    VerificationReport report;

    const auto eulerian_duals = detail::subsets_where(m, [&](const EdgeSet& a) { return is_eulerian(duals[a]); });
    const auto even_states = detail::subsets_where(m, [&](const EdgeSet& a) { return is_even_state(state_circles(ts, a)); });
    const auto even_face_duals = detail::subsets_where(m, [&](const EdgeSet& a) { return is_even_face(duals[a]); });
    const auto eul = eulerian_sets(ct.directions);
    const auto evf = even_face_sets(ct.directions);
    EdgeSetFamily eul_complements;
    for (const auto& s : eul) eul_complements.insert(s.complement());

    report.add(detail::family_entry("eulerian.characterization", instance, eulerian_duals, eul, idx, duals.size()));
    report.add(detail::family_entry("eulerian.even-state", instance, eulerian_duals, even_states, idx, duals.size()));
    report.add(detail::family_entry("even-face.corollary", instance, even_face_duals, evf, idx, duals.size()));
    report.add(detail::family_entry("even-face.complement", instance, evf, eul_complements, idx, evf.size()));

    {
        ReportEntry e{"cd-swap.colours", instance};
        ReportEntry d{"cd-swap.dual", instance};
        ReportEntry s{"ct.even-state", instance};
        for (const auto& cd : ct.directions) {
            ++e.checks;
            ++d.checks;
            if (e.outcome == Outcome::pass && !lemma_cd_swap(ts, cd.direction)) {
                e.outcome = Outcome::fail;
                e.witness = {{"direction", detail::direction_bits(cd.direction)}};
            }
            if (d.outcome == Outcome::pass && !lemma_cd_dual(ts, cd.direction)) {
                d.outcome = Outcome::fail;
                d.witness = {{"direction", detail::direction_bits(cd.direction)}};
            }
            // white at d-edges, black at c-edges, either at t-edges
            const auto tm = cd.classification.t.members();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tm.size()) && s.outcome == Outcome::pass; ++mask) {
                ++s.checks;
                EdgeSet a = cd.classification.d;
                for (std::size_t i = 0; i < tm.size(); ++i)
                    if ((mask >> i) & 1U) a.insert(tm[i]);
                if (!is_even_state(state_circles(ts, a))) {
                    s.outcome = Outcome::fail;
                    s.witness = {{"direction", detail::direction_bits(cd.direction)}, {"A", edge_set_json(a, idx)}};
                }
            }
        }
        report.add(std::move(e));
        report.add(std::move(d));
        report.add(std::move(s));
    }
    return report;
}

struct BoundCounts {
    std::size_t t = 0;
    std::uint64_t lower = 0;  // 2^t
    std::size_t n_ct = 0;
    std::uint64_t upper = 0;  // sum over even states of 2^c(S)
};

inline BoundCounts bound_counts(const TransitionSystem& ts, ColourConvention conv = ColourConvention::standard) {
    BoundCounts b;
    b.t = straight_ahead_walks(ts).t;
    b.lower = std::uint64_t{1} << b.t;
    const auto ct = enumerate_crossing_total(ts, conv);
    b.n_ct = ct.directions.size();
    b.upper = ct.upper_bound;
    return b;
}

/// 2^t <= N_CT <= sum over even states S of 2^c(S).
inline VerificationReport verify_bounds(const ArrowPresentation& ap, const std::string& instance, const VerifyOptions& opt = {}) {
    const TransitionSystem ts(ap);
    detail::require_size(ts, opt);
    const auto b = bound_counts(ts, opt.convention);
    VerificationReport report;
    ReportEntry e{"bounds.chain", instance};
    e.checks = 1;
    e.detail = std::to_string(b.lower) + " <= " + std::to_string(b.n_ct) + " <= " + std::to_string(b.upper);
    if (!(b.lower <= b.n_ct && b.n_ct <= b.upper)) {
        e.outcome = Outcome::fail;
        e.witness = {{"t", b.t}, {"n_ct", b.n_ct}, {"upper", b.upper}};
    }
    report.add(std::move(e));
    return report;
}

/// Structural facts tying the modules together: bipartite implies even-face,
/// state-circle lengths match dual degrees, boundary components of G match
/// the circles of S_(A^c) in G^A, and even-face G iff Eulerian G*.
inline VerificationReport verify_structure(const ArrowPresentation& ap, const std::string& instance, const VerifyOptions& opt = {}) {
    const TransitionSystem ts(ap);
    detail::require_size(ts, opt);
    const auto m = ts.edge_count();
    const detail::DualTable duals(ts);
    const auto& idx = ts.edges();
    const auto faces = boundary_components(ts).count();
    VerificationReport report;
    ReportEntry bip{"lemma.bipartite-even-face", instance};
    ReportEntry deg{"state-degree.bijection", instance};
    ReportEntry seg{"dual.boundary-lemma", instance};
    for (const auto& a : all_subsets(m)) {
        const auto& ga = duals[a];
        ++bip.checks;
        if (bip.outcome == Outcome::pass && is_bipartite(ga) && !is_even_face(ga)) {
            bip.outcome = Outcome::fail;
            bip.witness = {{"A", edge_set_json(a, idx)}};
        }
        ++deg.checks;
        auto lengths = state_circles(ts, a).lengths();
        auto degrees = degree_sequence(parse(serialize(ga)));
        std::sort(lengths.begin(), lengths.end());
        std::sort(degrees.begin(), degrees.end());
        if (deg.outcome == Outcome::pass && lengths != degrees) {
            deg.outcome = Outcome::fail;
            deg.witness = {{"A", edge_set_json(a, idx)}};
        }
        ++seg.checks;
        if (seg.outcome == Outcome::pass && state_circles(ga, a.complement()).count() != faces) {
            seg.outcome = Outcome::fail;
            seg.witness = {{"A", edge_set_json(a, idx)}};
        }
    }
    report.add(std::move(bip));
    report.add(std::move(deg));
    report.add(std::move(seg));

    ReportEntry dual{"even-face.dual-eulerian", instance};
    dual.checks = 1;
    if (is_even_face(ap) != is_eulerian(duals[EdgeSet(m, true)])) dual.outcome = Outcome::fail;
    report.add(std::move(dual));
    return report;
}

/// Every applicable check for one instance. The bipartite characterization
/// only runs on orientable instances.
inline VerificationReport verify_instance(const Instance& inst, const VerifyOptions& opt = {},
                                          const DualIdentityOptions& dual_opt = {}) {
    VerificationReport r;
    r.merge(verify_main_theorem(inst.presentation, inst.name, opt));
    if (is_orientable(inst.presentation)) r.merge(verify_bipartite_characterization(inst.presentation, inst.name, opt));
    r.merge(verify_eulerian_characterization(inst.presentation, inst.name, opt));
    r.merge(verify_bounds(inst.presentation, inst.name, opt));
    r.merge(verify_structure(inst.presentation, inst.name, opt));
    r.merge(check_dual_identities(inst.presentation, inst.name, dual_opt));
    return r;
}

/// Fixture expectations against computed invariants.
inline VerificationReport verify_fixtures() {
    VerificationReport r;
    for (const auto& f : fixture_catalog()) {
        const auto ap = f.presentation();
        const auto s = surface_invariants(ap);
        const TransitionSystem ts(ap);
        ReportEntry e{"fixture.invariants", "fixture/" + f.name};
        e.checks = 1;
        const auto& x = f.expected;
        bool ok = s.vertex_count == x.vertices && s.edge_count == x.edges && s.boundary_count == x.faces &&
                  s.euler_characteristic == x.euler_characteristic && s.orientable == x.orientable && s.genus == x.genus;
        if (x.t && straight_ahead_walks(ts).t != *x.t) ok = false;
        if (x.n_ct && enumerate_crossing_total(ts).directions.size() != *x.n_ct) ok = false;
        if (!ok) {
            e.outcome = Outcome::fail;
            e.witness = {{"V", s.vertex_count}, {"E", s.edge_count}, {"F", s.boundary_count}, {"chi", s.euler_characteristic},
                         {"orientable", s.orientable}, {"genus", s.genus}};
        }
        r.add(std::move(e));
    }
    return r;
}

/// Applies `fn` to every element on `threads` workers; results keep input order.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& items, Fn fn, unsigned threads = 0) {
    using R = decltype(fn(items.front()));
    std::vector<R> results(items.size());
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, items.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) results[i] = fn(items[i]);
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return results;
}

inline VerificationReport verify_corpus(const std::vector<Instance>& instances, const VerifyOptions& opt = {},
                                        const DualIdentityOptions& dual_opt = {}, unsigned threads = 0) {
    const auto parts = parallel_map(instances, [&](const Instance& inst) { return verify_instance(inst, opt, dual_opt); }, threads);
    VerificationReport r;
    for (const auto& p : parts) r.merge(p);
    return r;
}

// ---------------------------------------------------------------------------
// Counterexamples to the bipartite characterization on non-orientable graphs

enum class WitnessKind { c_set_not_bipartite, bipartite_not_c_set };

inline const char* to_string(WitnessKind k) noexcept {
    return k == WitnessKind::c_set_not_bipartite ? "c-set-not-bipartite" : "bipartite-not-c-set";
}

struct CounterexampleWitness {
    WitnessKind kind;
    EdgeSet a;
    std::optional<Direction> direction;  // the all-crossing direction producing `a`, when applicable
};

struct Counterexample {
    ArrowPresentation graph;
    std::size_t t = 0;
    std::vector<CounterexampleWitness> witnesses;
    /// All all-crossing directions give the same c-edge set and the partial
    /// dual with respect to it has a loop.
    bool unique_partition_with_loop = false;
};

/// Checks one non-orientable graph; nullopt when the characterization happens to hold.
inline std::optional<Counterexample> bipartite_counterexample(const ArrowPresentation& ap) {
    const TransitionSystem ts(ap);
    const auto m = ts.edge_count();
    const detail::DualTable duals(ts);
    const auto ac = enumerate_all_crossing(ts);
    Counterexample cx{ap, straight_ahead_walks(ts).t, {}, false};
    const auto c_sets = all_crossing_c_sets(ac);
    for (const auto& s : c_sets) {
        if (is_bipartite(duals[s])) continue;
        const auto it = std::find_if(ac.begin(), ac.end(), [&](const auto& cd) { return cd.classification.c == s; });
        cx.witnesses.push_back({WitnessKind::c_set_not_bipartite, s, it->direction});
    }
    for (const auto& a : all_subsets(m))
        if (is_bipartite(duals[a]) && !c_sets.count(a)) cx.witnesses.push_back({WitnessKind::bipartite_not_c_set, a, std::nullopt});
    if (cx.witnesses.empty()) return std::nullopt;
    cx.unique_partition_with_loop = c_sets.size() == 1 && has_loop(duals[*c_sets.begin()]);
    return cx;
}

/// Every non-orientable generated graph with 1..max_edges edges on which the
/// bipartite characterization fails, with witnesses.
inline std::vector<Counterexample> counterexample_search(std::size_t max_edges, unsigned threads = 0) {
    if (max_edges > 4) throw std::invalid_argument("counterexample search is capped at 4 edges");
    std::vector<ArrowPresentation> candidates;
    for (std::size_t n = 1; n <= max_edges; ++n)
        for (auto& ap : generate_all(n, 2 * n))
            if (!is_orientable(ap)) candidates.push_back(std::move(ap));
    const auto found = parallel_map(candidates, [](const ArrowPresentation& ap) { return bipartite_counterexample(ap); }, threads);
    std::vector<Counterexample> out;
    for (const auto& f : found)
        if (f) out.push_back(*f);
    return out;
}

}  // namespace ribbon
