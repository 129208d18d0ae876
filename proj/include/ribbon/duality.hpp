#pragma once

// Partial duality, orientability, surface invariants and normal forms.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ribbon/presentation.hpp"
#include "ribbon/report.hpp"
#include "ribbon/tracing.hpp"

namespace ribbon {

inline nlohmann::json edge_set_json(const EdgeSet& s, const EdgeIndex& idx) {
    auto arr = nlohmann::json::array();
    for (auto e : s.members()) arr.push_back(idx.label(e));
    return arr;
}

/// Image of a gap of the dual in the original presentation. Vertex line
/// segments are shared between G and G^A.
struct GapImage {
    std::size_t gap = 0;
    bool same_direction = true;
};

struct DualCorrespondence {
    ArrowPresentation dual;
    std::vector<GapImage> gap_image;  // indexed by gap id of `dual`
};

/// Arrow presentation built from traced state circles. Each arrow site
/// becomes a marking arrow pointing along the edge-disc orientation: the
/// black pairs 0->1, 2->3 run along the original arrows, the white pairs
/// 1->2, 3->0 along the edge line segments.
inline DualCorrespondence presentation_from_walks(const TransitionSystem& ts, const StateCircles& sc) {
    DualCorrespondence out;
    std::vector<Circle> circles;
    for (std::size_t i = 0; i < sc.walks.size(); ++i) {
        const auto& w = sc.walks[i];
        Circle c{"C" + std::to_string(i + 1), {}};
        if (w.isolated_gap) out.gap_image.push_back({*w.isolated_gap, true});
        for (const auto& s : w.steps) {
            if ((s.from ^ s.to) == 2) throw std::invalid_argument("crossing transitions do not define a presentation");
            const bool along = s.to == (s.from + 1) % 4;
            c.occurrences.push_back({ts.edges().label(s.edge), along ? Flag::plus : Flag::minus});
            out.gap_image.push_back({s.gap, s.forward});
        }
        circles.push_back(std::move(c));
    }
    out.dual = ArrowPresentation(std::move(circles));
    return out;
}

inline DualCorrespondence partial_dual_with_gaps(const TransitionSystem& ts, const EdgeSet& a) {
    return presentation_from_walks(ts, state_circles(ts, a));
}

inline ArrowPresentation partial_dual(const TransitionSystem& ts, const EdgeSet& a) { return partial_dual_with_gaps(ts, a).dual; }

inline ArrowPresentation partial_dual(const ArrowPresentation& ap, const EdgeSet& a) { return partial_dual(TransitionSystem(ap), a); }

/// Partial dual with respect to the edges named in `labels`.
inline ArrowPresentation partial_dual(const ArrowPresentation& ap, const std::vector<std::string>& labels) {
    const TransitionSystem ts(ap);
    EdgeSet a(ts.edge_count());
    for (const auto& l : labels) {
        const auto e = ts.edges().find(l);
        if (!e) throw std::invalid_argument("unknown edge label " + l);
        a.insert(*e);
    }
    return partial_dual(ts, a);
}

inline ArrowPresentation geometric_dual(const ArrowPresentation& ap) {
    const TransitionSystem ts(ap);
    return partial_dual(ts, EdgeSet(ts.edge_count(), true));
}

// ---------------------------------------------------------------------------
// Orientability and surface invariants

namespace detail {

/// Union-find over circles that tracks the parity of reversal bits.
class ParityUnionFind {
public:
    explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::pair<std::size_t, int> find(std::size_t x) {
        int p = 0;
        std::size_t r = x;
        while (parent_[r] != r) {
            p ^= parity_[r];
            r = parent_[r];
        }
        // path compression
        int acc = p;
        while (parent_[x] != x) {
            const auto next = parent_[x];
            const int px = parity_[x];
            parent_[x] = r;
            parity_[x] = acc;
            acc ^= px;
            x = next;
        }
        return {r, p};
    }

    /// Requires bit(a) xor bit(b) == rel; false on contradiction.
    bool unite(std::size_t a, std::size_t b, int rel) {
        const auto [ra, pa] = find(a);
        const auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        parent_[ra] = rb;
        parity_[ra] = pa ^ pb ^ rel;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> parity_;
};

struct ComponentData {
    std::vector<std::size_t> circle_component;  // component id per circle
    std::size_t count = 0;
    std::vector<bool> orientable;  // per component
};

inline ComponentData components_and_orientability(const ArrowPresentation& ap, const EdgeIndex& idx) {
    const auto n = ap.vertex_count();
    ParityUnionFind uf(n);
    std::vector<std::pair<std::size_t, bool>> conflicts;  // circle in a conflicting component
    for (std::size_t e = 0; e < idx.size(); ++e) {
        const auto& [o1, o2] = idx.ends(e);
        const auto f1 = ap.circles()[o1.circle].occurrences[o1.position].flag;
        const auto f2 = ap.circles()[o2.circle].occurrences[o2.position].flag;
        if (!uf.unite(o1.circle, o2.circle, f1 != f2 ? 1 : 0)) conflicts.emplace_back(o1.circle, true);
    }
    ComponentData d;
    d.circle_component.resize(n);
    std::map<std::size_t, std::size_t> root_id;
    for (std::size_t c = 0; c < n; ++c) {
        const auto r = uf.find(c).first;
        auto [it, inserted] = root_id.emplace(r, root_id.size());
        d.circle_component[c] = it->second;
    }
    d.count = root_id.size();
    d.orientable.assign(d.count, true);
    for (const auto& [c, _] : conflicts) d.orientable[d.circle_component[c]] = false;
    return d;
}

}  // namespace detail

/// True iff reversal bits exist per circle so that both arrows of every
/// label point the same way relative to their (possibly reversed) circles.
inline bool is_orientable(const ArrowPresentation& ap) {
    const EdgeIndex idx(ap);
    const auto d = detail::components_and_orientability(ap, idx);
    return std::all_of(d.orientable.begin(), d.orientable.end(), [](bool b) { return b; });
}

enum class GenusKind { orientable, euler };

inline const char* to_string(GenusKind k) noexcept { return k == GenusKind::orientable ? "orientable" : "euler"; }

struct SurfaceInvariants {
    std::size_t components = 0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::size_t boundary_count = 0;
    long euler_characteristic = 0;
    bool orientable = true;
    /// Sum over components: (2 - chi)/2 on orientable components, 2 - chi
    /// (Euler genus) on non-orientable ones.
    long genus = 0;
    GenusKind genus_kind = GenusKind::orientable;

    friend bool operator==(const SurfaceInvariants&, const SurfaceInvariants&) = default;
};

inline SurfaceInvariants surface_invariants(const ArrowPresentation& ap) {
    const TransitionSystem ts(ap);
    const auto& idx = ts.edges();
    const auto comp = detail::components_and_orientability(ap, idx);
    const auto faces = boundary_components(ts);

    std::vector<long> chi(comp.count, 0);
    for (std::size_t c = 0; c < ap.vertex_count(); ++c) ++chi[comp.circle_component[c]];
    for (std::size_t e = 0; e < idx.size(); ++e) --chi[comp.circle_component[idx.ends(e).first.circle]];
    for (const auto& w : faces.walks) {
        const auto g = w.isolated_gap ? *w.isolated_gap : w.steps.front().gap;
        ++chi[comp.circle_component[ts.gaps()[g].circle]];
    }

    SurfaceInvariants s;
    s.components = comp.count;
    s.vertex_count = ap.vertex_count();
    s.edge_count = idx.size();
    s.boundary_count = faces.count();
    s.euler_characteristic = static_cast<long>(s.vertex_count) - static_cast<long>(s.edge_count) + static_cast<long>(s.boundary_count);
    for (std::size_t k = 0; k < comp.count; ++k) {
        if (comp.orientable[k]) {
            s.genus += (2 - chi[k]) / 2;
        } else {
            s.orientable = false;
            s.genus += 2 - chi[k];
        }
    }
    s.genus_kind = s.orientable ? GenusKind::orientable : GenusKind::euler;
    return s;
}

// ---------------------------------------------------------------------------
// Normal form

struct NormalForm {
    std::string text;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
    friend auto operator<=>(const NormalForm&, const NormalForm&) = default;
};

namespace detail {

using Token = std::pair<std::size_t, Flag>;  // (label rank, flag)

struct CircleChoice {
    std::size_t rotation = 0;
    bool reversed = false;
};

inline std::vector<std::size_t> occurrence_order(std::size_t d, CircleChoice ch) {
    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i) order[i] = ch.reversed ? (ch.rotation + d - i) % d : (ch.rotation + i) % d;
    return order;
}

}  // namespace detail

/// Canonical text under circle rotation, circle reversal (with flag flips),
/// arrow-pair flips and circle reordering. Labels are never permuted.
///
/// Circles are first placed by a flag-free key that only records, for
/// labels with both arrows on the same circle, whether the two flags agree
/// (that bit is invariant under every move). The remaining freedom, ties of
/// that key, is resolved by brute force over the final text, where pair
/// flips make the first arrow of every label `+`.
inline NormalForm normal_form(const ArrowPresentation& ap) {
    using detail::CircleChoice;
    using detail::Token;
    const EdgeIndex idx(ap);
    const auto& cs = ap.circles();
    const auto n = cs.size();

    std::vector<int> kind(idx.size(), 0);  // 0 cross-circle, 1 same-circle equal flags, 2 same-circle opposite
    for (std::size_t e = 0; e < idx.size(); ++e) {
        const auto& [a, b] = idx.ends(e);
        if (a.circle == b.circle)
            kind[e] = cs[a.circle].occurrences[a.position].flag == cs[b.circle].occurrences[b.position].flag ? 1 : 2;
    }

    using Key = std::vector<std::pair<std::size_t, int>>;
    std::vector<Key> best_key(n);
    std::vector<std::vector<CircleChoice>> ties(n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto d = cs[c].degree();
        if (d == 0) {
            ties[c].push_back({});
            continue;
        }
        for (int rev = 0; rev < 2; ++rev) {
            for (std::size_t r = 0; r < d; ++r) {
                const CircleChoice ch{r, rev == 1};
                Key key;
                for (auto p : detail::occurrence_order(d, ch)) {
                    const auto e = idx.at(cs[c].occurrences[p].label);
                    key.emplace_back(e, kind[e]);
                }
                if (ties[c].empty() || key < best_key[c]) {
                    best_key[c] = std::move(key);
                    ties[c] = {ch};
                } else if (key == best_key[c]) {
                    ties[c].push_back(ch);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return best_key[a] < best_key[b]; });

    // Circles with equal keys may be listed in any order.
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) in `order`
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && best_key[order[j]] == best_key[order[i]]) ++j;
        if (j - i > 1) groups.emplace_back(i, j);
        i = j;
    }

    std::vector<std::vector<Token>> best;
    bool have_best = false;
    std::vector<std::size_t> tie_pick(n, 0);

    auto evaluate = [&]() {
        std::vector<std::vector<Token>> cand(n);
        std::vector<int> flip(idx.size(), -1);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = order[i];
            const auto ch = ties[c][tie_pick[c]];
            for (auto p : detail::occurrence_order(cs[c].degree(), ch)) {
                const auto& o = cs[c].occurrences[p];
                const auto e = idx.at(o.label);
                Flag f = ch.reversed ? flipped(o.flag) : o.flag;
                if (flip[e] < 0) flip[e] = f == Flag::minus ? 1 : 0;
                if (flip[e] == 1) f = flipped(f);
                cand[i].emplace_back(e, f);
            }
        }
        if (!have_best || cand < best) {
            best = std::move(cand);
            have_best = true;
        }
    };

    auto over_ties = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            evaluate();
            return;
        }
        const auto c = order[i];
        for (std::size_t k = 0; k < ties[c].size(); ++k) {
            tie_pick[c] = k;
            self(self, i + 1);
        }
    };

    auto over_groups = [&](auto&& self, std::size_t gi) -> void {
        if (gi == groups.size()) {
            over_ties(over_ties, 0);
            return;
        }
        const auto [b, e] = groups[gi];
        std::sort(order.begin() + static_cast<long>(b), order.begin() + static_cast<long>(e));
        do {
            self(self, gi + 1);
        } while (std::next_permutation(order.begin() + static_cast<long>(b), order.begin() + static_cast<long>(e)));
    };

    over_groups(over_groups, 0);

    std::string text;
    for (std::size_t i = 0; i < n; ++i) {
        text += "C" + std::to_string(i + 1) + ":";
        for (const auto& [e, f] : best[i]) {
            text += ' ';
            text += idx.label(e);
            text += flag_char(f);
        }
        text += '\n';
    }
    return {std::move(text)};
}

inline bool equivalent(const ArrowPresentation& a, const ArrowPresentation& b) { return normal_form(a) == normal_form(b); }

// ---------------------------------------------------------------------------
// Identity checks

struct DualIdentityOptions {
    /// Exhaustive over all (A, B) pairs when 4^|E| does not exceed this;
    /// otherwise `samples` random pairs are drawn.
    std::size_t exhaustive_pair_limit = 4096;
    std::size_t samples = 256;
    std::uint64_t seed = 1;
};

inline VerificationReport check_dual_identities(const ArrowPresentation& ap, const std::string& instance,
                                                const DualIdentityOptions& opt = {}) {
    VerificationReport report;
    const TransitionSystem ts(ap);
    const auto& idx = ts.edges();
    const auto m = idx.size();

    {
        ReportEntry e{"dual.empty-identity", instance};
        e.checks = 1;
        if (!(partial_dual(ts, EdgeSet(m)) == ap)) {
            e.outcome = Outcome::fail;
            e.witness = {{"A", nlohmann::json::array()}};
        }
        report.add(std::move(e));
    }

    std::vector<std::pair<EdgeSet, EdgeSet>> pairs;
    if (m < 16 && (std::uint64_t{1} << (2 * m)) <= opt.exhaustive_pair_limit) {
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a)
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b)
                pairs.emplace_back(EdgeSet::from_mask(m, a), EdgeSet::from_mask(m, b));
    } else {
        std::mt19937_64 rng(opt.seed);
        std::bernoulli_distribution coin(0.5);
        for (std::size_t i = 0; i < opt.samples; ++i) {
            EdgeSet a(m), b(m);
            for (std::size_t k = 0; k < m; ++k) {
                if (coin(rng)) a.insert(k);
                if (coin(rng)) b.insert(k);
            }
            pairs.emplace_back(std::move(a), std::move(b));
        }
    }

    {
        ReportEntry e{"dual.composition", instance};
        ReportEntry weak{"dual.composition.surface-only", instance, Outcome::pass};
        std::size_t weak_count = 0;
        std::map<std::uint64_t, ArrowPresentation> cache;
        auto dual_of = [&](const EdgeSet& s) -> const ArrowPresentation& {
            auto it = cache.find(s.mask());
            if (it == cache.end()) it = cache.emplace(s.mask(), partial_dual(ts, s)).first;
            return it->second;
        };
        for (const auto& [a, b] : pairs) {
            ++e.checks;
            const auto& ga = dual_of(a);
            const TransitionSystem tsa(ga);
            // EdgeSet indices agree because labels and label order are unchanged.
            const auto lhs = partial_dual(tsa, b);
            const auto& rhs = dual_of(a.symmetric_difference(b));
            if (normal_form(lhs) == normal_form(rhs)) continue;
            if (surface_invariants(lhs) == surface_invariants(rhs)) {
                ++weak_count;
                weak.outcome = Outcome::surface_only;
                if (weak.witness.is_null()) weak.witness = {{"A", edge_set_json(a, idx)}, {"B", edge_set_json(b, idx)}};
                continue;
            }
            e.outcome = Outcome::fail;
            e.witness = {{"A", edge_set_json(a, idx)}, {"B", edge_set_json(b, idx)}, {"lhs", serialize(lhs)}, {"rhs", serialize(rhs)}};
            break;
        }
        weak.checks = weak_count;
        report.add(std::move(e));
        if (weak_count > 0) report.add(std::move(weak));
    }

    {
        ReportEntry e{"dual.orientability", instance};
        const bool base = is_orientable(ap);
        std::vector<EdgeSet> subsets;
        if (m <= 12) {
            subsets = all_subsets(m);
        } else {
            for (const auto& p : pairs) subsets.push_back(p.first);
        }
        for (const auto& a : subsets) {
            ++e.checks;
            if (is_orientable(partial_dual(ts, a)) != base) {
                e.outcome = Outcome::fail;
                e.witness = {{"A", edge_set_json(a, idx)}};
                break;
            }
        }
        report.add(std::move(e));
    }

    {
        ReportEntry e{"dual.genus", instance};
        e.checks = 1;
        const auto s = surface_invariants(ap);
        const auto sd = surface_invariants(partial_dual(ts, EdgeSet(m, true)));
        if (s.genus != sd.genus || s.orientable != sd.orientable) {
            e.outcome = Outcome::fail;
            e.witness = {{"A", "ALL"}};
            e.detail = "genus " + std::to_string(s.genus) + " vs dual " + std::to_string(sd.genus);
        }
        report.add(std::move(e));
    }
    return report;
}

}  // namespace ribbon
