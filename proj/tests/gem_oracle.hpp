#pragma once

// Test-only oracle. A ribbon graph is modelled as a generalized map: four
// flags per edge (the two ends of each of its two arrows) and three
// fixed-point-free involutions
//   a0: along an edge line segment (head of one arrow to tail of the other)
//   a1: along a vertex line segment (to the neighbouring arrow end on the circle)
//   a2: across an arrow (tail <-> head)
// Vertices, faces and connectivity are orbits computed by union-find, the
// partial dual G^A swaps a0 and a2 on the flags of edges in A, and
// orientability is bipartiteness of the flag graph. Medial directions are
// brute-forced over every orientation of the a1-pairs.
//
// Only the parsed circles are read from the library; everything else is
// recomputed here.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ribbon/presentation.hpp"

namespace oracle {

class Gem {
public:
    explicit Gem(const ribbon::ArrowPresentation& ap) {
        std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> occ;
        const auto& cs = ap.circles();
        for (std::size_t c = 0; c < cs.size(); ++c) {
            if (cs[c].occurrences.empty()) ++isolated_;
            for (std::size_t p = 0; p < cs[c].occurrences.size(); ++p) occ[cs[c].occurrences[p].label].push_back({c, p});
        }
        for (const auto& [label, v] : occ) labels_.push_back(label);
        std::sort(labels_.begin(), labels_.end(), ribbon::label_less);
        std::map<std::string, std::size_t> id;
        for (std::size_t e = 0; e < labels_.size(); ++e) id[labels_[e]] = e;

        const auto n = 4 * labels_.size();
        a0_.resize(n);
        a1_.resize(n);
        a2_.resize(n);
        // flag(e, k, end): k-th arrow of e (circle order), end 0 = tail, 1 = head
        // before[c][p] / after[c][p]: flag sitting on that side of occurrence p
        std::vector<std::vector<std::size_t>> before(cs.size()), after(cs.size());
        for (std::size_t c = 0; c < cs.size(); ++c) {
            before[c].resize(cs[c].occurrences.size());
            after[c].resize(cs[c].occurrences.size());
        }
        for (const auto& [label, v] : occ) {
            const auto e = id[label];
            for (std::size_t k = 0; k < 2; ++k) {
                const auto [c, p] = v[k];
                const bool plus = cs[c].occurrences[p].flag == ribbon::Flag::plus;
                const auto tail = flag(e, k, 0), head = flag(e, k, 1);
                before[c][p] = plus ? tail : head;
                after[c][p] = plus ? head : tail;
                a2_[tail] = head;
                a2_[head] = tail;
            }
            a0_[flag(e, 0, 1)] = flag(e, 1, 0);
            a0_[flag(e, 1, 0)] = flag(e, 0, 1);
            a0_[flag(e, 1, 1)] = flag(e, 0, 0);
            a0_[flag(e, 0, 0)] = flag(e, 1, 1);
        }
        for (std::size_t c = 0; c < cs.size(); ++c) {
            const auto d = cs[c].occurrences.size();
            for (std::size_t p = 0; p < d; ++p) {
                const auto x = after[c][p], y = before[c][(p + 1) % d];
                a1_[x] = y;
                a1_[y] = x;
            }
        }
    }

    static std::size_t flag(std::size_t e, std::size_t k, std::size_t end) { return 4 * e + 2 * k + end; }
    std::size_t edge_count() const { return labels_.size(); }
    std::size_t flag_count() const { return a0_.size(); }
    std::size_t isolated() const { return isolated_; }
    const std::vector<std::size_t>& a0() const { return a0_; }
    const std::vector<std::size_t>& a1() const { return a1_; }
    const std::vector<std::size_t>& a2() const { return a2_; }

    /// Orbit id per flag under the group generated by `gens`.
    static std::vector<std::size_t> orbits(std::size_t n, const std::vector<const std::vector<std::size_t>*>& gens) {
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto* g : gens)
            for (std::size_t x = 0; x < n; ++x) parent[find(x)] = find((*g)[x]);
        std::vector<std::size_t> out(n);
        for (std::size_t x = 0; x < n; ++x) out[x] = find(x);
        return out;
    }

    /// Involutions of G^A: a0 and a2 exchanged on flags of edges in `mask`.
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> dual_involutions(std::uint64_t mask) const {
        auto b0 = a0_, b2 = a2_;
        for (std::size_t x = 0; x < flag_count(); ++x)
            if ((mask >> (x / 4)) & 1U) std::swap(b0[x], b2[x]);
        return {b0, b2};
    }

    static std::vector<std::size_t> orbit_sizes(const std::vector<std::size_t>& orb) {
        std::map<std::size_t, std::size_t> count;
        for (auto r : orb) ++count[r];
        std::vector<std::size_t> s;
        for (const auto& [r, n] : count) s.push_back(n);
        return s;
    }

    /// Sorted vertex degrees of G^A, isolated vertices included.
    std::vector<std::size_t> dual_degrees(std::uint64_t mask) const {
        const auto [b0, b2] = dual_involutions(mask);
        std::vector<std::size_t> d(isolated_, 0);
        for (auto s : orbit_sizes(orbits(flag_count(), {&a1_, &b2}))) d.push_back(s / 2);
        std::sort(d.begin(), d.end());
        return d;
    }

    /// Sorted face degrees of G^A; each isolated vertex bounds one face of degree 0.
    std::vector<std::size_t> dual_face_degrees(std::uint64_t mask) const {
        const auto [b0, b2] = dual_involutions(mask);
        std::vector<std::size_t> d(isolated_, 0);
        for (auto s : orbit_sizes(orbits(flag_count(), {&a1_, &b0}))) d.push_back(s / 2);
        std::sort(d.begin(), d.end());
        return d;
    }

    bool dual_bipartite(std::uint64_t mask) const {
        const auto [b0, b2] = dual_involutions(mask);
        const auto vert = orbits(flag_count(), {&a1_, &b2});
        // endpoints of edge e in G^A: the two b2-classes among its four flags
        std::map<std::size_t, std::vector<std::size_t>> adj;
        for (std::size_t e = 0; e < edge_count(); ++e) {
            const auto x = flag(e, 0, 0);
            std::size_t y = x;
            for (std::size_t f = 4 * e; f < 4 * e + 4; ++f)
                if (f != x && f != b2[x]) y = f;
            const auto u = vert[x], v = vert[y];
            if (u == v) return false;
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        std::map<std::size_t, int> colour;
        for (const auto& [s, _] : adj) {
            if (colour.count(s)) continue;
            std::vector<std::size_t> stack{s};
            colour[s] = 0;
            while (!stack.empty()) {
                const auto u = stack.back();
                stack.pop_back();
                for (auto w : adj[u]) {
                    if (!colour.count(w)) {
                        colour[w] = 1 - colour[u];
                        stack.push_back(w);
                    } else if (colour[w] == colour[u]) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    bool orientable() const {
        std::vector<int> colour(flag_count(), -1);
        for (std::size_t s = 0; s < flag_count(); ++s) {
            if (colour[s] >= 0) continue;
            colour[s] = 0;
            std::vector<std::size_t> stack{s};
            while (!stack.empty()) {
                const auto x = stack.back();
                stack.pop_back();
                for (const auto* g : {&a0_, &a1_, &a2_}) {
                    const auto y = (*g)[x];
                    if (colour[y] < 0) {
                        colour[y] = 1 - colour[x];
                        stack.push_back(y);
                    } else if (colour[y] == colour[x]) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    std::size_t vertex_count() const { return dual_degrees(0).size(); }
    std::size_t face_count() const { return dual_face_degrees(0).size(); }

    std::size_t component_count() const {
        const auto orb = orbits(flag_count(), {&a0_, &a1_, &a2_});
        return orbit_sizes(orb).size() + isolated_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::size_t> a0_, a1_, a2_;
    std::size_t isolated_ = 0;
};

/// Brute force over every orientation of the medial edges (a1-pairs).
struct DirectionCensus {
    std::size_t crossing_total = 0;
    std::size_t all_crossing = 0;
    std::set<std::uint64_t> eulerian;        // masks D ∪ T'
    std::set<std::uint64_t> even_face;       // masks C ∪ T'
    std::set<std::uint64_t> all_crossing_c;  // c-edge masks of all-crossing directions
};

inline DirectionCensus census(const Gem& gem) {
    const auto& a0 = gem.a0();
    const auto& a1 = gem.a1();
    const auto& a2 = gem.a2();
    std::vector<std::size_t> heads_of;  // one representative per medial edge
    for (std::size_t x = 0; x < gem.flag_count(); ++x)
        if (x < a1[x]) heads_of.push_back(x);
    const auto m = heads_of.size();
    const auto edges = gem.edge_count();
    DirectionCensus out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<bool> in(gem.flag_count());
        for (std::size_t i = 0; i < m; ++i) {
            const bool at_rep = ((mask >> i) & 1U) != 0;
            in[heads_of[i]] = at_rep;
            in[a1[heads_of[i]]] = !at_rep;
        }
        std::uint64_t c = 0, d = 0, t = 0;
        bool ok = true;
        for (std::size_t e = 0; e < edges && ok; ++e) {
            std::size_t ins = 0;
            for (std::size_t f = 4 * e; f < 4 * e + 4; ++f) ins += in[f] ? 1 : 0;
            if (ins == 0 || ins == 4) {
                t |= std::uint64_t{1} << e;
            } else if (ins == 2) {
                // ins joined by a2 -> black pair -> c; by a0 -> white pair -> d
                std::size_t first_in = 4 * e;
                while (!in[first_in]) ++first_in;
                std::size_t second_in = first_in + 1;
                while (!in[second_in]) ++second_in;
                if (a2[first_in] == second_in)
                    c |= std::uint64_t{1} << e;
                else if (a0[first_in] == second_in)
                    d |= std::uint64_t{1} << e;
                else
                    ok = false;  // diagonal: ins are the two tails or the two heads
            } else {
                ok = false;
            }
        }
        if (!ok) continue;
        ++out.crossing_total;
        if (t == 0) {
            ++out.all_crossing;
            out.all_crossing_c.insert(c);
        }
        for (std::uint64_t sub = t;; sub = (sub - 1) & t) {
            out.eulerian.insert(d | sub);
            out.even_face.insert(c | sub);
            if (sub == 0) break;
        }
    }
    return out;
}

}  // namespace oracle
