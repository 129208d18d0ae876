#pragma once

// Transition system of the medial graph and closed-walk tracing.
//
// Every arrow occurrence has two sides on its circle: the arc before it and
// the arc after it (w.r.t. the stored traversal). Each side is a "slot"; a
// slot is one end of a gap (vertex line segment). At every edge the four
// slots are arranged in the cyclic order
//     0 = tail(o1), 1 = head(o1), 2 = tail(o2), 3 = head(o2)
// where o1 is the first occurrence of the label in circle order. A + arrow
// has its tail on the preceding arc, a - arrow on the following arc.
//
// The three perfect matchings on those four slots are
//     black    {0,1} {2,3}   (follow the vertex circle past the arrow)
//     white    {1,2} {3,0}   (follow an edge line segment)
//     crossing {0,2} {1,3}   (straight ahead through the medial vertex)

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ribbon/presentation.hpp"

namespace ribbon {

enum class Smoothing : std::uint8_t { black, white, crossing };

/// Position (0..3) paired with `pos` under `s`.
constexpr std::uint8_t paired_position(Smoothing s, std::uint8_t pos) noexcept {
    switch (s) {
        case Smoothing::black: return static_cast<std::uint8_t>(pos ^ 1U);
        case Smoothing::white: return static_cast<std::uint8_t>(pos % 2 == 0 ? (pos + 3) % 4 : (pos + 1) % 4);
        case Smoothing::crossing: return static_cast<std::uint8_t>((pos + 2) % 4);
    }
    return pos;
}

struct Gap {
    std::size_t circle = 0;
    std::size_t position = 0;  // arc preceding occurrence `position`
    bool medial = false;       // false only for the arc of a degree-0 circle
    std::size_t start_slot = 0;
    std::size_t end_slot = 0;
};

struct Slot {
    std::size_t edge = 0;
    std::uint8_t position = 0;  // index in the edge's cyclic order
    std::size_t gap = 0;
    bool is_gap_start = false;  // a forward traversal of `gap` leaves from here
};

class TransitionSystem {
public:
    explicit TransitionSystem(const ArrowPresentation& ap) : index_(ap) {
        const auto& cs = ap.circles();
        std::vector<std::size_t> occ_base(cs.size());
        std::size_t occ_total = 0;
        for (std::size_t c = 0; c < cs.size(); ++c) {
            occ_base[c] = occ_total;
            occ_total += cs[c].degree();
        }
        slots_.resize(2 * occ_total);
        cyclic_.resize(index_.size());

        // slot 2k is the preceding side of global occurrence k, 2k+1 the following side
        for (std::size_t c = 0; c < cs.size(); ++c) {
            const auto d = cs[c].degree();
            if (d == 0) {
                gaps_.push_back({c, 0, false, 0, 0});
                continue;
            }
            for (std::size_t j = 0; j < d; ++j) {
                const auto prev = occ_base[c] + (j + d - 1) % d;
                const auto cur = occ_base[c] + j;
                const auto g = gaps_.size();
                gaps_.push_back({c, j, true, 2 * prev + 1, 2 * cur});
                slots_[2 * prev + 1].gap = g;
                slots_[2 * prev + 1].is_gap_start = true;
                slots_[2 * cur].gap = g;
                slots_[2 * cur].is_gap_start = false;
            }
        }

        for (std::size_t e = 0; e < index_.size(); ++e) {
            const auto& ends = index_.ends(e);
            const OccurrenceRef occ[2] = {ends.first, ends.second};
            for (int k = 0; k < 2; ++k) {
                const auto global = occ_base[occ[k].circle] + occ[k].position;
                const auto flag = cs[occ[k].circle].occurrences[occ[k].position].flag;
                const auto tail = flag == Flag::plus ? 2 * global : 2 * global + 1;
                const auto head = flag == Flag::plus ? 2 * global + 1 : 2 * global;
                cyclic_[e][2 * k] = tail;
                cyclic_[e][2 * k + 1] = head;
            }
            for (std::uint8_t p = 0; p < 4; ++p) {
                slots_[cyclic_[e][p]].edge = e;
                slots_[cyclic_[e][p]].position = p;
            }
        }
    }

    const EdgeIndex& edges() const noexcept { return index_; }
    std::size_t edge_count() const noexcept { return index_.size(); }
    const std::vector<Gap>& gaps() const noexcept { return gaps_; }
    const std::vector<Slot>& slots() const noexcept { return slots_; }

    /// Slot ids in cyclic order (tail(o1), head(o1), tail(o2), head(o2)).
    const std::array<std::size_t, 4>& cyclic_slots(std::size_t e) const { return cyclic_.at(e); }

    /// Gap ids in cyclic order around the medial vertex of `e`.
    std::array<std::size_t, 4> cyclic_gaps(std::size_t e) const {
        std::array<std::size_t, 4> g{};
        for (std::size_t p = 0; p < 4; ++p) g[p] = slots_[cyclic_.at(e)[p]].gap;
        return g;
    }

    /// The other end of the gap that `slot` bounds.
    std::size_t across_gap(std::size_t slot) const {
        const auto& g = gaps_[slots_[slot].gap];
        return slots_[slot].is_gap_start ? g.end_slot : g.start_slot;
    }

    std::size_t medial_edge_count() const noexcept { return slots_.size() / 2; }

private:
    EdgeIndex index_;
    std::vector<Gap> gaps_;
    std::vector<Slot> slots_;
    std::vector<std::array<std::size_t, 4>> cyclic_;
};

inline TransitionSystem transition_system(const ArrowPresentation& ap) { return TransitionSystem(ap); }

/// One step of a closed walk: traverse `gap`, then pass the arrow site of
/// `edge` from slot position `from` to slot position `to`.
struct WalkStep {
    std::size_t gap = 0;
    bool forward = true;
    std::size_t edge = 0;
    std::uint8_t from = 0;
    std::uint8_t to = 0;
};

struct Walk {
    std::vector<WalkStep> steps;
    std::optional<std::size_t> isolated_gap;  // set for the walk around a degree-0 circle

    std::size_t length() const noexcept { return steps.size(); }
};

struct StateCircles {
    std::vector<Walk> walks;

    std::size_t count() const noexcept { return walks.size(); }

    /// Walks that carry at least one medial edge.
    std::size_t medial_count() const noexcept {
        std::size_t n = 0;
        for (const auto& w : walks) n += w.length() > 0 ? 1 : 0;
        return n;
    }

    std::vector<std::size_t> lengths() const {
        std::vector<std::size_t> l;
        for (const auto& w : walks) l.push_back(w.length());
        return l;
    }
};

/// Traces the closed walks obtained by applying `choice[e]` at every edge.
/// Walks start at the lowest unused gap, traversed forward.
inline StateCircles trace(const TransitionSystem& ts, std::span<const Smoothing> choice) {
    if (choice.size() != ts.edge_count()) throw std::invalid_argument("trace: choice must cover every edge");
    StateCircles out;
    const auto& gaps = ts.gaps();
    const auto& slots = ts.slots();
    std::vector<bool> used(gaps.size(), false);
    for (std::size_t g0 = 0; g0 < gaps.size(); ++g0) {
        if (used[g0]) continue;
        used[g0] = true;
        Walk walk;
        if (!gaps[g0].medial) {
            walk.isolated_gap = g0;
            out.walks.push_back(std::move(walk));
            continue;
        }
        const auto start = gaps[g0].start_slot;
        auto departure = start;
        do {
            const auto& ds = slots[departure];
            used[ds.gap] = true;
            const auto arrival = ts.across_gap(departure);
            const auto& as = slots[arrival];
            const auto to = paired_position(choice[as.edge], as.position);
            walk.steps.push_back({ds.gap, ds.is_gap_start, as.edge, as.position, to});
            departure = ts.cyclic_slots(as.edge)[to];
        } while (departure != start);
        out.walks.push_back(std::move(walk));
    }
    return out;
}

inline StateCircles trace(const ArrowPresentation& ap, std::span<const Smoothing> choice) {
    return trace(TransitionSystem(ap), choice);
}

inline std::vector<Smoothing> uniform_choice(std::size_t edge_count, Smoothing s) { return std::vector<Smoothing>(edge_count, s); }

/// State S_A: white smoothing on A, black elsewhere.
inline std::vector<Smoothing> state_choice(const EdgeSet& a) {
    std::vector<Smoothing> c(a.universe(), Smoothing::black);
    for (auto e : a.members()) c[e] = Smoothing::white;
    return c;
}

inline StateCircles state_circles(const TransitionSystem& ts, const EdgeSet& a) {
    const auto c = state_choice(a);
    return trace(ts, c);
}

inline StateCircles state_circles(const ArrowPresentation& ap, const EdgeSet& a) { return state_circles(TransitionSystem(ap), a); }

/// Boundary components of the ribbon graph; the degree of a component is its length.
inline StateCircles boundary_components(const TransitionSystem& ts) {
    const auto c = uniform_choice(ts.edge_count(), Smoothing::white);
    return trace(ts, c);
}

inline StateCircles boundary_components(const ArrowPresentation& ap) { return boundary_components(TransitionSystem(ap)); }

inline bool is_even_state(const StateCircles& sc) {
    for (const auto& w : sc.walks)
        if (w.length() % 2 != 0) return false;
    return true;
}

inline bool is_even_face(const ArrowPresentation& ap) { return is_even_state(boundary_components(ap)); }

struct StraightAheadWalks {
    std::size_t t = 0;  // walks of positive length
    StateCircles walks;
};

inline StraightAheadWalks straight_ahead_walks(const TransitionSystem& ts) {
    const auto c = uniform_choice(ts.edge_count(), Smoothing::crossing);
    auto walks = trace(ts, c);
    const auto t = walks.medial_count();
    return {t, std::move(walks)};
}

inline StraightAheadWalks straight_ahead_walks(const ArrowPresentation& ap) { return straight_ahead_walks(TransitionSystem(ap)); }

}  // namespace ribbon
