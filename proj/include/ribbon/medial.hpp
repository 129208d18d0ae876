#pragma once

// Directions of the medial graph: crossing-total condition, c/d/t edge
// classification and enumeration of all-crossing and crossing-total
// directions.
//
// The medial graph has one vertex per edge and one edge per gap (vertex line
// segment). A direction orients every medial edge; at each medial vertex the
// four incident half-edges are read in the cyclic slot order of the
// transition system.

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ribbon/duality.hpp"
#include "ribbon/presentation.hpp"
#include "ribbon/tracing.hpp"

namespace ribbon {

struct MedialEdge {
    std::size_t gap = 0;
    std::size_t start_slot = 0;
    std::size_t end_slot = 0;

    bool is_loop(const TransitionSystem& ts) const { return ts.slots()[start_slot].edge == ts.slots()[end_slot].edge; }
};

inline std::vector<MedialEdge> medial_edges(const TransitionSystem& ts) {
    std::vector<MedialEdge> out;
    for (std::size_t g = 0; g < ts.gaps().size(); ++g)
        if (ts.gaps()[g].medial) out.push_back({g, ts.gaps()[g].start_slot, ts.gaps()[g].end_slot});
    return out;
}

/// Orientation of every medial edge, keyed by gap id. `forward[g]` means
/// the gap is oriented from its start slot to its end slot. Entries for
/// gaps of degree-0 circles are unused and kept `true`.
struct Direction {
    std::vector<bool> forward;

    friend bool operator==(const Direction&, const Direction&) = default;
    friend bool operator<(const Direction& a, const Direction& b) { return a.forward < b.forward; }
};

inline Direction reversed(const Direction& d, const TransitionSystem& ts) {
    Direction r = d;
    for (std::size_t g = 0; g < r.forward.size(); ++g)
        if (ts.gaps()[g].medial) r.forward[g] = !r.forward[g];
    return r;
}

/// Bit p set iff the half-edge at cyclic position p points into the vertex.
inline unsigned in_pattern(const TransitionSystem& ts, const Direction& dir, std::size_t e) {
    unsigned mask = 0;
    for (unsigned p = 0; p < 4; ++p) {
        const auto& s = ts.slots()[ts.cyclic_slots(e)[p]];
        const bool in = dir.forward.at(s.gap) != s.is_gap_start;
        if (in) mask |= 1U << p;
    }
    return mask;
}

namespace detail {

constexpr bool is_black_pair(unsigned mask) noexcept { return mask == 0b0011 || mask == 0b1100; }
constexpr bool is_white_pair(unsigned mask) noexcept { return mask == 0b0110 || mask == 0b1001; }
constexpr bool is_total(unsigned mask) noexcept { return mask == 0 || mask == 0b1111; }

}  // namespace detail

inline bool is_crossing_total(const TransitionSystem& ts, const Direction& dir) {
    if (dir.forward.size() != ts.gaps().size()) throw std::invalid_argument("direction must orient every gap");
    for (std::size_t e = 0; e < ts.edge_count(); ++e) {
        const auto m = in_pattern(ts, dir, e);
        if (!detail::is_total(m) && !detail::is_black_pair(m) && !detail::is_white_pair(m)) return false;
    }
    return true;
}

struct EdgeClassification {
    EdgeSet c;
    EdgeSet d;
    EdgeSet t;

    friend bool operator==(const EdgeClassification&, const EdgeClassification&) = default;
};

/// Which smoothing colour a grouped "in,in" pair of slots makes a c-edge.
/// `swapped` exists to test that the convention is observable.
enum class ColourConvention { standard, swapped };

class NotCrossingTotal : public std::invalid_argument {
public:
    explicit NotCrossingTotal(std::size_t edge)
        : std::invalid_argument("direction is not crossing-total at edge index " + std::to_string(edge)), edge_(edge) {}
    std::size_t edge() const noexcept { return edge_; }

private:
    std::size_t edge_;
};

/// c-edge: the two incoming half-edges are paired by the black smoothing;
/// d-edge: by the white smoothing; t-edge: all in or all out.
inline EdgeClassification classify(const TransitionSystem& ts, const Direction& dir,
                                   ColourConvention conv = ColourConvention::standard) {
    const auto m = ts.edge_count();
    EdgeClassification out{EdgeSet(m), EdgeSet(m), EdgeSet(m)};
    for (std::size_t e = 0; e < m; ++e) {
        const auto mask = in_pattern(ts, dir, e);
        if (detail::is_total(mask)) {
            out.t.insert(e);
        } else if (detail::is_black_pair(mask)) {
            (conv == ColourConvention::standard ? out.c : out.d).insert(e);
        } else if (detail::is_white_pair(mask)) {
            (conv == ColourConvention::standard ? out.d : out.c).insert(e);
        } else {
            throw NotCrossingTotal(e);
        }
    }
    return out;
}

struct ClassifiedDirection {
    Direction direction;
    EdgeClassification classification;
};

inline constexpr std::size_t max_enumeration_bits = 30;

/// The 2^t all-crossing directions: each straight-ahead walk is oriented one
/// of two ways.
inline std::vector<ClassifiedDirection> enumerate_all_crossing(const TransitionSystem& ts,
                                                               ColourConvention conv = ColourConvention::standard) {
    const auto sa = straight_ahead_walks(ts);
    std::vector<const Walk*> walks;
    for (const auto& w : sa.walks.walks)
        if (w.length() > 0) walks.push_back(&w);
    if (walks.size() > max_enumeration_bits) throw std::invalid_argument("too many straight-ahead walks to enumerate");

    std::vector<ClassifiedDirection> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << walks.size()); ++mask) {
        Direction dir{std::vector<bool>(ts.gaps().size(), true)};
        for (std::size_t i = 0; i < walks.size(); ++i) {
            const bool flip = ((mask >> i) & 1U) != 0;
            for (const auto& s : walks[i]->steps) dir.forward[s.gap] = s.forward != flip;
        }
        auto cls = classify(ts, dir, conv);
        out.push_back({std::move(dir), std::move(cls)});
    }
    return out;
}

inline std::vector<ClassifiedDirection> enumerate_all_crossing(const ArrowPresentation& ap) {
    return enumerate_all_crossing(TransitionSystem(ap));
}

struct CrossingTotalEnumeration {
    std::vector<ClassifiedDirection> directions;  // deduplicated, ordered by orientation bits
    std::size_t even_states = 0;
    std::uint64_t upper_bound = 0;  // sum over even states of 2^(state circles)
};

/// Every crossing-total direction, generated from the alternating
/// orientations of the circles of every even state.
inline CrossingTotalEnumeration enumerate_crossing_total(const TransitionSystem& ts,
                                                         ColourConvention conv = ColourConvention::standard) {
    const auto m = ts.edge_count();
    if (m > 20) throw std::invalid_argument("too many edges to enumerate states");
    CrossingTotalEnumeration out;
    std::set<std::vector<bool>> seen;
    for (std::uint64_t state = 0; state < (std::uint64_t{1} << m); ++state) {
        const auto sc = state_circles(ts, EdgeSet::from_mask(m, state));
        if (!is_even_state(sc)) continue;
        ++out.even_states;
        std::vector<const Walk*> walks;
        for (const auto& w : sc.walks)
            if (w.length() > 0) walks.push_back(&w);
        if (walks.size() > max_enumeration_bits) throw std::invalid_argument("too many state circles to enumerate");
        out.upper_bound += std::uint64_t{1} << walks.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << walks.size()); ++mask) {
            std::vector<bool> fwd(ts.gaps().size(), true);
            for (std::size_t i = 0; i < walks.size(); ++i) {
                const bool flip = ((mask >> i) & 1U) != 0;
                const auto& steps = walks[i]->steps;
                for (std::size_t k = 0; k < steps.size(); ++k) {
                    const bool along = (k % 2 == 0) != flip;
                    fwd[steps[k].gap] = steps[k].forward == along;
                }
            }
            seen.insert(std::move(fwd));
        }
    }
    for (const auto& f : seen) {
        Direction dir{f};
        auto cls = classify(ts, dir, conv);
        out.directions.push_back({std::move(dir), std::move(cls)});
    }
    return out;
}

inline CrossingTotalEnumeration enumerate_crossing_total(const ArrowPresentation& ap) {
    return enumerate_crossing_total(TransitionSystem(ap));
}

namespace detail {

inline void add_with_t_subsets(EdgeSetFamily& family, const EdgeSet& base, const EdgeSet& t) {
    const auto ts = t.members();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ts.size()); ++mask) {
        EdgeSet s = base;
        for (std::size_t i = 0; i < ts.size(); ++i)
            if ((mask >> i) & 1U) s.insert(ts[i]);
        family.insert(std::move(s));
    }
}

}  // namespace detail

/// Union over crossing-total directions of { D ∪ T' : T' ⊆ T }.
inline EdgeSetFamily eulerian_sets(const std::vector<ClassifiedDirection>& ct) {
    EdgeSetFamily f;
    for (const auto& cd : ct) detail::add_with_t_subsets(f, cd.classification.d, cd.classification.t);
    return f;
}

/// Union over crossing-total directions of { C ∪ T' : T' ⊆ T }.
inline EdgeSetFamily even_face_sets(const std::vector<ClassifiedDirection>& ct) {
    EdgeSetFamily f;
    for (const auto& cd : ct) detail::add_with_t_subsets(f, cd.classification.c, cd.classification.t);
    return f;
}

inline EdgeSetFamily eulerian_sets(const ArrowPresentation& ap) { return eulerian_sets(enumerate_crossing_total(ap).directions); }
inline EdgeSetFamily even_face_sets(const ArrowPresentation& ap) { return even_face_sets(enumerate_crossing_total(ap).directions); }

/// c-edge sets over all all-crossing directions.
inline EdgeSetFamily all_crossing_c_sets(const std::vector<ClassifiedDirection>& ac) {
    EdgeSetFamily f;
    for (const auto& cd : ac) f.insert(cd.classification.c);
    return f;
}

/// Swapping the colours of the checkerboard exchanges c- and d-edges and
/// fixes t-edges.
inline bool lemma_cd_swap(const TransitionSystem& ts, const Direction& dir) {
    const auto a = classify(ts, dir, ColourConvention::standard);
    const auto b = classify(ts, dir, ColourConvention::swapped);
    return a.c == b.d && a.d == b.c && a.t == b.t;
}

/// The same statement realised on the geometric dual: the direction is
/// carried to the medial graph of G* through the shared vertex line
/// segments and classified there with the dual's own colouring.
inline bool lemma_cd_dual(const TransitionSystem& ts, const Direction& dir) {
    const auto corr = partial_dual_with_gaps(ts, EdgeSet(ts.edge_count(), true));
    const TransitionSystem dual_ts(corr.dual);
    Direction carried{std::vector<bool>(dual_ts.gaps().size(), true)};
    for (std::size_t g = 0; g < corr.gap_image.size(); ++g) {
        if (!dual_ts.gaps()[g].medial) continue;
        const auto& img = corr.gap_image[g];
        carried.forward[g] = dir.forward.at(img.gap) == img.same_direction;
    }
    if (!is_crossing_total(dual_ts, carried)) return false;
    const auto a = classify(ts, dir);
    const auto b = classify(dual_ts, carried);
    return a.c == b.d && a.d == b.c && a.t == b.t;
}

}  // namespace ribbon
