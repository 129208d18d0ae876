#include <gtest/gtest.h>

#include <random>

#include "gem_oracle.hpp"
#include "ribbon/medial.hpp"
#include "ribbon/verify.hpp"

namespace ribbon {
namespace {

const char* const kAnnulus = "C1: 1+ 1+";
const char* const kMoebius = "C1: 1+ 1-";
const char* const kPath = "C1: 1+\nC2: 1-";

std::vector<Direction> all_directions(const TransitionSystem& ts) {
    const auto n = ts.gaps().size();
    std::vector<Direction> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Direction d{std::vector<bool>(n)};
        for (std::size_t g = 0; g < n; ++g) d.forward[g] = ((mask >> g) & 1U) != 0;
        out.push_back(d);
    }
    return out;
}

std::uint64_t mask_of(const EdgeSet& s) { return s.mask(); }

std::set<std::uint64_t> masks(const EdgeSetFamily& f) {
    std::set<std::uint64_t> out;
    for (const auto& s : f) out.insert(mask_of(s));
    return out;
}

TEST(Medial, FourRegularWithTwiceEdgesMedialEdges) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const TransitionSystem ts(generate_random(rng, 8));
        const auto me = medial_edges(ts);
        EXPECT_EQ(me.size(), 2 * ts.edge_count());
        std::vector<int> deg(ts.edge_count(), 0);
        for (const auto& e : me) {
            ++deg[ts.slots()[e.start_slot].edge];
            ++deg[ts.slots()[e.end_slot].edge];
        }
        for (auto d : deg) EXPECT_EQ(d, 4);
    }
    EXPECT_TRUE(medial_edges(TransitionSystem(parse(kAnnulus)))[0].is_loop(TransitionSystem(parse(kAnnulus))));
}

TEST(CrossingTotal, PlanePathPatterns) {
    const TransitionSystem ts(parse(kPath));
    bool saw_valid = false, saw_invalid = false;
    for (const auto& d : all_directions(ts)) {
        const auto p = in_pattern(ts, d, 0);
        if (p == 0b1001) {  // in,out,out,in
            EXPECT_TRUE(is_crossing_total(ts, d));
            saw_valid = true;
        }
        if (p == 0b0101) {  // in,out,in,out
            EXPECT_FALSE(is_crossing_total(ts, d));
            EXPECT_THROW(classify(ts, d), NotCrossingTotal);
            saw_invalid = true;
        }
    }
    EXPECT_TRUE(saw_valid);
    EXPECT_TRUE(saw_invalid);
}

TEST(CrossingTotal, ReversalPreservesCondition) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const TransitionSystem ts(generate_random(rng, 6));
        for (const auto& cd : enumerate_crossing_total(ts).directions) {
            const auto r = reversed(cd.direction, ts);
            ASSERT_TRUE(is_crossing_total(ts, r));
            EXPECT_EQ(classify(ts, r), cd.classification);
        }
    }
}

TEST(CrossingTotal, RejectsWrongSize) {
    const TransitionSystem ts(parse(kPath));
    EXPECT_THROW(is_crossing_total(ts, Direction{{true}}), std::invalid_argument);
}

TEST(Classify, Examples) {
    const auto classes = [](const char* text) {
        const TransitionSystem ts(parse(text));
        std::vector<EdgeClassification> out;
        for (const auto& d : all_directions(ts))
            if (is_crossing_total(ts, d)) out.push_back(classify(ts, d));
        return out;
    };
    const auto path = classes(kPath);
    ASSERT_EQ(path.size(), 2u);
    for (const auto& c : path) EXPECT_TRUE(c.d.contains(0));

    const auto annulus = classes(kAnnulus);
    ASSERT_EQ(annulus.size(), 2u);
    for (const auto& c : annulus) EXPECT_TRUE(c.c.contains(0));

    const auto moebius = classes(kMoebius);
    ASSERT_EQ(moebius.size(), 4u);
    std::size_t cs = 0, ds = 0;
    for (const auto& c : moebius) {
        cs += c.c.contains(0) ? 1 : 0;
        ds += c.d.contains(0) ? 1 : 0;
    }
    EXPECT_EQ(cs, 2u);
    EXPECT_EQ(ds, 2u);
}

TEST(AllCrossing, Examples) {
    const auto path = enumerate_all_crossing(parse(kPath));
    ASSERT_EQ(path.size(), 2u);
    EXPECT_EQ(masks(all_crossing_c_sets(path)), (std::set<std::uint64_t>{0}));

    const auto annulus = enumerate_all_crossing(parse(kAnnulus));
    ASSERT_EQ(annulus.size(), 2u);
    EXPECT_EQ(masks(all_crossing_c_sets(annulus)), (std::set<std::uint64_t>{1}));

    const auto moebius = enumerate_all_crossing(parse(kMoebius));
    ASSERT_EQ(moebius.size(), 4u);
    EXPECT_EQ(masks(all_crossing_c_sets(moebius)), (std::set<std::uint64_t>{0, 1}));
}

TEST(CrossingTotalEnumeration, Examples) {
    EXPECT_EQ(enumerate_crossing_total(parse(kAnnulus)).directions.size(), 2u);
    EXPECT_EQ(enumerate_crossing_total(parse(kMoebius)).directions.size(), 4u);
    EXPECT_EQ(enumerate_crossing_total(parse(kPath)).directions.size(), 2u);
    const auto annulus = enumerate_crossing_total(parse(kAnnulus));
    EXPECT_EQ(annulus.even_states, 1u);
    EXPECT_EQ(annulus.upper_bound, 2u);
}

TEST(FamilyExamples, EulerianAndEvenFace) {
    EXPECT_EQ(masks(eulerian_sets(parse(kAnnulus))), (std::set<std::uint64_t>{0}));
    EXPECT_EQ(masks(eulerian_sets(parse(kMoebius))), (std::set<std::uint64_t>{0, 1}));
    EXPECT_EQ(masks(eulerian_sets(parse(kPath))), (std::set<std::uint64_t>{1}));
    EXPECT_EQ(masks(even_face_sets(parse(kAnnulus))), (std::set<std::uint64_t>{1}));
    EXPECT_EQ(masks(even_face_sets(parse(kMoebius))), (std::set<std::uint64_t>{0, 1}));
    EXPECT_EQ(masks(even_face_sets(parse(kPath))), (std::set<std::uint64_t>{0}));
}

TEST(ColourSwap, Examples) {
    for (const auto* text : {kAnnulus, kMoebius, kPath}) {
        const TransitionSystem ts(parse(text));
        for (const auto& cd : enumerate_crossing_total(ts).directions) {
            EXPECT_TRUE(lemma_cd_swap(ts, cd.direction));
            EXPECT_TRUE(lemma_cd_dual(ts, cd.direction)) << text;
            const auto sw = classify(ts, cd.direction, ColourConvention::swapped);
            EXPECT_EQ(sw.c, cd.classification.d);
            EXPECT_EQ(sw.d, cd.classification.c);
        }
    }
}

TEST(ColourSwap, TEdgesFixed) {
    const TransitionSystem ts(parse("C1: 1+ 2+ 1+ 2+"));
    bool saw_t = false;
    for (const auto& cd : enumerate_crossing_total(ts).directions) {
        saw_t = saw_t || !cd.classification.t.empty();
        EXPECT_EQ(classify(ts, cd.direction, ColourConvention::swapped).t, cd.classification.t);
        EXPECT_TRUE(lemma_cd_dual(ts, cd.direction));
    }
    EXPECT_TRUE(saw_t);
}

// Independent oracle: the gem census orients every medial edge both ways
// (2^(2E) maps) and classifies through the involutions directly.
void expect_matches_census(const ArrowPresentation& ap) {
    const TransitionSystem ts(ap);
    const auto census = oracle::census(oracle::Gem(ap));
    const auto ct = enumerate_crossing_total(ts);
    EXPECT_EQ(ct.directions.size(), census.crossing_total) << serialize(ap);
    const auto ac = enumerate_all_crossing(ts);
    EXPECT_EQ(ac.size(), census.all_crossing) << serialize(ap);
    EXPECT_EQ(masks(eulerian_sets(ct.directions)), census.eulerian) << serialize(ap);
    EXPECT_EQ(masks(even_face_sets(ct.directions)), census.even_face) << serialize(ap);
    EXPECT_EQ(masks(all_crossing_c_sets(ac)), census.all_crossing_c) << serialize(ap);
}

TEST(Oracle, EnumerationMatchesCensusOnSmallCorpus) {
    for (const auto& inst : exhaustive_catalog(3)) expect_matches_census(inst.presentation);
}

TEST(Oracle, EnumerationMatchesCensusOnRandomInstances) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 60; ++i) expect_matches_census(generate_random(rng, 6));
}

TEST(Properties, AllCrossingIsCrossingTotalWithoutTEdges) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
        const TransitionSystem ts(generate_random(rng, 7));
        const auto ac = enumerate_all_crossing(ts);
        EXPECT_EQ(ac.size(), std::size_t{1} << straight_ahead_walks(ts).t);
        const auto ct = enumerate_crossing_total(ts);
        std::set<Direction> all;
        for (const auto& cd : ct.directions) all.insert(cd.direction);
        for (const auto& cd : ac) {
            EXPECT_TRUE(cd.classification.t.empty());
            EXPECT_TRUE(all.count(cd.direction));
        }
    }
}

// White at D, black at C and either at T gives an even state.
TEST(Properties, DirectionInducesEvenStates) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const TransitionSystem ts(generate_random(rng, 6));
        for (const auto& cd : enumerate_crossing_total(ts).directions) {
            const auto& cls = cd.classification;
            const auto tm = cls.t.members();
            for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << tm.size()); ++sub) {
                EdgeSet a = cls.d;
                for (std::size_t k = 0; k < tm.size(); ++k)
                    if ((sub >> k) & 1U) a.insert(tm[k]);
                EXPECT_TRUE(is_even_state(state_circles(ts, a)));
            }
        }
    }
}

TEST(Properties, ClassificationPartitionsEdges) {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const TransitionSystem ts(generate_random(rng, 6));
        for (const auto& cd : enumerate_crossing_total(ts).directions) {
            const auto& c = cd.classification;
            EXPECT_EQ(c.c.size() + c.d.size() + c.t.size(), ts.edge_count());
            EXPECT_EQ(c.c.united(c.d).united(c.t).size(), ts.edge_count());
            EXPECT_TRUE(lemma_cd_swap(ts, cd.direction));
            EXPECT_TRUE(lemma_cd_dual(ts, cd.direction));
        }
    }
}

TEST(Enumeration, RefusesTooManyEdges) {
    std::string text = "C1:";
    for (int i = 1; i <= 21; ++i) text += " " + std::to_string(i) + "+ " + std::to_string(i) + "+";
    EXPECT_THROW(enumerate_crossing_total(parse(text)), std::invalid_argument);
}

}  // namespace
}  // namespace ribbon
