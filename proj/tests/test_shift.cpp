#include <catch2/catch_amalgamated.hpp>

#include "chainlab/extremal.hpp"
#include "chainlab/shift.hpp"
#include "support.hpp"

using namespace chainlab;
using testsupport::family_of;
using testsupport::full_level;
using testsupport::full_levels;
using testsupport::SplitMix64;

TEST_CASE("strip_extremes") {
    const SetFamily with_empty = family_of(3, {0b000, 0b001, 0b011});
    const SetFamily stripped = strip_extremes(with_empty, 2);
    CHECK(stripped.size() == 3);
    CHECK_FALSE(stripped.contains(ElementSet{0}));
    CHECK(stripped.contains(ElementSet{0b010}));  // first absent non-extreme set
    CHECK(count_k_chains(stripped, 2) <= count_k_chains(with_empty, 2));

    const SetFamily plain = family_of(3, {0b001, 0b011});
    CHECK(strip_extremes(plain) == plain);

    const SetFamily both = family_of(3, {0b000, 0b001, 0b010, 0b100, 0b111});
    const SetFamily fixed = strip_extremes(both, 2);
    CHECK(fixed.size() == 5);
    CHECK_FALSE(fixed.contains(ElementSet{0}));
    CHECK_FALSE(fixed.contains(ElementSet{0b111}));
    CHECK(count_k_chains(fixed, 2) <= count_k_chains(both, 2));

    // not enough room to swap into
    std::vector<std::uint32_t> nearly_all;
    for (std::uint32_t m = 0; m < 8; ++m) {
        if (m != 0b011) nearly_all.push_back(m);
    }
    CHECK_THROWS_AS(strip_extremes(SetFamily::from_masks(3, nearly_all)), std::domain_error);
}

namespace {

BipartiteGraph manual_graph(std::vector<ElementSet> left, std::vector<ElementSet> right,
                            std::vector<std::vector<int>> adj) {
    BipartiteGraph g;
    g.left = std::move(left);
    g.right = std::move(right);
    g.adj = std::move(adj);
    return g;
}

}  // namespace

TEST_CASE("max_matching") {
    // one left set against its full shadow
    const BipartiteGraph star = BipartiteGraph::inclusion_graph(
        {ElementSet{0b111}}, {ElementSet{0b011}, ElementSet{0b101}, ElementSet{0b110}}, 1);
    CHECK(max_matching(star).size == 1);

    // two lefts fighting over a single right
    const BipartiteGraph pinch = manual_graph({ElementSet{0b011}, ElementSet{0b101}},
                                              {ElementSet{0b001}}, {{0}, {0}});
    CHECK(max_matching(pinch).size == 1);

    const BipartiteGraph complete33 =
        manual_graph({ElementSet{1}, ElementSet{2}, ElementSet{4}},
                     {ElementSet{3}, ElementSet{5}, ElementSet{6}},
                     {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
    CHECK(max_matching(complete33).size == 3);
}

TEST_CASE("hall_decomposition") {
    const BipartiteGraph pinch = manual_graph({ElementSet{0b011}, ElementSet{0b101}},
                                              {ElementSet{0b001}}, {{0}, {0}});
    const HallDecomposition d = hall_decomposition(pinch);
    CHECK(d.u1 == std::vector<int>{0});
    CHECK(d.v1 == std::vector<int>{0});
    CHECK(d.matching == std::vector<int>{0});

    // complete 3x2: the violator is everything, one left is dropped
    const BipartiteGraph c32 = manual_graph(
        {ElementSet{1}, ElementSet{2}, ElementSet{4}}, {ElementSet{3}, ElementSet{5}},
        {{0, 1}, {0, 1}, {0, 1}});
    const HallDecomposition d2 = hall_decomposition(c32);
    CHECK(d2.u1 == std::vector<int>{0, 1});
    CHECK(d2.v1 == std::vector<int>{0, 1});

    // saturable graphs are rejected
    const BipartiteGraph star = BipartiteGraph::inclusion_graph(
        {ElementSet{0b111}}, {ElementSet{0b011}, ElementSet{0b101}, ElementSet{0b110}}, 1);
    CHECK_THROWS_AS(hall_decomposition(star), std::logic_error);
}

TEST_CASE("shift_step on named families") {
    // five 2-sets plus the full set: the full set drops to a 3-set
    const SetFamily f1 = family_of(4, {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1111});
    REQUIRE(count_k_chains(f1, 2) == 5);
    const auto step1 = shift_step(f1, 2);
    REQUIRE(step1.has_value());
    CHECK(step1->second.ell == 1);
    CHECK(step1->second.m == HalfInteger::from_twice(4));
    CHECK(step1->second.removed == std::vector<ElementSet>{ElementSet{0b1111}});
    CHECK(step1->second.count_after <= 3);
    CHECK(step1->first.size() == 6);

    // already centered: nothing to do
    CHECK_FALSE(shift_step(canonical_family(4, 7), 2).has_value());

    // singletons plus the full set over n=3
    const SetFamily f2 = family_of(3, {0b001, 0b010, 0b100, 0b111});
    REQUIRE(count_k_chains(f2, 2) == 3);
    const auto step2 = shift_step(f2, 2);
    REQUIRE(step2.has_value());
    CHECK(step2->second.ell == 1);
    CHECK(step2->second.count_after <= 2);
}

TEST_CASE("shift_step falls back to the Hall pair when no matching saturates") {
    // two maximal sets share {1,2} as their only absent shadow set
    const SetFamily fam =
        family_of(4, {0b0101, 0b0110, 0b1001, 0b1010, 0b0111, 0b1011});
    REQUIRE(count_k_chains(fam, 2) == 4);
    const auto step = shift_step(fam, 2);
    REQUIRE(step.has_value());
    CHECK(step->second.removed == std::vector<ElementSet>{ElementSet{0b0111}});
    CHECK(step->second.inserted == std::vector<ElementSet>{ElementSet{0b0011}});
    CHECK(step->second.count_after == 3);
    CHECK(step->first.size() == 6);
}

TEST_CASE("shift_step complement-normalizes low families") {
    // everything hangs below the middle: the step works on the complement
    const SetFamily low = family_of(4, {0b0000, 0b0001, 0b0010, 0b0100, 0b1000, 0b0011});
    const auto step = shift_step(low, 2);
    REQUIRE(step.has_value());
    CHECK(step->second.complemented);
    CHECK(step->second.count_after < count_k_chains(low, 2));
    CHECK(step->first.size() == low.size());
}

TEST_CASE("minimize recovers the centered family after a perturbation") {
    // canonical(6, 25) with one middle set pushed up to size 5
    const SetFamily base = canonical_family(6, 25);
    const ElementSet mid = base.member(0);
    const SetFamily start = replace_members(base, {mid}, {ElementSet{0b011111}});
    const auto [result, trace] = minimize(start, 2, 10);
    CHECK(trace.final_count == conjectured_min(6, 25, 2));
    CHECK(result.size() == 25);
    Bigint prev = trace.count_after_strip;
    for (const ShiftStep& s : trace.steps) {
        CHECK(s.count_after < prev);
        prev = s.count_after;
    }
    // every step preserved the family size, and the result sits inside the band
    const HalfInteger r = r_param(6, 25);
    for (ElementSet f : result.members()) {
        const int c = f.cardinality();
        CHECK((6 - r.twice) / 2 <= c);
        CHECK(c <= (6 + r.twice) / 2);
    }
}

TEST_CASE("minimize leaves the centered family alone") {
    const auto [result, trace] = minimize(canonical_family(8, 80), 2, 10);
    CHECK(trace.steps.empty());
    CHECK_FALSE(trace.stripped);
    CHECK(trace.final_count == trace.initial_count);
    CHECK(result == canonical_family(8, 80));
}

TEST_CASE("minimize on random families stays above the conjectured floor") {
    SplitMix64 rng(301);
    for (int trial = 0; trial < 6; ++trial) {
        const SetFamily fam = testsupport::random_family(rng, 6, 20);
        const auto [result, trace] = minimize(fam, 2, 50);
        CHECK(result.size() == 20);
        CHECK(trace.final_count <= trace.initial_count);
        CHECK(trace.final_count >= conjectured_min(6, 20, 2));
    }
}

TEST_CASE("minimize invariants hold on random families") {
    SplitMix64 rng(303);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(4));  // n in 4..7
        // leave room to swap the extreme sets out
        const std::uint64_t cap = std::min<std::uint64_t>(30, (1ull << n) - 3);
        const int size = 2 + static_cast<int>(rng.below(cap));
        const SetFamily fam = testsupport::random_family(rng, n, size);
        for (int k = 2; k <= 3; ++k) {
            const auto [result, trace] = minimize(fam, k, 40);
            CHECK(result.size() == fam.size());
            CHECK(trace.final_count <= trace.initial_count);
            CHECK(trace.final_count == count_k_chains(result, k));
            Bigint prev = trace.count_after_strip;
            for (const ShiftStep& st : trace.steps) {
                CHECK(st.count_after < prev);
                prev = st.count_after;
            }
        }
    }
}

TEST_CASE("minimize drives perturbed canonical families into the band") {
    // perturbation: one member pushed up to a size-(n-1) superset, leaving a
    // hole in the shadow below the inserted set
    SplitMix64 rng(302);
    for (int n = 4; n <= 6; ++n) {
        for (int trial = 0; trial < 4; ++trial) {
            const long long s =
                static_cast<long long>(sperner_bound(n)) + static_cast<long long>(rng.below(6));
            SetFamily fam = canonical_family(n, s);
            const ElementSet victim =
                fam.member(static_cast<int>(rng.below(static_cast<std::uint64_t>(fam.size()))));
            std::optional<ElementSet> up;
            for (int drop = 1; drop <= n && !up; ++drop) {
                const ElementSet cand{ground_mask(n) & ~(1u << (drop - 1))};
                if (victim.subset_of(cand) && !fam.contains(cand)) up = cand;
            }
            if (!up) continue;
            fam = replace_members(fam, {victim}, {*up});

            const auto [result, trace] = minimize(fam, 2, 60);
            CHECK(result.size() == fam.size());
            const HalfInteger r = r_param(n, s);
            for (ElementSet f : result.members()) {
                const int c = f.cardinality();
                CHECK((n - r.twice) / 2 <= c);
                CHECK(c <= (n + r.twice) / 2);
            }
        }
    }
}
