#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "chainlab/set_family.hpp"
#include "support.hpp"

using namespace chainlab;
using testsupport::family_of;
using testsupport::full_level;
using testsupport::SplitMix64;

TEST_CASE("level_profile") {
    CHECK(level_profile(SetFamily(4)).counts == std::vector<long long>{0, 0, 0, 0, 0});

    SetFamily all2 = SetFamily::from_masks(2, {0b00, 0b01, 0b10, 0b11});
    CHECK(level_profile(all2).counts == std::vector<long long>{1, 2, 1});

    SetFamily f = family_of(3, {0b001, 0b010, 0b100, 0b011});
    CHECK(level_profile(f).counts == std::vector<long long>{0, 3, 1, 0});
}

TEST_CASE("shadow basics") {
    CHECK(shadow(family_of(4, {0b0111}), 1) == family_of(4, {0b011, 0b101, 0b110}));
    CHECK(shadow(family_of(4, {0b1111}), 2) == full_level(4, 2));
    CHECK(shadow(family_of(3, {0b001}), 1) == family_of(3, {0}));
    CHECK(shadow(family_of(3, {0b001}), 2) == SetFamily(3));  // too small to shadow
    CHECK_THROWS_AS(shadow(SetFamily(3), 0), std::invalid_argument);
}

TEST_CASE("iterated shadow contains the 2-shadow") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        const int size = 1 + static_cast<int>(rng.below(20));
        const SetFamily fam = testsupport::random_family(rng, n, size);
        const SetFamily twice = shadow(shadow(fam, 1), 1);
        const SetFamily two_shadow = shadow(fam, 2);
        for (ElementSet g : two_shadow.members()) CHECK(twice.contains(g));
    }
    // equality on a single full level
    for (int n = 2; n <= 8; ++n) {
        const int c = n / 2 + 1;
        CHECK(shadow(shadow(full_level(n, c), 1), 1) == shadow(full_level(n, c), 2));
    }
}

TEST_CASE("is_antichain") {
    CHECK(is_antichain(full_level(4, 2)));
    CHECK_FALSE(is_antichain(family_of(2, {0b01, 0b11})));
    CHECK(is_antichain(family_of(3, {0b101, 0b110})));
    for (int i = 0; i <= 5; ++i) CHECK(is_antichain(full_level(5, i)));
}

TEST_CASE("complement_family") {
    CHECK(complement_family(family_of(3, {0b001})) == family_of(3, {0b110}));
    CHECK(complement_family(full_level(4, 1)) == full_level(4, 3));

    SplitMix64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(8));
        const int size = static_cast<int>(rng.below((1ull << n) + 1));
        const SetFamily fam = testsupport::random_family(rng, n, size);
        CHECK(complement_family(complement_family(fam)) == fam);
        const auto p = level_profile(fam).counts;
        const auto q = level_profile(complement_family(fam)).counts;
        CHECK(fam.size() == complement_family(fam).size());
        for (int i = 0; i <= n; ++i) {
            CHECK(p[static_cast<std::size_t>(i)] == q[static_cast<std::size_t>(n - i)]);
        }
    }
}

TEST_CASE("m_of") {
    CHECK(m_of(ElementSet{0b00001}, 5) == 4);
    CHECK(m_of(ElementSet{0b00111}, 5) == 3);
    CHECK(m_of(ElementSet{0b1111}, 4) == 4);
    CHECK_THROWS_AS(m_of(ElementSet{0b10000}, 4), std::invalid_argument);
}

TEST_CASE("canonical storage order and dedup") {
    SetFamily f = SetFamily::from_masks(3, {0b110, 0b001, 0b110, 0b011, 0b100});
    REQUIRE(f.size() == 4);
    CHECK(f.member(0) == ElementSet{0b001});
    CHECK(f.member(1) == ElementSet{0b100});
    CHECK(f.member(2) == ElementSet{0b011});
    CHECK(f.member(3) == ElementSet{0b110});
    CHECK(f.contains(ElementSet{0b011}));
    CHECK_FALSE(f.contains(ElementSet{0b111}));

    CHECK_THROWS_AS(SetFamily::from_masks(2, {0b100}), std::invalid_argument);
}

TEST_CASE("family text round-trip") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(10));
        const int size = static_cast<int>(rng.below(std::min<std::uint64_t>(30, 1ull << n)));
        const SetFamily fam = testsupport::random_family(rng, n, size);
        CHECK(parse_family(family_to_string(fam)) == fam);
        CHECK(parse_family(family_to_string(fam, /*hex=*/true)) == fam);
    }
    // the empty set renders as {} and parses back
    const SetFamily f = family_of(3, {0, 0b111});
    CHECK(family_to_string(f) == "n=3\n{}\n1,2,3\n");
    CHECK(parse_family("n=3\nhex:0\nhex:7\n") == f);
}

TEST_CASE("family parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_family(text);
        } catch (const FamilyParseError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(line_of("m=3\n1\n") == 1);
    CHECK(line_of("n=0\n") == 1);
    CHECK(line_of("n=3\n1,2\n4\n") == 3);
    CHECK(line_of("n=3\n2,1\n") == 2);
    CHECK(line_of("n=3\n1,2\n\n1,2\n") == 4);   // duplicate
    CHECK(line_of("n=3\nhex:9\n") == 2);        // out of ground set
    CHECK(line_of("n=3\nhex:G\n") == 2);
    CHECK(line_of("n=3\n1,\n") == 2);
    CHECK(line_of("") == 1);
    CHECK(line_of("n=25\n") == 1);
    CHECK(line_of("n=99999999999999999999\n") == 1);
    CHECK(line_of("n=3\n99999999999999999999\n") == 2);
}

TEST_CASE("parser rejects garbage with a FamilyParseError, never anything else") {
    SplitMix64 rng(44);
    const std::string alphabet = "0123456789,{}nhex: =ab\tXYZ-";
    for (int trial = 0; trial < 3000; ++trial) {
        std::string text;
        const int lines = 1 + static_cast<int>(rng.below(4));
        for (int l = 0; l < lines; ++l) {
            const int len = static_cast<int>(rng.below(12));
            for (int i = 0; i < len; ++i) {
                text += alphabet[rng.below(alphabet.size())];
            }
            text += '\n';
        }
        try {
            parse_family(text);  // parsing may succeed; that is fine
        } catch (const FamilyParseError& e) {
            CHECK(e.line >= 1);
        }
        // any other exception type escapes and fails the test case
    }
}
