#include <catch2/catch_amalgamated.hpp>

#include "chainlab/bounds.hpp"
#include "chainlab/extremal.hpp"
#include "chainlab/oracle.hpp"
#include "support.hpp"

using namespace chainlab;
using testsupport::family_of;

TEST_CASE("exhaustive_min small cases") {
    const OracleResult r232 = exhaustive_min(2, 3, 2);
    CHECK(r232.minimum == 2);
    CHECK(r232.families_examined == 4);

    const OracleResult r342 = exhaustive_min(3, 4, 2);
    CHECK(r342.minimum == 2);
    CHECK(r342.families_examined == 70);
    bool found = false;
    for (const SetFamily& w : r342.witnesses) {
        found = found || w == family_of(3, {0b001, 0b010, 0b100, 0b011});
    }
    CHECK(found);

    const OracleResult r4113 = exhaustive_min(4, 11, 3);
    CHECK(r4113.minimum == 6);
    CHECK(Ratio(r4113.minimum) == Ratio(thm13_lower(4, 3, 1)));

    CHECK_THROWS_AS(exhaustive_min(4, 17, 2), std::domain_error);
    CHECK_THROWS_AS(exhaustive_min(5, 3, 2), std::invalid_argument);
}

TEST_CASE("exhaustive_min is thread-count independent") {
    const OracleResult serial = exhaustive_min(4, 7, 2, 1);
    const OracleResult parallel = exhaustive_min(4, 7, 2, 4);
    CHECK(serial.minimum == parallel.minimum);
    CHECK(serial.witness_total == parallel.witness_total);
    REQUIRE(serial.witnesses.size() == parallel.witnesses.size());
    for (std::size_t i = 0; i < serial.witnesses.size(); ++i) {
        CHECK(serial.witnesses[i] == parallel.witnesses[i]);
    }
}

TEST_CASE("witness sets are closed under complementation") {
    for (const auto& [n, s, k] : std::vector<std::tuple<int, int, int>>{
             {3, 4, 2}, {3, 5, 2}, {4, 7, 2}, {4, 11, 3}}) {
        const OracleResult r = exhaustive_min(n, s, k);
        REQUIRE(r.witness_total == r.witnesses.size());  // below the cap
        for (const SetFamily& w : r.witnesses) {
            const SetFamily c = complement_family(w);
            bool present = false;
            for (const SetFamily& other : r.witnesses) present = present || other == c;
            CHECK(present);
        }
    }
}

TEST_CASE("minimum is monotone in s and zero exactly up to the middle levels") {
    for (int n = 2; n <= 3; ++n) {
        for (int k = 2; k <= 4; ++k) {
            Bigint prev = 0;
            for (long long s = 0; s <= (1LL << n); ++s) {
                const OracleResult r = exhaustive_min(n, s, k);
                CHECK(r.minimum >= prev);
                prev = r.minimum;
                const bool chain_free_possible =
                    k > n + 1 || Bigint(s) <= middle_sum(n, std::min(k - 1, n + 1));
                CHECK((r.minimum == 0) == chain_free_possible);
            }
        }
    }
}

TEST_CASE("branch_and_bound_min agrees with exhaustive search") {
    const OracleResult bnb = branch_and_bound_min(4, 7, 2, 10000);
    CHECK(bnb.complete);
    CHECK(bnb.minimum == 3);
    CHECK(bnb.minimum == exhaustive_min(4, 7, 2).minimum);

    const OracleResult deep = branch_and_bound_min(4, 11, 2, 20000);
    CHECK(deep.complete);
    CHECK(deep.minimum == exhaustive_min(4, 11, 2).minimum);

    const OracleResult deep3 = branch_and_bound_min(4, 11, 3, 20000);
    CHECK(deep3.complete);
    CHECK(deep3.minimum == 6);
}

TEST_CASE("branch_and_bound_min at n=5 closes via the profile bound") {
    const OracleResult r = branch_and_bound_min(5, 12, 2, 30000);
    CHECK(r.complete);
    CHECK(r.minimum == conjectured_min(5, 12, 2));
    CHECK(r.minimum == 6);
}

TEST_CASE("branch_and_bound_min closes searching cases beyond the middle levels") {
    const OracleResult r5 = branch_and_bound_min(5, 22, 2, 60000);
    CHECK(r5.complete);
    CHECK(r5.minimum == conjectured_min(5, 22, 2));
    CHECK(r5.minimum == 50);

    const OracleResult r6 = branch_and_bound_min(6, 25, 2, 60000);
    CHECK(r6.complete);
    CHECK(r6.minimum == conjectured_min(6, 25, 2));
    CHECK(r6.minimum == 20);
}

TEST_CASE("branch_and_bound_min with zero budget reports the seed incumbent") {
    const OracleResult r = branch_and_bound_min(5, 12, 2, 0);
    CHECK_FALSE(r.complete);
    CHECK(r.minimum == conjectured_min(5, 12, 2));
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses.front() == canonical_family(5, 12));
}

TEST_CASE("verify_conjecture over full ranges") {
    const ConjectureReport r2 = verify_conjecture(2, 2, 0, 4);
    CHECK(r2.ok);
    const ConjectureReport r3 = verify_conjecture(3, 2, 0, 8);
    CHECK(r3.ok);
    REQUIRE(r3.rows.size() == 9);
    CHECK(r3.rows[4].oracle_min == 2);
    const ConjectureReport r33 = verify_conjecture(3, 3, 0, 8, 2);
    CHECK(r33.ok);
}

TEST_CASE("verify_iff_characterization") {
    for (long long s = 3; s <= 8; ++s) {
        const IffReport r = verify_iff_characterization(3, s);
        CHECK(r.ok);
        CHECK(r.optima_total == r.certified_total);
    }
    const IffReport r47 = verify_iff_characterization(4, 7);
    CHECK(r47.ok);
    const IffReport r410 = verify_iff_characterization(4, 10);  // threshold size
    CHECK(r410.ok);
    CHECK_THROWS_AS(verify_iff_characterization(4, 5), std::invalid_argument);
}

TEST_CASE("oracle minima respect the closed-form bounds") {
    for (int n = 3; n <= 4; ++n) {
        for (int k = 2; k <= std::min(n, 4); ++k) {
            for (long long s = 0; s <= (1LL << n); ++s) {
                const OracleResult r = exhaustive_min(n, s, k, 1, 1);
                const long long beyond =
                    s - static_cast<long long>(middle_sum(n, k - 1));
                if (beyond >= 0) {
                    CHECK(r.minimum >= thm13_lower(n, k, beyond));
                    // tight while the family fits the k middle levels
                    if (Bigint(s) <= middle_sum(n, k)) {
                        CHECK(r.minimum == thm13_lower(n, k, beyond));
                    }
                }
                const long long t1 = s - static_cast<long long>(middle_sum(n, k));
                if (t1 >= 0) {
                    CHECK(Ratio(r.minimum) >= thm42_lower(n, k, t1, 0));
                    // tight while the family fits the k+1 middle levels
                    if (Bigint(s) <= middle_sum(n, std::min(k + 1, n + 1))) {
                        CHECK(Ratio(r.minimum) == thm42_lower(n, k, t1, 0));
                    }
                }
            }
        }
    }
}
