#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "chainlab/bounds.hpp"
#include "chainlab/chains.hpp"
#include "chainlab/extremal.hpp"
#include "chainlab/numbers.hpp"
#include "chainlab/set_family.hpp"

namespace chainlab {

struct OracleResult {
    int n = 0;
    long long s = 0;
    int k = 0;
    Bigint minimum;
    std::vector<SetFamily> witnesses;  // optimal families, canonical enumeration order
    unsigned long long witness_total = 0;
    unsigned long long families_examined = 0;
    bool complete = true;
};

namespace detail {

// All 2^n subsets in canonical order.
inline std::vector<std::uint32_t> canonical_universe(int n) {
    std::vector<std::uint32_t> u(static_cast<std::size_t>(1) << n);
    std::iota(u.begin(), u.end(), 0u);
    std::sort(u.begin(), u.end(), [](std::uint32_t a, std::uint32_t b) {
        return canonical_less(ElementSet{a}, ElementSet{b});
    });
    return u;
}

// Chain counting over canonically ordered masks.  Word-sized counts are
// exact here: the oracle runs at n <= 6, where even the full power set has
// fewer than 8^6 chains.
inline std::uint64_t count_chains_u64(const std::vector<std::uint32_t>& masks, int k) {
    const std::size_t s = masks.size();
    if (s < static_cast<std::size_t>(k)) return 0;
    std::vector<std::uint64_t> prev(s, 1), cur(s);
    for (int j = 2; j <= k; ++j) {
        for (std::size_t i = 0; i < s; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t h = 0; h < i; ++h) {
                if ((masks[h] & ~masks[i]) == 0 && masks[h] != masks[i]) acc += prev[h];
            }
            cur[i] = acc;
        }
        std::swap(prev, cur);
    }
    return std::accumulate(prev.begin(), prev.end(), std::uint64_t{0});
}

struct Bucket {
    std::optional<std::uint64_t> minimum;
    std::vector<std::vector<std::uint32_t>> witnesses;
    unsigned long long witness_total = 0;
    unsigned long long examined = 0;
};

// Enumerates every s-subset of `universe` whose first (canonical-order)
// element is universe[first], maintaining the running minimum.
inline void scan_bucket(const std::vector<std::uint32_t>& universe, int first, int s, int k,
                        std::size_t witness_cap, Bucket& out) {
    const int u = static_cast<int>(universe.size());
    std::vector<int> idx(static_cast<std::size_t>(s));
    idx[0] = first;
    for (int i = 1; i < s; ++i) idx[static_cast<std::size_t>(i)] = first + i;
    if (idx.back() >= u) return;

    std::vector<std::uint32_t> masks(static_cast<std::size_t>(s));
    while (true) {
        for (int i = 0; i < s; ++i) {
            masks[static_cast<std::size_t>(i)] =
                universe[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        }
        const std::uint64_t cnt = count_chains_u64(masks, k);
        ++out.examined;
        if (!out.minimum || cnt < *out.minimum) {
            out.minimum = cnt;
            out.witnesses.clear();
            out.witnesses.push_back(masks);
            out.witness_total = 1;
        } else if (cnt == *out.minimum) {
            ++out.witness_total;
            if (out.witnesses.size() < witness_cap) out.witnesses.push_back(masks);
        }

        // next combination with the first index pinned
        int j = s - 1;
        while (j >= 1 && idx[static_cast<std::size_t>(j)] == u - s + j) --j;
        if (j < 1) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int i = j + 1; i < s; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

}  // namespace detail

// Exact minimum k-chain count over every family of s subsets of [n], with
// all optimal families collected (capped, with the exact count kept).
// Enumeration is partitioned by the first member; buckets merge in
// canonical order, so the result is identical for any thread count.
inline OracleResult exhaustive_min(int n, long long s, int k, int threads = 1,
                                   std::size_t witness_cap = 10000) {
    check_arg(n >= 1 && n <= 4, "exhaustive_min: n must be at most 4");
    check_arg(k >= 2, "exhaustive_min: k must be >= 2");
    const long long space = 1LL << n;
    if (s < 0 || s > space) throw std::domain_error("exhaustive_min: s outside [0, 2^n]");

    OracleResult res;
    res.n = n;
    res.s = s;
    res.k = k;
    if (s == 0) {
        res.minimum = 0;
        res.witnesses.push_back(SetFamily(n));
        res.witness_total = 1;
        res.families_examined = 1;
        return res;
    }

    const std::vector<std::uint32_t> universe = detail::canonical_universe(n);
    const int buckets_n = static_cast<int>(space) - static_cast<int>(s) + 1;
    std::vector<detail::Bucket> buckets(static_cast<std::size_t>(buckets_n));

    const int workers = std::max(1, std::min(threads, buckets_n));
    std::atomic<int> next_bucket{0};
    auto work = [&]() {
        while (true) {
            const int f = next_bucket.fetch_add(1);
            if (f >= buckets_n) return;
            detail::scan_bucket(universe, f, static_cast<int>(s), k, witness_cap,
                                buckets[static_cast<std::size_t>(f)]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::optional<std::uint64_t> minimum;
    for (const auto& b : buckets) {
        if (b.minimum && (!minimum || *b.minimum < *minimum)) minimum = *b.minimum;
    }
    require(minimum.has_value(), "exhaustive_min: empty enumeration");
    res.minimum = *minimum;
    for (const auto& b : buckets) {
        res.families_examined += b.examined;
        if (b.minimum != minimum) continue;
        res.witness_total += b.witness_total;
        for (const auto& masks : b.witnesses) {
            if (res.witnesses.size() < witness_cap) {
                res.witnesses.push_back(SetFamily::from_masks(n, masks));
            }
        }
    }
    for (const SetFamily& w : res.witnesses) {
        require(count_k_chains(w, k) == res.minimum, "exhaustive_min: witness recount mismatch");
    }
    return res;
}

namespace detail {

// Scaled integer form of the level-profile lower bound, used to prune
// branch-and-bound nodes: with D the lcm of the in-band binomials, a member
// on level i costs cost[i] = W*D/binom(n,i) in band and
// binom(m, k-1)*(k-1)!*D outside, and any family F satisfies
//   count(F) * D >= sum of member costs - (k-1)*W*D.
struct ScaledBoundTable {
    bool usable = false;
    std::vector<std::int64_t> cost;  // per level
    std::int64_t offset = 0;         // (k-1) * W * D
    std::int64_t scale = 1;          // D
    std::vector<int> cheap_order;    // levels sorted by ascending cost
};

inline ScaledBoundTable scaled_bound_table(int n, int k) {
    ScaledBoundTable t;
    if (k < 2 || k > n) return t;
    const HalfInteger r = middle_band_r(n, k);
    const int lo = (n - r.twice) / 2;
    const int hi = (n + r.twice) / 2;
    Bigint d = 1;
    for (int i = lo; i <= hi; ++i) d = boost::multiprecision::lcm(d, binom(n, i));
    const Bigint w = binom(n, hi) * binom(hi, k - 1) * factorial(k - 1);
    t.cost.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i <= n; ++i) {
        Bigint c;
        if (i >= lo && i <= hi) {
            c = w * d / binom(n, i);
        } else {
            c = binom(std::max(i, n - i), k - 1) * factorial(k - 1) * d;
        }
        require(c <= Bigint(std::numeric_limits<std::int64_t>::max() / 4),
                "scaled_bound_table: overflow");
        t.cost[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(c);
    }
    const Bigint off = Bigint(k - 1) * w * d;
    t.offset = static_cast<std::int64_t>(off);
    t.scale = static_cast<std::int64_t>(d);
    t.cheap_order.resize(static_cast<std::size_t>(n) + 1);
    std::iota(t.cheap_order.begin(), t.cheap_order.end(), 0);
    std::sort(t.cheap_order.begin(), t.cheap_order.end(), [&t](int a, int b) {
        if (t.cost[static_cast<std::size_t>(a)] != t.cost[static_cast<std::size_t>(b)])
            return t.cost[static_cast<std::size_t>(a)] < t.cost[static_cast<std::size_t>(b)];
        return a < b;
    });
    t.usable = true;
    return t;
}

}  // namespace detail

// Depth-first search over families in canonical member order with two
// prunes: the partial chain count is already no better than the incumbent,
// or the scaled profile bound over every completion is no better.  The
// incumbent starts at the centered family's count, so with budget 0 the
// result is that value with the completeness flag down.
inline OracleResult branch_and_bound_min(int n, long long s, int k, long long time_budget_ms,
                                         std::size_t witness_cap = 10000) {
    check_arg(n >= 1 && n <= 6, "branch_and_bound_min: n must be at most 6");
    check_arg(k >= 2, "branch_and_bound_min: k must be >= 2");
    const long long space = 1LL << n;
    if (s < 0 || s > space) throw std::domain_error("branch_and_bound_min: s outside [0, 2^n]");

    OracleResult res;
    res.n = n;
    res.s = s;
    res.k = k;

    const SetFamily seed = canonical_family(n, s);
    std::uint64_t incumbent = static_cast<std::uint64_t>(count_k_chains(seed, k));
    res.witnesses.push_back(seed);
    res.witness_total = 1;
    res.complete = false;

    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::milliseconds(time_budget_ms);
    if (time_budget_ms > 0 && s > 0) {
        const std::vector<std::uint32_t> universe = detail::canonical_universe(n);
        const int u = static_cast<int>(universe.size());
        const detail::ScaledBoundTable table = detail::scaled_bound_table(n, k);

        // suffix capacity per level, indexed [idx][level]
        std::vector<std::vector<int>> cap(static_cast<std::size_t>(u) + 1,
                                          std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
        for (int i = u - 1; i >= 0; --i) {
            cap[static_cast<std::size_t>(i)] = cap[static_cast<std::size_t>(i) + 1];
            ++cap[static_cast<std::size_t>(i)]
                 [static_cast<std::size_t>(std::popcount(universe[static_cast<std::size_t>(i)]))];
        }

        std::vector<std::uint32_t> chosen;
        std::vector<std::vector<std::uint64_t>> f(static_cast<std::size_t>(k) + 1);
        std::int64_t chosen_cost = 0;
        std::uint64_t partial = 0;
        std::uint64_t nodes = 0;
        bool aborted = false;
        bool improved = false;

        auto bound_prunes = [&](int idx, int need) -> bool {
            if (!table.usable || need < 0) return false;
            std::int64_t lb = chosen_cost;
            int left = need;
            for (int lvl : table.cheap_order) {
                if (left == 0) break;
                const int avail =
                    cap[static_cast<std::size_t>(idx)][static_cast<std::size_t>(lvl)];
                const int take = std::min(avail, left);
                lb += static_cast<std::int64_t>(take) * table.cost[static_cast<std::size_t>(lvl)];
                left -= take;
            }
            lb -= table.offset;
            // prune when lb/D >= incumbent, i.e. no completion can improve
            return lb >= static_cast<std::int64_t>(incumbent) * table.scale;
        };

        auto dfs = [&](auto&& self, int idx) -> void {
            if (aborted) return;
            if ((++nodes & 0xfffu) == 0 && std::chrono::steady_clock::now() > deadline) {
                aborted = true;
                return;
            }
            const int need = static_cast<int>(s) - static_cast<int>(chosen.size());
            if (need == 0) {
                ++res.families_examined;
                if (partial < incumbent) {
                    incumbent = partial;
                    improved = true;
                    res.witnesses.clear();
                    res.witnesses.push_back(SetFamily::from_masks(n, chosen));
                    res.witness_total = 1;
                } else if (partial == incumbent && improved) {
                    ++res.witness_total;
                    if (res.witnesses.size() < witness_cap) {
                        res.witnesses.push_back(SetFamily::from_masks(n, chosen));
                    }
                }
                return;
            }
            if (u - idx < need) return;
            if (bound_prunes(idx, need)) return;

            // include universe[idx]
            const std::uint32_t x = universe[static_cast<std::size_t>(idx)];
            std::uint64_t delta = 0;
            {
                const std::size_t p = chosen.size();
                f[1].push_back(1);
                for (int j = 2; j <= k; ++j) {
                    std::uint64_t acc = 0;
                    for (std::size_t q = 0; q < p; ++q) {
                        if ((chosen[q] & ~x) == 0 && chosen[q] != x) acc += f[static_cast<std::size_t>(j - 1)][q];
                    }
                    f[static_cast<std::size_t>(j)].push_back(acc);
                }
                delta = f[static_cast<std::size_t>(k)].back();
            }
            chosen.push_back(x);
            partial += delta;
            chosen_cost += table.usable
                               ? table.cost[static_cast<std::size_t>(std::popcount(x))]
                               : 0;
            if (partial < incumbent) self(self, idx + 1);
            chosen_cost -= table.usable
                               ? table.cost[static_cast<std::size_t>(std::popcount(x))]
                               : 0;
            partial -= delta;
            chosen.pop_back();
            for (int j = 1; j <= k; ++j) f[static_cast<std::size_t>(j)].pop_back();
            if (aborted) return;

            // exclude universe[idx]
            self(self, idx + 1);
        };
        dfs(dfs, 0);
        res.complete = !aborted;
    } else if (s == 0) {
        res.complete = time_budget_ms > 0;
    }

    res.minimum = incumbent;
    for (const SetFamily& w : res.witnesses) {
        require(count_k_chains(w, k) == res.minimum,
                "branch_and_bound_min: witness recount mismatch");
    }
    return res;
}

struct ConjectureCheckRow {
    long long s = 0;
    Bigint oracle_min;
    Bigint conjectured;
    bool equal = false;
};

struct ConjectureReport {
    int n = 0;
    int k = 0;
    std::vector<ConjectureCheckRow> rows;
    bool ok = true;
    std::optional<SetFamily> counterexample;  // an oracle witness beating the construction
};

// Exhaustively checks oracle minimum == centered-family count over a size range.
inline ConjectureReport verify_conjecture(int n, int k, long long s_lo, long long s_hi,
                                          int threads = 1) {
    check_arg(n >= 1 && n <= 4, "verify_conjecture: n must be at most 4");
    check_arg(s_lo >= 0 && s_hi <= (1LL << n), "verify_conjecture: bad size range");
    ConjectureReport rep;
    rep.n = n;
    rep.k = k;
    for (long long s = s_lo; s <= s_hi; ++s) {
        OracleResult oracle = exhaustive_min(n, s, k, threads, 1);
        ConjectureCheckRow row;
        row.s = s;
        row.oracle_min = oracle.minimum;
        row.conjectured = conjectured_min(n, s, k);
        row.equal = row.oracle_min == row.conjectured;
        if (!row.equal && rep.ok) {
            rep.ok = false;
            if (!oracle.witnesses.empty()) rep.counterexample = oracle.witnesses.front();
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

struct IffReport {
    int n = 0;
    long long s = 0;
    unsigned long long optima_total = 0;
    unsigned long long certified_total = 0;
    bool optimal_implies_certified = true;
    bool certified_implies_optimal = true;
    bool ok = true;
    std::vector<SetFamily> optimal_not_certified;
    std::vector<SetFamily> certified_not_optimal;
};

// Both directions of the 2-chain extremal characterization at one size:
// every oracle-optimal family is certified and every certified family is
// oracle-optimal.
inline IffReport verify_iff_characterization(int n, long long s, std::size_t example_cap = 5) {
    check_arg(n >= 1 && n <= 4, "verify_iff_characterization: n must be at most 4");
    check_arg(Bigint(s) >= sperner_bound(n),
              "verify_iff_characterization: s below the largest antichain size");
    check_arg(s <= (1LL << n), "verify_iff_characterization: s above 2^n");
    IffReport rep;
    rep.n = n;
    rep.s = s;

    const std::vector<std::uint32_t> universe = detail::canonical_universe(n);
    const int u = static_cast<int>(universe.size());
    std::vector<int> idx(static_cast<std::size_t>(s));
    std::iota(idx.begin(), idx.end(), 0);

    std::vector<std::uint64_t> counts;
    std::vector<char> certified;
    std::uint64_t minimum = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(s));
    while (true) {
        for (std::size_t i = 0; i < masks.size(); ++i) {
            masks[i] = universe[static_cast<std::size_t>(idx[i])];
        }
        counts.push_back(detail::count_chains_u64(masks, 2));
        minimum = std::min(minimum, counts.back());
        certified.push_back(
            check_extremal_2chain(SetFamily::from_masks(n, masks)).satisfied ? 1 : 0);

        int j = static_cast<int>(s) - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == u - static_cast<int>(s) + j) --j;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int i = j + 1; i < static_cast<int>(s); ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }

    // second pass to tally and collect mismatch examples
    std::iota(idx.begin(), idx.end(), 0);
    std::size_t at = 0;
    while (true) {
        const bool opt = counts[at] == minimum;
        const bool cert = certified[at] != 0;
        if (opt) ++rep.optima_total;
        if (cert) ++rep.certified_total;
        if (opt != cert) {
            for (std::size_t i = 0; i < masks.size(); ++i) {
                masks[i] = universe[static_cast<std::size_t>(idx[i])];
            }
            if (opt && !cert) {
                rep.optimal_implies_certified = false;
                if (rep.optimal_not_certified.size() < example_cap) {
                    rep.optimal_not_certified.push_back(SetFamily::from_masks(n, masks));
                }
            } else {
                rep.certified_implies_optimal = false;
                if (rep.certified_not_optimal.size() < example_cap) {
                    rep.certified_not_optimal.push_back(SetFamily::from_masks(n, masks));
                }
            }
        }
        ++at;
        int j = static_cast<int>(s) - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == u - static_cast<int>(s) + j) --j;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int i = j + 1; i < static_cast<int>(s); ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    rep.ok = rep.optimal_implies_certified && rep.certified_implies_optimal;
    return rep;
}

}  // namespace chainlab
