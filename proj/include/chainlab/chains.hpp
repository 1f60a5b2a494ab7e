#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "chainlab/numbers.hpp"
#include "chainlab/set_family.hpp"

namespace chainlab {

// A k-chain: sets strictly increasing under inclusion.
struct Chain {
    std::vector<ElementSet> sets;

    static Chain of(std::vector<ElementSet> sets) {
        check_arg(!sets.empty(), "Chain: empty");
        for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
            check_arg(sets[i].proper_subset_of(sets[i + 1]),
                      "Chain: sets must strictly increase under inclusion");
        }
        return Chain{std::move(sets)};
    }

    int length() const { return static_cast<int>(sets.size()); }
};

struct PermutationWeight {
    Bigint value;
};

// |S_n[F]| = |F|! (n-|F|)!  -- permutations with F as an initial segment.
inline PermutationWeight perm_weight_set(ElementSet f, int n) {
    check_arg(f.valid_over(n), "perm_weight_set: set not valid over n");
    const int c = f.cardinality();
    return PermutationWeight{factorial(c) * factorial(n - c)};
}

// Number of permutations containing every set of the chain as a prefix:
// |F_1|! * prod |F_{i+1} \ F_i|! * (n - |F_k|)!.
inline PermutationWeight perm_weight_chain(const Chain& chain, int n) {
    check_arg(!chain.sets.empty(), "perm_weight_chain: empty chain");
    for (ElementSet s : chain.sets) {
        check_arg(s.valid_over(n), "perm_weight_chain: set not valid over n");
    }
    Bigint w = factorial(chain.sets.front().cardinality());
    for (std::size_t i = 0; i + 1 < chain.sets.size(); ++i) {
        w *= factorial(chain.sets[i + 1].cardinality() - chain.sets[i].cardinality());
    }
    w *= factorial(n - chain.sets.back().cardinality());
    return PermutationWeight{w};
}

// Every k-chain is charged to one endpoint: the minimum set when
// |F_1| + |F_k| < n, the maximum set otherwise.
inline ElementSet owner_of(const Chain& chain, int n) {
    for (ElementSet s : chain.sets) {
        check_arg(s.valid_over(n), "owner_of: set not valid over n");
    }
    const int lo = chain.sets.front().cardinality();
    const int hi = chain.sets.back().cardinality();
    return lo + hi < n ? chain.sets.front() : chain.sets.back();
}

namespace detail {

// First member index of each cardinality level; members are in canonical
// order, so every proper subset of member i sits strictly before
// level_start[card(i)].
inline std::vector<int> level_starts(const SetFamily& fam) {
    std::vector<int> start(static_cast<std::size_t>(fam.n()) + 2, fam.size());
    for (int i = fam.size() - 1; i >= 0; --i) {
        start[static_cast<std::size_t>(fam.member(i).cardinality())] = i;
    }
    for (int c = fam.n(); c >= 0; --c) {
        auto& s = start[static_cast<std::size_t>(c)];
        s = std::min(s, start[static_cast<std::size_t>(c) + 1]);
    }
    return start;
}

}  // namespace detail

// Exact number of k-chains among the members.  Dynamic program in canonical
// order: f_j(F) = sum of f_{j-1}(G) over members G strictly inside F.
inline Bigint count_k_chains(const SetFamily& fam, int k) {
    check_arg(k >= 2, "count_k_chains: k must be >= 2");
    const int s = fam.size();
    if (s < k) return 0;
    const std::vector<int> start = detail::level_starts(fam);

    std::vector<Bigint> prev(static_cast<std::size_t>(s), Bigint(1));
    std::vector<Bigint> cur(static_cast<std::size_t>(s));
    for (int j = 2; j <= k; ++j) {
        for (int i = 0; i < s; ++i) {
            Bigint acc = 0;
            const ElementSet fi = fam.member(i);
            const int upto = start[static_cast<std::size_t>(fi.cardinality())];
            for (int h = 0; h < upto; ++h) {
                if (fam.member(h).subset_of(fi)) acc += prev[static_cast<std::size_t>(h)];
            }
            cur[static_cast<std::size_t>(i)] = std::move(acc);
        }
        std::swap(prev, cur);
    }
    return std::accumulate(prev.begin(), prev.end(), Bigint(0));
}

// c_2(A, B): comparable pairs with the first set drawn from A and the second
// from B, either direction of strict inclusion.  A pair lying in both
// families is reached by both assignments and counts twice, which is what
// makes c_2(F) = c_2(H) - c_2(H\F, H) + c_2(H\F) hold for F inside H.
inline Bigint count_2chains_cross(const SetFamily& a, const SetFamily& b) {
    check_arg(a.n() == b.n(), "count_2chains_cross: ground sizes differ");
    std::uint64_t pairs = 0;
    for (ElementSet x : a.members()) {
        for (ElementSet y : b.members()) {
            if (x.proper_subset_of(y) || y.proper_subset_of(x)) ++pairs;
        }
    }
    return Bigint(pairs);
}

// k-chains whose i-th step has size at least alphas[i].
inline Bigint count_chains_step_constrained(const SetFamily& fam, int k,
                                            const std::vector<int>& alphas) {
    check_arg(k >= 2, "count_chains_step_constrained: k must be >= 2");
    check_arg(static_cast<int>(alphas.size()) == k - 1,
              "count_chains_step_constrained: need k-1 step bounds");
    for (int a : alphas) check_arg(a >= 1, "count_chains_step_constrained: alphas must be >= 1");

    const int s = fam.size();
    if (s < k) return 0;
    const std::vector<int> start = detail::level_starts(fam);

    std::vector<Bigint> prev(static_cast<std::size_t>(s), Bigint(1));
    std::vector<Bigint> cur(static_cast<std::size_t>(s));
    for (int j = 2; j <= k; ++j) {
        const int alpha = alphas[static_cast<std::size_t>(j - 2)];
        for (int i = 0; i < s; ++i) {
            Bigint acc = 0;
            const ElementSet fi = fam.member(i);
            const int ci = fi.cardinality();
            const int upto = start[static_cast<std::size_t>(ci)];
            for (int h = 0; h < upto; ++h) {
                const ElementSet fh = fam.member(h);
                if (ci - fh.cardinality() >= alpha && fh.subset_of(fi)) {
                    acc += prev[static_cast<std::size_t>(h)];
                }
            }
            cur[static_cast<std::size_t>(i)] = std::move(acc);
        }
        std::swap(prev, cur);
    }
    return std::accumulate(prev.begin(), prev.end(), Bigint(0));
}

struct ChainCountReport {
    int n = 0;
    int k = 0;
    Bigint total;
    Bigint c1;  // chains with every step of size exactly 1
    Bigint c2;  // chains with some step of size >= 2
    std::vector<std::pair<ElementSet, Bigint>> per_owner;  // canonical member order
};

// Per-owner chain counts C(F) plus the C1/C2 split.  Chains are never
// materialized: two cardinality-stratified DPs count, for every member, the
// chains it owns as maximum (opposite endpoint size >= n - |F|) and as
// minimum (opposite endpoint size < n - |F|).
inline ChainCountReport owner_counts(const SetFamily& fam, int k) {
    check_arg(k >= 2, "owner_counts: k must be >= 2");
    const int s = fam.size();
    const int n = fam.n();
    ChainCountReport rep;
    rep.n = n;
    rep.k = k;
    rep.per_owner.reserve(static_cast<std::size_t>(s));
    for (ElementSet f : fam.members()) rep.per_owner.emplace_back(f, Bigint(0));
    rep.total = 0;
    rep.c1 = 0;
    rep.c2 = 0;
    if (s < k) {
        rep.total = rep.c1 = rep.c2 = 0;
        return rep;
    }

    const std::vector<int> start = detail::level_starts(fam);
    const std::size_t cols = static_cast<std::size_t>(n) + 1;
    const auto at = [cols](std::vector<Bigint>& t, int i, int c) -> Bigint& {
        return t[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(c)];
    };

    // Downward DP: chains ending at member i, stratified by minimum size c.
    std::vector<Bigint> prev(static_cast<std::size_t>(s) * cols), cur;
    for (int i = 0; i < s; ++i) at(prev, i, fam.member(i).cardinality()) = 1;
    for (int j = 2; j <= k; ++j) {
        cur.assign(static_cast<std::size_t>(s) * cols, Bigint(0));
        for (int i = 0; i < s; ++i) {
            const ElementSet fi = fam.member(i);
            const int upto = start[static_cast<std::size_t>(fi.cardinality())];
            for (int h = 0; h < upto; ++h) {
                if (!fam.member(h).subset_of(fi)) continue;
                for (int c = 0; c <= n; ++c) {
                    const Bigint& v = at(prev, h, c);
                    if (v != 0) at(cur, i, c) += v;
                }
            }
        }
        std::swap(prev, cur);
    }
    for (int i = 0; i < s; ++i) {
        const int ci = fam.member(i).cardinality();
        for (int c = 0; c <= n; ++c) {
            if (c + ci >= n) rep.per_owner[static_cast<std::size_t>(i)].second += at(prev, i, c);
        }
    }

    // Upward DP: chains starting at member i, stratified by maximum size c.
    prev.assign(static_cast<std::size_t>(s) * cols, Bigint(0));
    for (int i = 0; i < s; ++i) at(prev, i, fam.member(i).cardinality()) = 1;
    for (int j = 2; j <= k; ++j) {
        cur.assign(static_cast<std::size_t>(s) * cols, Bigint(0));
        for (int i = 0; i < s; ++i) {
            const ElementSet fi = fam.member(i);
            const int from = start[static_cast<std::size_t>(fi.cardinality()) + 1];
            for (int h = from; h < s; ++h) {
                if (!fi.subset_of(fam.member(h))) continue;
                for (int c = 0; c <= n; ++c) {
                    const Bigint& v = at(prev, h, c);
                    if (v != 0) at(cur, i, c) += v;
                }
            }
        }
        std::swap(prev, cur);
    }
    for (int i = 0; i < s; ++i) {
        const int ci = fam.member(i).cardinality();
        for (int c = 0; c <= n; ++c) {
            if (ci + c < n) rep.per_owner[static_cast<std::size_t>(i)].second += at(prev, i, c);
        }
    }

    for (const auto& [f, cnt] : rep.per_owner) rep.total += cnt;
    require(rep.total == count_k_chains(fam, k),
            "owner_counts: ownership does not partition the chains");

    // Unit-step chains via a plain DP restricted to steps of size 1.
    std::vector<Bigint> uprev(static_cast<std::size_t>(s), Bigint(1));
    std::vector<Bigint> ucur(static_cast<std::size_t>(s));
    for (int j = 2; j <= k; ++j) {
        for (int i = 0; i < s; ++i) {
            Bigint acc = 0;
            const ElementSet fi = fam.member(i);
            const int ci = fi.cardinality();
            const int from = start[static_cast<std::size_t>(std::max(ci - 1, 0))];
            const int upto = start[static_cast<std::size_t>(ci)];
            for (int h = from; h < upto; ++h) {
                const ElementSet fh = fam.member(h);
                if (fh.cardinality() == ci - 1 && fh.subset_of(fi)) {
                    acc += uprev[static_cast<std::size_t>(h)];
                }
            }
            ucur[static_cast<std::size_t>(i)] = std::move(acc);
        }
        std::swap(uprev, ucur);
    }
    rep.c1 = std::accumulate(uprev.begin(), uprev.end(), Bigint(0));
    rep.c2 = rep.total - rep.c1;
    return rep;
}

struct LymInequality {
    std::string name;
    Bigint lhs;
    Bigint rhs;
    Bigint margin;  // lhs - rhs
    bool holds = false;
};

struct LymAudit {
    int n = 0;
    int k = 0;
    Bigint n_factorial;
    Bigint sum_set_weights;     // sum over members of |S_n[F]|
    Bigint chain_weight_total;  // sum over k-chains of |inter_i S_n[F_i]|
    Bigint chain_weight_c1;     // restricted to unit-step chains
    Bigint chain_weight_c2;     // restricted to chains with a step >= 2
    std::array<LymInequality, 3> inequalities;
    bool perm_enumerated = false;  // direct S_n cross-check was run (n <= 8)
    Bigint perm_prefix_total;      // sum over permutations of #prefix members
};

namespace detail {

// Permutation-weight DPs.  W_j(i) accumulates, over j-chains ending at
// member i, the product |F_1|! * prod(step sizes)!.  Multiplying by
// (n - |F_i|)! at the end yields the number of permutations containing the
// chain.  `unit_steps_only` restricts to steps of size 1.
inline Bigint chain_perm_weight_sum(const SetFamily& fam, int k, bool unit_steps_only) {
    const int s = fam.size();
    if (s < k) return 0;
    const std::vector<int> start = level_starts(fam);

    std::vector<Bigint> prev(static_cast<std::size_t>(s));
    std::vector<Bigint> cur(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) {
        prev[static_cast<std::size_t>(i)] = factorial(fam.member(i).cardinality());
    }
    for (int j = 2; j <= k; ++j) {
        for (int i = 0; i < s; ++i) {
            Bigint acc = 0;
            const ElementSet fi = fam.member(i);
            const int ci = fi.cardinality();
            const int upto = start[static_cast<std::size_t>(ci)];
            for (int h = 0; h < upto; ++h) {
                const ElementSet fh = fam.member(h);
                if (!fh.subset_of(fi)) continue;
                const int step = ci - fh.cardinality();
                if (unit_steps_only && step != 1) continue;
                acc += prev[static_cast<std::size_t>(h)] * factorial(step);
            }
            cur[static_cast<std::size_t>(i)] = std::move(acc);
        }
        std::swap(prev, cur);
    }
    Bigint total = 0;
    for (int i = 0; i < s; ++i) {
        total += prev[static_cast<std::size_t>(i)] *
                 factorial(fam.n() - fam.member(i).cardinality());
    }
    return total;
}

}  // namespace detail

// Exact-integer audit of the three permutation-averaging inequalities the
// chain bounds rest on:
//   (k-1)  n! >=   sum_F |S_n[F]| - sum_{k-chains} |inter S_n[F_i]|
//   (k^2-1)n! >= k sum_F |S_n[F]| - sum_{k-chains} |inter S_n[F_i]|
//   (k^2-k)n! >= (k-1) sum_F |S_n[F]| - sum_{C2-chains} |inter S_n[F_i]|
// For n <= 8 the set-weight sum is cross-checked by walking all n!
// permutations and counting prefix members directly.
inline LymAudit lym_audit(const SetFamily& fam, int k) {
    check_arg(k >= 2, "lym_audit: k must be >= 2");
    LymAudit a;
    a.n = fam.n();
    a.k = k;
    a.n_factorial = factorial(fam.n());

    a.sum_set_weights = 0;
    for (ElementSet f : fam.members()) a.sum_set_weights += perm_weight_set(f, fam.n()).value;

    a.chain_weight_total = detail::chain_perm_weight_sum(fam, k, false);
    a.chain_weight_c1 = detail::chain_perm_weight_sum(fam, k, true);
    a.chain_weight_c2 = a.chain_weight_total - a.chain_weight_c1;

    const Bigint kk(k);
    a.inequalities[0] = {"chains_vs_sets", (kk - 1) * a.n_factorial,
                         a.sum_set_weights - a.chain_weight_total, 0, false};
    a.inequalities[1] = {"chains_vs_sets_scaled", (kk * kk - 1) * a.n_factorial,
                         kk * a.sum_set_weights - a.chain_weight_total, 0, false};
    a.inequalities[2] = {"large_step_chains", (kk * kk - kk) * a.n_factorial,
                         (kk - 1) * a.sum_set_weights - a.chain_weight_c2, 0, false};
    for (auto& ineq : a.inequalities) {
        ineq.margin = ineq.lhs - ineq.rhs;
        ineq.holds = ineq.margin >= 0;
    }

    if (fam.n() <= 8) {
        a.perm_enumerated = true;
        a.perm_prefix_total = 0;
        std::vector<int> perm(static_cast<std::size_t>(fam.n()));
        std::iota(perm.begin(), perm.end(), 1);
        do {
            std::uint32_t prefix = 0;
            for (int e : perm) {
                prefix |= 1u << (e - 1);
                if (fam.contains(ElementSet{prefix})) ++a.perm_prefix_total;
            }
            if (fam.contains(ElementSet{0})) ++a.perm_prefix_total;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return a;
}

}  // namespace chainlab
