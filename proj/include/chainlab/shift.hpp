#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "chainlab/bounds.hpp"
#include "chainlab/chains.hpp"
#include "chainlab/numbers.hpp"
#include "chainlab/set_family.hpp"

namespace chainlab {

// Auxiliary bipartite inclusion graph for one shift step: left vertices are
// the maximal-size sets to move, right vertices are absent shadow sets, and
// (A, B) is an edge iff B lies ell levels below A inside it.
struct BipartiteGraph {
    std::vector<ElementSet> left;
    std::vector<ElementSet> right;
    std::vector<std::vector<int>> adj;  // left index -> right indices, ascending
    int ell = 0;

    static BipartiteGraph inclusion_graph(std::vector<ElementSet> left,
                                          std::vector<ElementSet> right, int ell) {
        BipartiteGraph g;
        g.left = std::move(left);
        g.right = std::move(right);
        g.ell = ell;
        g.adj.resize(g.left.size());
        for (std::size_t i = 0; i < g.left.size(); ++i) {
            for (std::size_t j = 0; j < g.right.size(); ++j) {
                if (g.right[j].proper_subset_of(g.left[i])) {
                    require(g.left[i].cardinality() - g.right[j].cardinality() == ell,
                            "inclusion_graph: edge does not span ell levels");
                    g.adj[i].push_back(static_cast<int>(j));
                }
            }
        }
        return g;
    }

    int max_right_degree() const {
        std::vector<int> deg(right.size(), 0);
        for (const auto& nbrs : adj) {
            for (int j : nbrs) ++deg[static_cast<std::size_t>(j)];
        }
        int d = 0;
        for (int x : deg) d = std::max(d, x);
        return d;
    }
};

struct Matching {
    std::vector<int> left_match;   // right index or -1
    std::vector<int> right_match;  // left index or -1
    int size = 0;
};

// Maximum matching by augmenting paths; vertices are scanned in index
// order, so the result is deterministic for a fixed graph.
inline Matching max_matching(const BipartiteGraph& g) {
    Matching m;
    m.left_match.assign(g.left.size(), -1);
    m.right_match.assign(g.right.size(), -1);

    std::vector<char> visited(g.right.size(), 0);
    auto augment = [&](auto&& self, int u) -> bool {
        for (int v : g.adj[static_cast<std::size_t>(u)]) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            visited[static_cast<std::size_t>(v)] = 1;
            if (m.right_match[static_cast<std::size_t>(v)] == -1 ||
                self(self, m.right_match[static_cast<std::size_t>(v)])) {
                m.left_match[static_cast<std::size_t>(u)] = v;
                m.right_match[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < g.left.size(); ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        if (augment(augment, static_cast<int>(u))) ++m.size;
    }
    return m;
}

struct HallDecomposition {
    std::vector<int> u1;        // left indices, ascending
    std::vector<int> v1;        // right indices = N(u1), ascending
    std::vector<int> matching;  // parallel to u1: matched right index
};

namespace detail {

inline std::vector<int> neighborhood(const BipartiteGraph& g, const std::vector<int>& lefts) {
    std::vector<char> seen(g.right.size(), 0);
    for (int u : lefts) {
        for (int v : g.adj[static_cast<std::size_t>(u)]) seen[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<int> out;
    for (std::size_t j = 0; j < seen.size(); ++j) {
        if (seen[j]) out.push_back(static_cast<int>(j));
    }
    return out;
}

}  // namespace detail

// When no saturating matching exists, produces nonempty U1, V1 with a
// perfect matching U1 -> V1, |U1| = |V1| = |N(U1)|, and
//   e(U1, V) + e(U \ U1, V1) <= |U1| * max right degree
// (checked on every call).  Construction: a minimal Hall violator U0 is
// grown from an unmatched left vertex by alternating reachability, shrunk
// greedily in index order, and its last element dropped.
inline HallDecomposition hall_decomposition(const BipartiteGraph& g) {
    for (const auto& nbrs : g.adj) {
        require(!nbrs.empty(), "hall_decomposition: left vertex with no neighbors");
    }
    const Matching m = max_matching(g);
    require(m.size < static_cast<int>(g.left.size()),
            "hall_decomposition: a saturating matching exists");

    int u0 = -1;
    for (std::size_t u = 0; u < g.left.size(); ++u) {
        if (m.left_match[u] == -1) {
            u0 = static_cast<int>(u);
            break;
        }
    }

    // Alternating reachability from the unmatched vertex: free edges
    // left -> right, matched edges right -> left.
    std::vector<char> in_set(g.left.size(), 0);
    std::vector<int> queue{u0};
    in_set[static_cast<std::size_t>(u0)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (int v : g.adj[static_cast<std::size_t>(queue[head])]) {
            const int back = m.right_match[static_cast<std::size_t>(v)];
            if (back != -1 && !in_set[static_cast<std::size_t>(back)]) {
                in_set[static_cast<std::size_t>(back)] = 1;
                queue.push_back(back);
            }
        }
    }
    std::vector<int> violator;
    for (std::size_t u = 0; u < g.left.size(); ++u) {
        if (in_set[u]) violator.push_back(static_cast<int>(u));
    }
    require(static_cast<int>(detail::neighborhood(g, violator).size()) <
                static_cast<int>(violator.size()),
            "hall_decomposition: reachability set is not a violator");

    // Shrink to a minimal violator: drop vertices (index order) while the
    // violation persists; repeat until no single removal works.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < violator.size(); ++i) {
            std::vector<int> candidate = violator;
            candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
            if (static_cast<int>(detail::neighborhood(g, candidate).size()) <
                static_cast<int>(candidate.size())) {
                violator = std::move(candidate);
                changed = true;
                break;
            }
        }
    }
    require(violator.size() >= 2, "hall_decomposition: violator too small");

    HallDecomposition d;
    d.u1 = violator;
    d.u1.pop_back();  // drop the canonically largest element
    d.v1 = detail::neighborhood(g, d.u1);
    require(d.v1.size() == d.u1.size(), "hall_decomposition: |N(U1)| != |U1|");

    // Perfect matching on the induced subgraph (exists by Hall, since U0 was minimal).
    BipartiteGraph sub;
    sub.ell = g.ell;
    sub.left.reserve(d.u1.size());
    sub.right.reserve(d.v1.size());
    for (int u : d.u1) sub.left.push_back(g.left[static_cast<std::size_t>(u)]);
    for (int v : d.v1) sub.right.push_back(g.right[static_cast<std::size_t>(v)]);
    sub.adj.resize(sub.left.size());
    for (std::size_t i = 0; i < d.u1.size(); ++i) {
        for (int v : g.adj[static_cast<std::size_t>(d.u1[i])]) {
            const auto it = std::lower_bound(d.v1.begin(), d.v1.end(), v);
            if (it != d.v1.end() && *it == v) {
                sub.adj[i].push_back(static_cast<int>(it - d.v1.begin()));
            }
        }
    }
    const Matching pm = max_matching(sub);
    require(pm.size == static_cast<int>(d.u1.size()),
            "hall_decomposition: no perfect matching on U1");
    d.matching.resize(d.u1.size());
    for (std::size_t i = 0; i < d.u1.size(); ++i) {
        d.matching[i] = d.v1[static_cast<std::size_t>(pm.left_match[i])];
    }

    // e(U1, V) + e(U \ U1, V1) <= |U1| * Delta_V
    long long e_u1_v = 0;
    for (int u : d.u1) e_u1_v += static_cast<long long>(g.adj[static_cast<std::size_t>(u)].size());
    std::vector<char> in_u1(g.left.size(), 0);
    for (int u : d.u1) in_u1[static_cast<std::size_t>(u)] = 1;
    std::vector<char> in_v1(g.right.size(), 0);
    for (int v : d.v1) in_v1[static_cast<std::size_t>(v)] = 1;
    long long e_rest_v1 = 0;
    for (std::size_t u = 0; u < g.left.size(); ++u) {
        if (in_u1[u]) continue;
        for (int v : g.adj[u]) {
            if (in_v1[static_cast<std::size_t>(v)]) ++e_rest_v1;
        }
    }
    require(e_u1_v + e_rest_v1 <=
                static_cast<long long>(d.u1.size()) * g.max_right_degree(),
            "hall_decomposition: edge-count inequality violated");
    return d;
}

// Replaces the empty set and the full set, when present, by the
// canonical-order first absent sets that are neither.  The swap cannot
// create chains that were not already present through the extreme set.
inline SetFamily strip_extremes(const SetFamily& fam,
                                std::optional<int> recount_k = std::nullopt) {
    const int n = fam.n();
    const ElementSet empty{0};
    const ElementSet full{ground_mask(n)};
    SetFamily out = fam;
    for (ElementSet extreme : {empty, full}) {
        if (!out.contains(extreme)) continue;
        std::optional<ElementSet> replacement;
        for (int c = 1; c <= n - 1 && !replacement; ++c) {
            std::uint32_t mask = (1u << c) - 1u;
            const std::uint64_t cap = binom_u64(n, c);
            for (std::uint64_t i = 0; i < cap; ++i) {
                if (!out.contains(ElementSet{mask})) {
                    replacement = ElementSet{mask};
                    break;
                }
                const std::uint32_t low = mask & (~mask + 1u);
                const std::uint32_t ripple = mask + low;
                mask = ripple | (((mask ^ ripple) >> 2) / low);
            }
        }
        if (!replacement) {
            throw std::domain_error("strip_extremes: no replacement sets available");
        }
        out = replace_members(out, {extreme}, {*replacement});
    }
    require(out.size() == fam.size(), "strip_extremes: family size changed");
    if (recount_k) {
        require(count_k_chains(out, *recount_k) <= count_k_chains(fam, *recount_k),
                "strip_extremes: chain count increased");
    }
    return out;
}

struct ShiftStep {
    std::vector<ElementSet> removed;
    std::vector<ElementSet> inserted;
    int ell = 0;
    HalfInteger m;             // extreme-level excess over n/2 before the move
    bool complemented = false;  // step operated on the complemented family
    Bigint count_after;
};

// One shift move.  Complement-normalizes so the deepest deviation sits above
// n/2, stops when the family already fits the r-band for its size, and
// otherwise moves maximal sets onto absent shadow sets: all of them along a
// saturating matching if one exists, else the Hall pair from the bipartite
// decomposition.  The move is kept only if the exact k-chain recount
// strictly drops; failing that, single-set fallbacks A -> A \ {x} with x a
// witness from a chain below A are tried, best improvement wins.
inline std::optional<std::pair<SetFamily, ShiftStep>> shift_step(const SetFamily& fam, int k) {
    check_arg(k >= 2, "shift_step: k must be >= 2");
    if (fam.empty()) return std::nullopt;
    const int n = fam.n();
    const Bigint count_before = count_k_chains(fam, k);

    int top = 0, bot = n;
    for (ElementSet f : fam.members()) {
        top = std::max(top, f.cardinality());
        bot = std::min(bot, f.cardinality());
    }
    SetFamily work = fam;
    bool complemented = false;
    if (n - 2 * bot > 2 * top - n) {
        work = complement_family(fam);
        complemented = true;
        require(count_k_chains(work, k) == count_before,
                "shift_step: complementing changed the chain count");
        top = n - bot;
    }
    const int m_twice = 2 * top - n;
    const HalfInteger band = detail::r_scan_unchecked(n, work.size());
    if (m_twice <= band.twice) return std::nullopt;
    const HalfInteger m = HalfInteger::from_twice(m_twice);

    // Minimal ell <= 2m - 1 with some maximal set missing an ell-shadow set.
    int ell = 0;
    std::vector<ElementSet> movers;
    for (int cand = 1; cand <= m_twice - 1 && movers.empty(); ++cand) {
        for (ElementSet f : work.members()) {
            if (f.cardinality() != top) continue;
            const SetFamily sh = shadow(SetFamily::from_sets(n, {f}), cand);
            for (ElementSet g : sh.members()) {
                if (!work.contains(g)) {
                    movers.push_back(f);
                    break;
                }
            }
        }
        if (!movers.empty()) ell = cand;
    }
    if (movers.empty()) return std::nullopt;

    std::vector<ElementSet> targets;
    const SetFamily mover_shadow = shadow(SetFamily::from_sets(n, movers), ell);
    for (ElementSet g : mover_shadow.members()) {
        if (!work.contains(g)) targets.push_back(g);
    }
    const BipartiteGraph graph = BipartiteGraph::inclusion_graph(movers, targets, ell);
    const Matching matching = max_matching(graph);

    std::vector<ElementSet> removed, inserted;
    if (matching.size == static_cast<int>(movers.size())) {
        removed = movers;
        for (std::size_t i = 0; i < movers.size(); ++i) {
            inserted.push_back(targets[static_cast<std::size_t>(matching.left_match[i])]);
        }
    } else {
        const HallDecomposition d = hall_decomposition(graph);
        for (std::size_t i = 0; i < d.u1.size(); ++i) {
            removed.push_back(movers[static_cast<std::size_t>(d.u1[i])]);
            inserted.push_back(targets[static_cast<std::size_t>(d.matching[i])]);
        }
    }

    const auto finish = [&](SetFamily next, Bigint count_after) {
        ShiftStep step;
        step.removed = removed;
        step.inserted = inserted;
        std::sort(step.removed.begin(), step.removed.end(), canonical_less);
        std::sort(step.inserted.begin(), step.inserted.end(), canonical_less);
        step.ell = ell;
        step.m = m;
        step.complemented = complemented;
        step.count_after = std::move(count_after);
        require(next.size() == fam.size(), "shift_step: family size changed");
        return std::make_pair(std::move(next), std::move(step));
    };

    SetFamily candidate = replace_members(work, removed, inserted);
    Bigint count_after = count_k_chains(candidate, k);
    if (count_after < count_before) return finish(std::move(candidate), std::move(count_after));

    // Fallback: move a single maximal set one level down past a witness
    // element taken from a chain below it.
    std::optional<SetFamily> best;
    std::optional<Bigint> best_count;
    std::vector<ElementSet> best_removed, best_inserted;
    for (ElementSet a : movers) {
        std::optional<ElementSet> insert;
        for (ElementSet c : work.members()) {  // canonical order: smallest witness chain first
            if (!c.proper_subset_of(a)) continue;
            for (int x : elements_of(c)) {
                const ElementSet down{a.bits & ~(1u << (x - 1))};
                if (!work.contains(down)) {
                    insert = down;
                    break;
                }
            }
            if (insert) break;
        }
        if (!insert) continue;
        SetFamily single = replace_members(work, {a}, {*insert});
        Bigint cnt = count_k_chains(single, k);
        if (cnt < count_before && (!best_count || cnt < *best_count)) {
            best = std::move(single);
            best_count = std::move(cnt);
            best_removed = {a};
            best_inserted = {*insert};
        }
    }
    if (best) {
        removed = best_removed;
        inserted = best_inserted;
        return finish(std::move(*best), std::move(*best_count));
    }
    return std::nullopt;
}

struct ShiftTrace {
    Bigint initial_count;
    bool stripped = false;
    std::vector<ElementSet> strip_removed, strip_inserted;
    Bigint count_after_strip;
    std::vector<ShiftStep> steps;
    Bigint final_count;
};

// Local search: strip the extreme sets once, then apply shift steps while
// they strictly decrease the k-chain count, up to max_steps accepted moves.
inline std::pair<SetFamily, ShiftTrace> minimize(const SetFamily& fam, int k, int max_steps) {
    check_arg(k >= 2, "minimize: k must be >= 2");
    check_arg(max_steps >= 0, "minimize: max_steps must be non-negative");
    ShiftTrace trace;
    trace.initial_count = count_k_chains(fam, k);

    SetFamily current = strip_extremes(fam, k);
    if (!(current == fam)) {
        trace.stripped = true;
        for (ElementSet f : fam.members()) {
            if (!current.contains(f)) trace.strip_removed.push_back(f);
        }
        for (ElementSet f : current.members()) {
            if (!fam.contains(f)) trace.strip_inserted.push_back(f);
        }
    }
    trace.count_after_strip = count_k_chains(current, k);
    require(trace.count_after_strip <= trace.initial_count,
            "minimize: stripping increased the chain count");

    Bigint count = trace.count_after_strip;
    for (int i = 0; i < max_steps; ++i) {
        auto next = shift_step(current, k);
        if (!next) break;
        require(next->second.count_after < count, "minimize: step did not improve");
        require(next->first.size() == current.size(), "minimize: family size changed");
        count = next->second.count_after;
        current = std::move(next->first);
        trace.steps.push_back(std::move(next->second));
    }
    trace.final_count = count;
    return {std::move(current), std::move(trace)};
}

}  // namespace chainlab
