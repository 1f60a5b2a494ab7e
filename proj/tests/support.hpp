#pragma once

// Shared test utilities: a portable deterministic generator for seeded
// corpora and brute-force oracles kept independent of the library's DPs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "chainlab/chains.hpp"
#include "chainlab/set_family.hpp"

namespace testsupport {

// SplitMix64: identical sequences on every platform, unlike <random>
// distributions.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

inline chainlab::SetFamily random_family(SplitMix64& rng, int n, int size) {
    std::set<std::uint32_t> picked;
    const std::uint64_t space = 1ull << n;
    const std::uint64_t want = std::min<std::uint64_t>(static_cast<std::uint64_t>(size), space);
    while (picked.size() < want) {
        picked.insert(static_cast<std::uint32_t>(rng.below(space)));
    }
    return chainlab::SetFamily::from_masks(
        n, std::vector<std::uint32_t>(picked.begin(), picked.end()));
}

inline chainlab::SetFamily full_level(int n, int c) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m <= chainlab::ground_mask(n); ++m) {
        if (std::popcount(m) == c) masks.push_back(m);
    }
    return chainlab::SetFamily::from_masks(n, std::move(masks));
}

inline chainlab::SetFamily full_levels(int n, std::initializer_list<int> levels) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m <= chainlab::ground_mask(n); ++m) {
        for (int c : levels) {
            if (std::popcount(m) == c) masks.push_back(m);
        }
    }
    return chainlab::SetFamily::from_masks(n, std::move(masks));
}

inline chainlab::SetFamily family_of(int n, std::initializer_list<std::uint32_t> masks) {
    return chainlab::SetFamily::from_masks(n, std::vector<std::uint32_t>(masks));
}

// Materializes every k-chain by scanning all k-subsets of the members.  In
// canonical member order a subset is a chain iff consecutive entries nest.
inline std::vector<chainlab::Chain> enumerate_chains(const chainlab::SetFamily& fam, int k) {
    std::vector<chainlab::Chain> out;
    const int s = fam.size();
    if (s < k) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        bool chain = true;
        for (int i = 0; i + 1 < k && chain; ++i) {
            chain = fam.member(idx[static_cast<std::size_t>(i)])
                        .proper_subset_of(fam.member(idx[static_cast<std::size_t>(i + 1)]));
        }
        if (chain) {
            std::vector<chainlab::ElementSet> sets;
            for (int i : idx) sets.push_back(fam.member(i));
            out.push_back(chainlab::Chain::of(std::move(sets)));
        }
        int j = k - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == s - k + j) --j;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int i = j + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return out;
}

inline chainlab::Bigint naive_count_k_chains(const chainlab::SetFamily& fam, int k) {
    return chainlab::Bigint(enumerate_chains(fam, k).size());
}

// Sum over all permutations of [n] of the number of members appearing as an
// initial segment (the empty prefix included).
inline chainlab::Bigint perm_prefix_count(const chainlab::SetFamily& fam) {
    chainlab::Bigint total = 0;
    std::vector<int> perm(static_cast<std::size_t>(fam.n()));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        if (fam.contains(chainlab::ElementSet{0})) ++total;
        std::uint32_t prefix = 0;
        for (int e : perm) {
            prefix |= 1u << (e - 1);
            if (fam.contains(chainlab::ElementSet{prefix})) ++total;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace testsupport
