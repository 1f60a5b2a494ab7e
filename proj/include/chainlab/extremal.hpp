#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "chainlab/bounds.hpp"
#include "chainlab/chains.hpp"
#include "chainlab/numbers.hpp"
#include "chainlab/set_family.hpp"

namespace chainlab {

// Level fill order for the centered construction: floor(n/2), then
// floor(n/2)+1, floor(n/2)-1, floor(n/2)+2, ... with out-of-range offsets
// skipped.  The filled levels always form a consecutive interval.
inline std::vector<int> centered_level_order(int n) {
    check_arg(n >= 1 && n <= kMaxGroundSize, "centered_level_order: n out of range");
    std::vector<int> order;
    const int mid = n / 2;
    order.push_back(mid);
    for (int off = 1; off <= n; ++off) {
        if (mid + off <= n) order.push_back(mid + off);
        if (mid - off >= 0) order.push_back(mid - off);
    }
    return order;
}

namespace detail {

// Appends the colex-first `want` masks of cardinality c over [n].  Same-size
// masks in ascending numeric order are exactly colex order.
inline void append_level_prefix(int n, int c, std::uint64_t want,
                                std::vector<std::uint32_t>& out) {
    if (want == 0) return;
    if (c == 0) {
        out.push_back(0);
        return;
    }
    const std::uint32_t limit = ground_mask(n);
    std::uint32_t mask = (1u << c) - 1u;  // smallest mask with c bits
    std::uint64_t taken = 0;
    while (taken < want) {
        out.push_back(mask);
        ++taken;
        if (taken == want) break;
        // Gosper's hack: next larger mask with the same popcount.
        const std::uint32_t low = mask & (~mask + 1u);
        const std::uint32_t ripple = mask + low;
        mask = ripple | (((mask ^ ripple) >> 2) / low);
        require(mask <= limit, "level prefix ran past the level");
    }
}

}  // namespace detail

// The conjectured-extremal family of size s: whole levels filled outward
// from the middle, the final partial level taken in colex order.
inline SetFamily canonical_family(int n, long long s) {
    check_arg(n >= 1 && n <= kMaxGroundSize, "canonical_family: n out of range");
    if (s < 0 || Bigint(s) > (Bigint(1) << n)) {
        throw std::domain_error("canonical_family: size outside [0, 2^n]");
    }
    std::vector<std::uint32_t> masks;
    masks.reserve(static_cast<std::size_t>(s));
    long long left = s;
    for (int level : centered_level_order(n)) {
        if (left == 0) break;
        const std::uint64_t cap = binom_u64(n, level);
        const std::uint64_t take = std::min<std::uint64_t>(cap, static_cast<std::uint64_t>(left));
        detail::append_level_prefix(n, level, take, masks);
        left -= static_cast<long long>(take);
    }
    require(left == 0, "canonical_family: levels exhausted early");
    return SetFamily::from_masks(n, std::move(masks));
}

// Number of k-chains of the centered family: the conjectured value of
// c_k(n, s), and the proven one for k = 2.
inline Bigint conjectured_min(int n, long long s, int k) {
    return count_k_chains(canonical_family(n, s), k);
}

struct ExtremalCertificate {
    bool satisfied = false;
    HalfInteger r;
    // 1: all sizes within [n/2-r, n/2+r]; 2: interior levels full;
    // 3: boundary members form an antichain (checked when s <= threshold);
    // 4: missing boundary sets form an antichain (checked when s >= threshold).
    std::array<bool, 4> condition_results{true, true, true, true};
    std::vector<ElementSet> violating_sets;
};

// Decides whether `fam` minimizes the number of 2-chains among families of
// its size.  At the threshold size the boundary test passes if either the
// present or the missing boundary sets form an antichain.
inline ExtremalCertificate check_extremal_2chain(const SetFamily& fam) {
    const int n = fam.n();
    const long long s = fam.size();
    if (Bigint(s) < sperner_bound(n)) {
        throw std::domain_error("check_extremal_2chain: family smaller than the largest antichain");
    }
    ExtremalCertificate cert;
    cert.r = r_param(n, s);
    const int lo = (n - cert.r.twice) / 2;
    const int hi = (n + cert.r.twice) / 2;

    std::vector<ElementSet> cond1_violations;
    for (ElementSet f : fam.members()) {
        const int c = f.cardinality();
        if (c < lo || c > hi) cond1_violations.push_back(f);
    }
    cert.condition_results[0] = cond1_violations.empty();

    std::vector<ElementSet> cond2_violations;
    for (int c = lo + 1; c <= hi - 1; ++c) {
        std::uint32_t mask = c == 0 ? 0u : (1u << c) - 1u;
        const std::uint64_t cap = binom_u64(n, c);
        for (std::uint64_t i = 0; i < cap; ++i) {
            if (!fam.contains(ElementSet{mask})) cond2_violations.push_back(ElementSet{mask});
            if (c == 0) break;
            const std::uint32_t low = mask & (~mask + 1u);
            const std::uint32_t ripple = mask + low;
            mask = ripple | (((mask ^ ripple) >> 2) / low);
        }
    }
    cert.condition_results[1] = cond2_violations.empty();

    Bigint threshold = 0;
    for (int i = lo; i <= hi - 1; ++i) threshold += binom(n, i);

    // Members and non-members at the two boundary levels n/2 +- r.
    std::vector<std::uint32_t> present, missing;
    for (ElementSet f : fam.members()) {
        const int c = f.cardinality();
        if (c == lo || c == hi) present.push_back(f.bits);
    }
    for (int c : {lo, hi}) {
        std::uint32_t mask = c == 0 ? 0u : (1u << c) - 1u;
        const std::uint64_t cap = binom_u64(n, c);
        for (std::uint64_t i = 0; i < cap; ++i) {
            if (!fam.contains(ElementSet{mask})) missing.push_back(mask);
            if (c == 0) break;
            const std::uint32_t low = mask & (~mask + 1u);
            const std::uint32_t ripple = mask + low;
            mask = ripple | (((mask ^ ripple) >> 2) / low);
        }
        if (lo == hi) break;
    }
    const SetFamily present_fam = SetFamily::from_masks(n, present);
    const SetFamily missing_fam = SetFamily::from_masks(n, missing);
    cert.condition_results[2] = is_antichain(present_fam);
    cert.condition_results[3] = is_antichain(missing_fam);

    const bool below = Bigint(s) < threshold;
    const bool above = Bigint(s) > threshold;
    bool boundary_ok;
    if (below) {
        boundary_ok = cert.condition_results[2];
    } else if (above) {
        boundary_ok = cert.condition_results[3];
    } else {
        boundary_ok = cert.condition_results[2] || cert.condition_results[3];
    }
    cert.satisfied = cert.condition_results[0] && cert.condition_results[1] && boundary_ok;

    if (!cert.satisfied) {
        cert.violating_sets = cond1_violations;
        cert.violating_sets.insert(cert.violating_sets.end(), cond2_violations.begin(),
                                   cond2_violations.end());
        if (!boundary_ok) {
            // witness: a comparable pair from whichever applicable check failed
            const auto add_pair = [&cert](const SetFamily& g) {
                for (std::size_t i = 0; i < g.members().size(); ++i) {
                    for (std::size_t j = i + 1; j < g.members().size(); ++j) {
                        if (g.members()[i].proper_subset_of(g.members()[j])) {
                            cert.violating_sets.push_back(g.members()[i]);
                            cert.violating_sets.push_back(g.members()[j]);
                            return;
                        }
                    }
                }
            };
            if (!below && !cert.condition_results[3]) add_pair(missing_fam);
            if (!above && !cert.condition_results[2]) add_pair(present_fam);
        }
    }
    return cert;
}

// The saturated family over n = 2m+1: all m-sets avoiding element 1 plus all
// (m+1)-sets containing it.  Every member lies in exactly one comparable
// pair {F, {1} union F}.
inline SetFamily saturated_example(int m) {
    check_arg(m >= 1, "saturated_example: m must be >= 1");
    const int n = 2 * m + 1;
    check_arg(n <= kMaxGroundSize, "saturated_example: ground size exceeds cap");
    std::vector<std::uint32_t> masks;
    const std::uint32_t gm = ground_mask(n);
    for (std::uint32_t mask = 0; mask <= gm; ++mask) {
        const int c = std::popcount(mask);
        const bool has1 = (mask & 1u) != 0;
        if ((c == m && !has1) || (c == m + 1 && has1)) masks.push_back(mask);
    }
    return SetFamily::from_masks(n, std::move(masks));
}

}  // namespace chainlab
