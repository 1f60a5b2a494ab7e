#pragma once

#include <optional>
#include <string>
#include <utility>

#include "chainlab/numbers.hpp"
#include "chainlab/set_family.hpp"

namespace chainlab {

struct BoundParams {
    int n = 0;
    int k = 0;
    std::optional<long long> s, t, t1, t2;
    std::optional<HalfInteger> r;
    std::optional<int> a;
};

struct BoundReport {
    std::string name;
    Ratio value;
    BoundParams params;
    bool regime_ok = true;
};

// M_k: total size of the k middle (largest) levels.  M_0 = 0.
inline Bigint middle_sum(int n, int k) {
    check_arg(n >= 1 && n <= kMaxGroundSize, "middle_sum: n out of range");
    check_arg(k >= 0 && k <= n + 1, "middle_sum: k out of range");
    const int lo = (n - k + 2) / 2;  // ceil((n-k+1)/2)
    const int hi = (n + k) / 2;      // ceil((n+k-1)/2)
    Bigint total = 0;
    for (int i = lo; i <= hi; ++i) total += binom(n, i);
    return total;
}

inline Bigint sperner_bound(int n) { return binom(n, n / 2); }

namespace detail {

// The band scan: smallest half-integer r with 2r = n (mod 2) such that
// s <= sum of binom(n, i) over n/2 - r <= i <= n/2 + r.  The strict lower
// inequality of the defining sandwich holds automatically for the first r
// that satisfies the upper one.
inline HalfInteger r_scan_unchecked(int n, long long s) {
    for (int twice = n % 2;; twice += 2) {
        const int lo = (n - twice) / 2;
        const int hi = (n + twice) / 2;
        Bigint outer = 0;
        for (int i = lo; i <= hi; ++i) outer += binom(n, i);
        if (Bigint(s) <= outer) return HalfInteger::from_twice(twice);
        require(twice <= 2 * n, "r scan failed to terminate");
    }
}

}  // namespace detail

// The unique half-integer r with
//   sum_{n/2-r+1}^{n/2+r-1} binom(n,i) < s <= sum_{n/2-r}^{n/2+r} binom(n,i).
inline HalfInteger r_param(int n, long long s) {
    check_arg(n >= 1 && n <= kMaxGroundSize, "r_param: n out of range");
    if (Bigint(s) < sperner_bound(n) || Bigint(s) > (Bigint(1) << n)) {
        throw std::domain_error("r_param: size outside [binom(n, n/2), 2^n]");
    }
    return detail::r_scan_unchecked(n, s);
}

// Half-width of the k middle levels: the unique r in {(k-1)/2, k/2} making
// n/2 +- r integral.  Distinct from r_param's scan and never interchanged.
inline HalfInteger middle_band_r(int n, int k) {
    return HalfInteger::from_twice((n + k) % 2 == 1 ? k - 1 : k);
}

// t extra sets beyond an antichain force at least t * ceil((n+1)/2) 2-chains.
inline Bigint erdos_katona_lower(int n, long long t) {
    check_arg(n >= 1, "erdos_katona_lower: n must be positive");
    check_arg(t >= 0, "erdos_katona_lower: t must be non-negative");
    return Bigint(t) * ((n + 2) / 2);
}

// t sets beyond the k-1 middle levels force t * binom(floor((n+k)/2), k-1) * (k-1)!
// k-chains.
inline Bigint thm13_lower(int n, int k, long long t) {
    check_arg(2 <= k && k <= n, "thm13_lower: need 2 <= k <= n");
    check_arg(t >= 0, "thm13_lower: t must be non-negative");
    return Bigint(t) * binom((n + k) / 2, k - 1) * factorial(k - 1);
}

// The level-profile stability bound; may be negative.
//
//   c_k(F) >= (sum_{i in band} |F_i| / binom(n,i) - (k-1))
//                 * binom(n, n/2+r) * binom(n/2+r, k-1) * (k-1)!
//             + sum_{members outside the band} binom(m(F), k-1) * (k-1)!
//
// with r = middle_band_r(n, k), band = [n/2 - r, n/2 + r].
inline Ratio thm32_lower(const SetFamily& fam, int k) {
    const int n = fam.n();
    check_arg(2 <= k && k <= n, "thm32_lower: need 2 <= k <= n");
    const HalfInteger r = middle_band_r(n, k);
    const int lo = (n - r.twice) / 2;
    const int hi = (n + r.twice) / 2;

    const LevelProfile prof = level_profile(fam);
    Ratio band_sum = 0;
    for (int i = lo; i <= hi; ++i) {
        band_sum += Ratio(Bigint(prof.counts[static_cast<std::size_t>(i)]), binom(n, i));
    }
    const Bigint scale = binom(n, hi) * binom(hi, k - 1) * factorial(k - 1);
    Ratio value = (band_sum - (k - 1)) * Ratio(scale);

    const Bigint kfac = factorial(k - 1);
    for (ElementSet f : fam.members()) {
        const int c = f.cardinality();
        if (c < lo || c > hi) value += Ratio(binom(m_of(f, n), k - 1) * kfac);
    }
    return value;
}

// The two tight stability gains, with r = middle_band_r(n, k):
// moving ell sets from a boundary level n/2 +- r one level further out gains
//   ell * binom(n/2+r, k-2) * (k-1)!
// extra k-chains; moving ell sets from level n/2 + r - 1 up to n/2 + r gains
//   (2r-1)/(n/2+r) * ell * binom(n/2+r, k-1) * (k-1)!.
inline std::pair<Ratio, Ratio> stability_gains(int n, int k, long long ell) {
    check_arg(2 <= k && k <= n, "stability_gains: need 2 <= k <= n");
    check_arg(ell >= 0, "stability_gains: ell must be non-negative");
    const HalfInteger r = middle_band_r(n, k);
    const int hi = (n + r.twice) / 2;
    const Ratio first = Ratio(Bigint(ell) * binom(hi, k - 2) * factorial(k - 1));
    const Ratio second =
        Ratio(Bigint(r.twice - 1) * ell * binom(hi, k - 1) * factorial(k - 1), Bigint(hi));
    return {first, second};
}

inline int middle_a(int n, int k) { return (n + k + 1) / 2; }  // ceil((n+k)/2)

// Large-step chains forced by size M_k + t1 with t2 sets missing from the
// k-1 middle levels:
//   C_2(F) >= (t1 + ((k-1)/a) t2) * binom(a,k) * binom(k,2) * (k-1)!.
inline Ratio prop41_lower(int n, int k, long long t1, long long t2) {
    check_arg(2 <= k && k <= n, "prop41_lower: need 2 <= k <= n");
    check_arg(t2 >= 0, "prop41_lower: t2 must be non-negative");
    check_arg(t1 + t2 >= 0, "prop41_lower: t1 + t2 must be non-negative");
    const int a = middle_a(n, k);
    const Ratio mix = Ratio(t1) + Ratio(Bigint(k - 1) * t2, Bigint(a));
    return mix * Ratio(binom(a, k) * binom(k, 2) * factorial(k - 1));
}

// Total chains forced in the k+1-middle-levels regime:
//   C(F) >= binom(n, a-k) * binom(n-a+k, k-1) * (k-1)!
//           + (t1 + ((k-1)/a) t2) * (binom(a,k-1) + binom(a,k) binom(k,2)) * (k-1)!.
inline Ratio thm42_lower(int n, int k, long long t1, long long t2) {
    check_arg(2 <= k && k <= n, "thm42_lower: need 2 <= k <= n");
    check_arg(t2 >= 0, "thm42_lower: t2 must be non-negative");
    check_arg(t1 + t2 >= 0, "thm42_lower: t1 + t2 must be non-negative");
    const int a = middle_a(n, k);
    const Ratio first = Ratio(binom(n, a - k) * binom(n - a + k, k - 1) * factorial(k - 1));
    const Ratio mix = Ratio(t1) + Ratio(Bigint(k - 1) * t2, Bigint(a));
    const Ratio per_set =
        Ratio((binom(a, k - 1) + binom(a, k) * binom(k, 2)) * factorial(k - 1));
    return first + mix * per_set;
}

struct RegimeBound {
    Ratio value;
    bool regime_ok = true;  // false when evaluated outside the proven range
};

// Alias of thm42_lower with t2 = 0; proven for n >= 15 and k <= n - 6,
// evaluable (and flagged) outside that range.
inline RegimeBound thm14_lower(int n, int k, long long t) {
    return RegimeBound{thm42_lower(n, k, t, 0), n >= 15 && k <= n - 6};
}

// Minimum number of middle-level sets a single size-(n-1) member forces out:
//   ceil(binom(n-1, a-1) - a (1 + (a-k+1)(k-1)/2)), clamped at 0.
inline Bigint prop43_min_missing(int n, int k) {
    check_arg(2 <= k && k <= n, "prop43_min_missing: need 2 <= k <= n");
    const int a = middle_a(n, k);
    const Ratio raw = Ratio(binom(n - 1, a - 1)) -
                      Ratio(Bigint(a)) -
                      Ratio(Bigint(a) * (a - k + 1) * (k - 1), 2);
    if (raw <= 0) return 0;
    const Bigint num = boost::multiprecision::numerator(raw);
    const Bigint den = boost::multiprecision::denominator(raw);
    return (num + den - 1) / den;  // ceil for positive values
}

}  // namespace chainlab
