#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace chainlab {

// All counting is exact: big integers for chain counts and permutation
// weights, big rationals for bound values.
using Bigint = boost::multiprecision::cpp_int;
using Ratio = boost::multiprecision::cpp_rational;

// Contract check that survives NDEBUG builds.
inline void require(bool cond, const char* msg) {
    if (!cond) throw std::logic_error(msg);
}

inline void check_arg(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline Bigint factorial(int m) {
    require(m >= 0, "factorial: negative argument");
    Bigint r = 1;
    for (int i = 2; i <= m; ++i) r *= i;
    return r;
}

// binom(n, k) with the usual convention that out-of-range k gives 0.
inline Bigint binom(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Bigint r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: r is binom(n-k+i, i) after this step
    }
    return r;
}

// Small-argument fast path; exact for every n <= 61.
inline std::uint64_t binom_u64(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

// A non-negative half-integer stored as 2r, so that level indices of the
// form n/2 +- r stay in exact integer arithmetic.
struct HalfInteger {
    int twice = 0;

    static HalfInteger from_twice(int t) {
        require(t >= 0, "HalfInteger: negative value");
        return HalfInteger{t};
    }

    bool is_integral() const { return twice % 2 == 0; }
    Ratio to_ratio() const { return Ratio(twice, 2); }

    std::string str() const {
        if (is_integral()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }

    friend bool operator==(HalfInteger a, HalfInteger b) { return a.twice == b.twice; }
    friend bool operator!=(HalfInteger a, HalfInteger b) { return a.twice != b.twice; }
    friend bool operator<(HalfInteger a, HalfInteger b) { return a.twice < b.twice; }
    friend bool operator<=(HalfInteger a, HalfInteger b) { return a.twice <= b.twice; }
};

inline std::string fraction_string(const Ratio& v) {
    const Bigint num = boost::multiprecision::numerator(v);
    const Bigint den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Decimal rendering with `frac_digits` places (round half away from zero),
// trailing zeros stripped.  Pure integer arithmetic, so the text is
// identical on every platform.
inline std::string decimal_string(const Ratio& v, int frac_digits = 6) {
    Bigint num = boost::multiprecision::numerator(v);
    const Bigint den = boost::multiprecision::denominator(v);
    const bool neg = num < 0;
    if (neg) num = -num;
    if (den == 1) return (neg ? "-" : "") + num.str();

    Bigint scale = 1;
    for (int i = 0; i < frac_digits; ++i) scale *= 10;
    Bigint t = num * scale;
    Bigint q = t / den;
    if (2 * (t % den) >= den) ++q;

    Bigint ip = q / scale;
    std::string frac = Bigint(q % scale).str();
    frac.insert(frac.begin(), frac_digits - static_cast<int>(frac.size()), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();

    std::string out = (neg ? "-" : "") + ip.str();
    if (!frac.empty()) out += "." + frac;
    return out;
}

}  // namespace chainlab
