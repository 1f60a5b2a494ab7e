#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "chainlab/numbers.hpp"

namespace chainlab {

// Ground sets are capped so that a subset fits a single machine word and
// every level size fits 64 bits.
constexpr int kMaxGroundSize = 24;

inline std::uint32_t ground_mask(int n) {
    require(n >= 1 && n <= kMaxGroundSize, "ground size out of range");
    return (1u << n) - 1u;
}

// A subset of [n] = {1, ..., n}: bit i-1 set <=> element i present.
struct ElementSet {
    std::uint32_t bits = 0;

    int cardinality() const { return std::popcount(bits); }
    bool contains(int element) const { return (bits >> (element - 1)) & 1u; }
    bool subset_of(ElementSet o) const { return (bits & ~o.bits) == 0; }
    bool proper_subset_of(ElementSet o) const { return subset_of(o) && bits != o.bits; }
    bool comparable_with(ElementSet o) const { return subset_of(o) || o.subset_of(*this); }
    ElementSet complement(int n) const { return ElementSet{~bits & ground_mask(n)}; }
    bool valid_over(int n) const { return (bits & ~ground_mask(n)) == 0; }

    friend bool operator==(ElementSet a, ElementSet b) { return a.bits == b.bits; }
    friend bool operator!=(ElementSet a, ElementSet b) { return a.bits != b.bits; }
};

// Canonical order used everywhere: cardinality first, then numeric bitmask.
// Within one level it coincides with colexicographic order on sets.
inline bool canonical_less(ElementSet a, ElementSet b) {
    const int ca = a.cardinality(), cb = b.cardinality();
    if (ca != cb) return ca < cb;
    return a.bits < b.bits;
}

inline std::vector<int> elements_of(ElementSet s) {
    std::vector<int> out;
    for (std::uint32_t b = s.bits; b != 0; b &= b - 1) {
        out.push_back(std::countr_zero(b) + 1);
    }
    return out;
}

// Text form: "{}" for the empty set, otherwise ascending comma-separated
// 1-based elements ("1,2,4").
inline std::string set_to_string(ElementSet s) {
    if (s.bits == 0) return "{}";
    std::string out;
    for (int e : elements_of(s)) {
        if (!out.empty()) out += ',';
        out += std::to_string(e);
    }
    return out;
}

// Parses either the element form above or "hex:<lowercase hex>".  Returns
// false with a diagnostic instead of throwing so that file readers can
// attach line numbers.
inline bool parse_set_token(const std::string& token, int n, ElementSet& out,
                            std::string& error) {
    out = ElementSet{0};
    if (token == "{}") return true;
    if (token.rfind("hex:", 0) == 0) {
        const std::string hex = token.substr(4);
        if (hex.empty()) {
            error = "empty hex literal";
            return false;
        }
        std::uint32_t bits = 0;
        for (char c : hex) {
            int digit;
            if (c >= '0' && c <= '9') digit = c - '0';
            else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
            else {
                error = std::string("invalid hex digit '") + c + "'";
                return false;
            }
            if (bits > (0xffffffffu >> 4)) {
                error = "hex literal out of range";
                return false;
            }
            bits = (bits << 4) | static_cast<std::uint32_t>(digit);
        }
        if ((bits & ~ground_mask(n)) != 0) {
            error = "bitmask has elements outside the ground set";
            return false;
        }
        out.bits = bits;
        return true;
    }

    int prev = 0;
    std::size_t pos = 0;
    while (pos < token.size()) {
        std::size_t next = token.find(',', pos);
        const std::string part =
            token.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (part.empty() || part.size() > 4 ||
            part.find_first_not_of("0123456789") != std::string::npos) {
            error = "invalid element '" + part + "'";
            return false;
        }
        const long v = std::stol(part);
        if (v < 1 || v > n) {
            error = "element " + part + " outside 1.." + std::to_string(n);
            return false;
        }
        if (v <= prev) {
            error = "elements must be strictly ascending";
            return false;
        }
        prev = static_cast<int>(v);
        out.bits |= 1u << (v - 1);
        if (next == std::string::npos) break;
        pos = next + 1;
        if (pos == token.size()) {
            error = "trailing comma";
            return false;
        }
    }
    if (token.empty()) {
        error = "empty set token";
        return false;
    }
    return true;
}

inline std::string set_to_hex_string(ElementSet s) {
    if (s.bits == 0) return "hex:0";
    std::string digits;
    for (std::uint32_t b = s.bits; b != 0; b >>= 4) {
        digits += "0123456789abcdef"[b & 0xfu];
    }
    return "hex:" + std::string(digits.rbegin(), digits.rend());
}

}  // namespace chainlab
