#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chainlab/element_set.hpp"
#include "chainlab/numbers.hpp"

namespace chainlab {

// A deduplicated family of subsets of [n], stored in canonical order
// (ascending cardinality, then numeric bitmask).  Immutable after
// construction; all operations below are pure and return fresh values.
class SetFamily {
public:
    SetFamily() = default;
    explicit SetFamily(int n) : n_(n) { ground_mask(n); }

    static SetFamily from_masks(int n, std::vector<std::uint32_t> masks) {
        const std::uint32_t gm = ground_mask(n);
        for (std::uint32_t m : masks) {
            check_arg((m & ~gm) == 0, "set has elements outside the ground set");
        }
        SetFamily fam(n);
        fam.members_.reserve(masks.size());
        for (std::uint32_t m : masks) fam.members_.push_back(ElementSet{m});
        fam.canonicalize();
        return fam;
    }

    static SetFamily from_sets(int n, const std::vector<ElementSet>& sets) {
        std::vector<std::uint32_t> masks;
        masks.reserve(sets.size());
        for (ElementSet s : sets) masks.push_back(s.bits);
        return from_masks(n, std::move(masks));
    }

    int n() const { return n_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    const std::vector<ElementSet>& members() const { return members_; }
    ElementSet member(int i) const { return members_[static_cast<std::size_t>(i)]; }

    bool contains(ElementSet s) const {
        auto it = std::lower_bound(members_.begin(), members_.end(), s, canonical_less);
        return it != members_.end() && *it == s;
    }

    friend bool operator==(const SetFamily& a, const SetFamily& b) {
        return a.n_ == b.n_ && a.members_ == b.members_;
    }

private:
    void canonicalize() {
        std::sort(members_.begin(), members_.end(), canonical_less);
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    int n_ = 1;
    std::vector<ElementSet> members_;
};

// New family with `removed` taken out and `inserted` put in.  Every removed
// set must be present and every inserted set absent; sizes therefore change
// by inserted.size() - removed.size().
inline SetFamily replace_members(const SetFamily& fam,
                                 const std::vector<ElementSet>& removed,
                                 const std::vector<ElementSet>& inserted) {
    std::vector<std::uint32_t> masks;
    masks.reserve(fam.members().size() + inserted.size());
    for (ElementSet s : fam.members()) {
        bool drop = false;
        for (ElementSet r : removed) {
            if (r == s) {
                drop = true;
                break;
            }
        }
        if (!drop) masks.push_back(s.bits);
    }
    for (ElementSet r : removed) {
        require(fam.contains(r), "replace_members: removed set not present");
    }
    for (ElementSet i : inserted) {
        require(!fam.contains(i), "replace_members: inserted set already present");
        masks.push_back(i.bits);
    }
    return SetFamily::from_masks(fam.n(), std::move(masks));
}

struct LevelProfile {
    std::vector<long long> counts;  // counts[i] = number of members of size i

    long long total() const {
        long long t = 0;
        for (long long c : counts) t += c;
        return t;
    }
};

inline LevelProfile level_profile(const SetFamily& fam) {
    LevelProfile p;
    p.counts.assign(static_cast<std::size_t>(fam.n()) + 1, 0);
    for (ElementSet s : fam.members()) ++p.counts[static_cast<std::size_t>(s.cardinality())];
    return p;
}

// m(F) = max(|F|, n - |F|).
inline int m_of(ElementSet s, int n) {
    check_arg(s.valid_over(n), "m_of: set not valid over ground size");
    const int c = s.cardinality();
    return std::max(c, n - c);
}

// The ell-shadow: every set obtainable from a member by deleting ell
// elements.  Members smaller than ell contribute nothing; members of size
// exactly ell contribute the empty set.
inline SetFamily shadow(const SetFamily& fam, int ell) {
    check_arg(ell >= 1, "shadow: ell must be >= 1");
    std::vector<std::uint32_t> out;
    for (ElementSet s : fam.members()) {
        if (s.cardinality() < ell) continue;
        const std::vector<int> elems = elements_of(s);
        const int c = static_cast<int>(elems.size());
        // Walk all ell-element subsets of the member's positions and delete them.
        std::vector<int> idx(static_cast<std::size_t>(ell));
        for (int i = 0; i < ell; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::uint32_t mask = s.bits;
            for (int i : idx) mask &= ~(1u << (elems[static_cast<std::size_t>(i)] - 1));
            out.push_back(mask);
            int j = ell - 1;
            while (j >= 0 && idx[static_cast<std::size_t>(j)] == c - ell + j) --j;
            if (j < 0) break;
            ++idx[static_cast<std::size_t>(j)];
            for (int i = j + 1; i < ell; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return SetFamily::from_masks(fam.n(), std::move(out));
}

inline bool is_antichain(const SetFamily& fam) {
    const auto& m = fam.members();
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            // canonical order puts the smaller cardinality first
            if (m[i].proper_subset_of(m[j])) return false;
        }
    }
    return true;
}

inline SetFamily complement_family(const SetFamily& fam) {
    std::vector<std::uint32_t> masks;
    masks.reserve(fam.members().size());
    for (ElementSet s : fam.members()) masks.push_back(s.complement(fam.n()).bits);
    return SetFamily::from_masks(fam.n(), std::move(masks));
}

// ---------------------------------------------------------------------------
// Family text format.
//
//   n=<int>
//   1,2,3
//   {}
//   hex:1f
//
// One set per non-empty line; both the element form and the hex form are
// accepted on input.  Round-trips are bit-exact.

struct FamilyParseError : std::runtime_error {
    FamilyParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
    int line;
};

inline SetFamily read_family(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    while (std::getline(in, line)) {
        ++lineno;
        // strip surrounding whitespace
        const auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) {
            line.clear();
        } else {
            const auto b = line.find_last_not_of(" \t\r");
            line = line.substr(a, b - a + 1);
        }
        if (line.empty()) continue;
        if (line.rfind("n=", 0) != 0)
            throw FamilyParseError(lineno, "expected header 'n=<int>'");
        const std::string num = line.substr(2);
        if (num.empty() || num.size() > 4 ||
            num.find_first_not_of("0123456789") != std::string::npos)
            throw FamilyParseError(lineno, "invalid ground size '" + num + "'");
        n = std::stoi(num);
        if (n < 1 || n > kMaxGroundSize)
            throw FamilyParseError(lineno, "ground size must be between 1 and " +
                                               std::to_string(kMaxGroundSize));
        break;
    }
    if (n < 0) throw FamilyParseError(lineno == 0 ? 1 : lineno, "missing header 'n=<int>'");

    std::vector<std::uint32_t> masks;
    std::vector<int> seen_line;  // parallel to masks, for duplicate diagnostics
    while (std::getline(in, line)) {
        ++lineno;
        const auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        const auto b = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(a, b - a + 1);
        ElementSet s;
        std::string err;
        if (!parse_set_token(token, n, s, err)) throw FamilyParseError(lineno, err);
        for (std::size_t i = 0; i < masks.size(); ++i) {
            if (masks[i] == s.bits)
                throw FamilyParseError(
                    lineno, "duplicate set (first seen on line " +
                                std::to_string(seen_line[i]) + ")");
        }
        masks.push_back(s.bits);
        seen_line.push_back(lineno);
    }
    return SetFamily::from_masks(n, std::move(masks));
}

inline SetFamily parse_family(const std::string& text) {
    std::istringstream in(text);
    return read_family(in);
}

inline void write_family(std::ostream& out, const SetFamily& fam, bool hex = false) {
    out << "n=" << fam.n() << '\n';
    for (ElementSet s : fam.members()) {
        out << (hex ? set_to_hex_string(s) : set_to_string(s)) << '\n';
    }
}

inline std::string family_to_string(const SetFamily& fam, bool hex = false) {
    std::ostringstream out;
    write_family(out, fam, hex);
    return out.str();
}

}  // namespace chainlab
