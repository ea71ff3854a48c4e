#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "golomb/numtheory.hpp"

namespace golomb {

/// k residues of Z_v with pairwise distinct differences.  modulus == 0 is
/// the sentinel for a plain (non-modular) ruler, used by embed() and the
/// length-optimization searches.
struct Ruler {
    i64 modulus = 0;
    std::vector<i64> marks;

    bool is_modular() const { return modulus > 0; }
    i64 order() const { return static_cast<i64>(marks.size()); }
    i64 length() const { return marks.empty() ? 0 : marks.back() - marks.front(); }

    friend bool operator==(const Ruler&, const Ruler&) = default;
    friend auto operator<=>(const Ruler&, const Ruler&) = default;
};

inline bool well_formed(const Ruler& r) {
    if (r.order() < 3) return false;
    if (r.is_modular() && r.modulus < 3) return false;
    for (std::size_t i = 0; i < r.marks.size(); ++i) {
        if (r.marks[i] < 0) return false;
        if (r.is_modular() && r.marks[i] >= r.modulus) return false;
        if (i > 0 && r.marks[i] <= r.marks[i - 1]) return false;
    }
    return true;
}

inline void require_well_formed(const Ruler& r) {
    if (!well_formed(r)) throw std::invalid_argument("ruler is not well-formed");
}

inline Ruler make_ruler(i64 v, std::vector<i64> marks) {
    Ruler r{v, std::move(marks)};
    require_well_formed(r);
    return r;
}

inline Ruler make_plain_ruler(std::vector<i64> marks) { return make_ruler(0, std::move(marks)); }

/// A repeated difference d together with the two ordered pairs producing it.
struct RepeatWitness {
    i64 difference = 0;
    std::pair<i64, i64> first_pair;
    std::pair<i64, i64> second_pair;
};

struct VerifyReport {
    bool valid = false;
    std::optional<RepeatWitness> witness;
};

/// Valid iff all k(k-1) ordered differences mod v are distinct (and nonzero).
inline VerifyReport verify_mgr(const Ruler& r) {
    require_well_formed(r);
    if (!r.is_modular()) throw std::invalid_argument("verify_mgr: ruler has no modulus");
    const i64 v = r.modulus;
    std::vector<std::pair<i64, i64>> seen(static_cast<std::size_t>(v), {-1, -1});
    for (std::size_t i = 0; i < r.marks.size(); ++i) {
        for (std::size_t j = 0; j < r.marks.size(); ++j) {
            if (i == j) continue;
            i64 d = ((r.marks[j] - r.marks[i]) % v + v) % v;
            auto& slot = seen[static_cast<std::size_t>(d)];
            if (slot.first >= 0) {
                return {false, RepeatWitness{d, slot, {r.marks[j], r.marks[i]}}};
            }
            slot = {r.marks[j], r.marks[i]};
        }
    }
    return {true, std::nullopt};
}

/// True iff all pairwise differences of a plain ruler are distinct integers.
inline bool verify_golomb(const Ruler& r) {
    require_well_formed(r);
    std::vector<char> seen(static_cast<std::size_t>(r.length()) + 1, 0);
    for (std::size_t i = 0; i < r.marks.size(); ++i) {
        for (std::size_t j = i + 1; j < r.marks.size(); ++j) {
            i64 d = r.marks[j] - r.marks[i];
            if (seen[static_cast<std::size_t>(d)]) return false;
            seen[static_cast<std::size_t>(d)] = 1;
        }
    }
    return true;
}

/// Difference multiset of a modular ruler, its leave, and the parity split
/// of the leave.
struct DiffProfile {
    std::vector<int> multiplicity; // indexed by residue, size v
    std::vector<i64> leave;        // residues with multiplicity zero
    i64 even_leave = 0;            // |L_0|
    i64 odd_leave = 0;             // |L_1|
    i64 length = 0;
};

inline DiffProfile diff_profile(const Ruler& r) {
    require_well_formed(r);
    if (!r.is_modular()) throw std::invalid_argument("diff_profile: ruler has no modulus");
    const i64 v = r.modulus;
    DiffProfile p;
    p.multiplicity.assign(static_cast<std::size_t>(v), 0);
    for (std::size_t i = 0; i < r.marks.size(); ++i) {
        for (std::size_t j = 0; j < r.marks.size(); ++j) {
            if (i == j) continue;
            i64 d = ((r.marks[j] - r.marks[i]) % v + v) % v;
            ++p.multiplicity[static_cast<std::size_t>(d)];
        }
    }
    for (i64 d = 0; d < v; ++d) {
        if (p.multiplicity[static_cast<std::size_t>(d)] == 0) {
            p.leave.push_back(d);
            (d % 2 == 0 ? p.even_leave : p.odd_leave) += 1;
        }
    }
    p.length = r.length();
    return p;
}

/// Lexicographically least ruler among all translations of r and of its
/// reflection, each shifted to start at 0.  Idempotent.
inline Ruler canonicalize(const Ruler& r) {
    require_well_formed(r);
    const auto k = r.marks.size();
    if (!r.is_modular()) {
        std::vector<i64> a(k), b(k);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = r.marks[i] - r.marks.front();
            b[i] = r.marks.back() - r.marks[k - 1 - i];
        }
        return Ruler{0, std::min(a, b)};
    }
    const i64 v = r.modulus;
    std::vector<i64> best;
    std::vector<i64> cand(k);
    auto consider = [&](const std::vector<i64>& set, i64 shift) {
        for (std::size_t i = 0; i < k; ++i) cand[i] = ((set[i] - shift) % v + v) % v;
        std::sort(cand.begin(), cand.end());
        if (best.empty() || cand < best) best = cand;
    };
    std::vector<i64> reflected(k);
    for (std::size_t i = 0; i < k; ++i) reflected[i] = ((-r.marks[i]) % v + v) % v;
    for (i64 m : r.marks) consider(r.marks, m);
    for (i64 m : reflected) consider(reflected, m);
    return Ruler{v, std::move(best)};
}

/// Reads a ruler of length L as residues modulo v_new >= 2L+1; positive and
/// negative residues cannot collide, so the result is a valid MGR.
inline Ruler embed(const Ruler& r, i64 v_new) {
    require_well_formed(r);
    if (r.is_modular()) {
        if (!verify_mgr(r).valid) throw std::invalid_argument("embed: input is not a valid MGR");
    } else if (!verify_golomb(r)) {
        throw std::invalid_argument("embed: input is not a Golomb ruler");
    }
    const i64 len = r.length();
    if (v_new <= 2 * len) throw std::invalid_argument("embed: v_new must be at least 2L+1");
    std::vector<i64> marks(r.marks.size());
    for (std::size_t i = 0; i < marks.size(); ++i) marks[i] = r.marks[i] - r.marks.front();
    Ruler out{v_new, std::move(marks)};
    if (!verify_mgr(out).valid) throw std::logic_error("embed: result failed verification");
    return out;
}

} // namespace golomb
