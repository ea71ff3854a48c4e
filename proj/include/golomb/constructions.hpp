#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "golomb/field.hpp"
#include "golomb/numtheory.hpp"
#include "golomb/ruler.hpp"

namespace golomb {

/// (p, e) with q = p^e and p prime, or nullopt if q is not a prime power.
inline std::optional<std::pair<i64, int>> prime_power_split(i64 q) {
    if (q < 2) return std::nullopt;
    Factorization f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return std::make_pair(f[0].prime, f[0].exponent);
}

/// (q^2+q+1, q+1)-MGR realized as the powers of a primitive element of
/// GF(q^3) that land in the plane spanned by {1, theta}; every nonzero
/// residue occurs exactly once as a difference.  Canonical form returned.
inline Ruler singer(i64 q) {
    auto pe = prime_power_split(q);
    if (!pe) throw std::invalid_argument("singer: q is not a prime power");
    if (q > 256) throw std::invalid_argument("singer: q exceeds scope cap");
    FieldCtx base = field_create(pe->first, pe->second);
    ExtField ext = ext_field_create(base, 3);

    const i64 n = q * q + q + 1;
    const i64 group = ext.order() - 1;
    const auto& th = ext.theta;
    const FieldElement g1{th[1]}, g2{th[2]};

    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    ExtField::Elem cur = ext.one();
    for (i64 a = 0; a < group; ++a) {
        // cur lies in span{1, theta} iff (cur_1, cur_2) || (theta_1, theta_2)
        FieldElement e1{cur[1]}, e2{cur[2]};
        if (base.mul(e1, g2) == base.mul(e2, g1)) hit[static_cast<std::size_t>(a % n)] = 1;
        cur = ext.mul(cur, th);
    }
    std::vector<i64> marks;
    for (i64 a = 0; a < n; ++a) {
        if (hit[static_cast<std::size_t>(a)]) marks.push_back(a);
    }
    if (static_cast<i64>(marks.size()) != q + 1)
        throw std::logic_error("singer: unexpected difference-set size");
    Ruler r = canonicalize(make_ruler(n, std::move(marks)));
    if (!verify_mgr(r).valid) throw std::logic_error("singer: result failed verification");
    return r;
}

/// (q^2-1, q)-MGR: the exponents a with theta^a - theta in GF(q), theta
/// primitive in GF(q^2).
inline Ruler bose(i64 q) {
    auto pe = prime_power_split(q);
    if (!pe) throw std::invalid_argument("bose: q is not a prime power");
    if (q > 1024) throw std::invalid_argument("bose: q exceeds scope cap");
    FieldCtx base = field_create(pe->first, pe->second);
    ExtField ext = ext_field_create(base, 2);

    const i64 v = q * q - 1;
    const i64 g1 = ext.theta[1];
    std::vector<i64> marks;
    ExtField::Elem cur = ext.one();
    for (i64 a = 0; a < v; ++a) {
        if (cur[1] == g1) marks.push_back(a);
        cur = ext.mul(cur, ext.theta);
    }
    if (static_cast<i64>(marks.size()) != q)
        throw std::logic_error("bose: unexpected set size");
    Ruler r = canonicalize(make_ruler(v, std::move(marks)));
    if (!verify_mgr(r).valid) throw std::logic_error("bose: result failed verification");
    return r;
}

/// (p^2-p, p-1)-MGR: t = i (mod p-1), t = g^i (mod p) for 1 <= i <= p-1,
/// g a primitive root mod p.  Needs p >= 5 so the order is at least 3.
inline Ruler ruzsa(i64 p) {
    if (!is_prime(p)) throw std::invalid_argument("ruzsa: p is not prime");
    if (p < 5) throw std::invalid_argument("ruzsa: p must be at least 5");
    FieldCtx fp = field_create(p, 1);
    const i64 g = fp.primitive.code;
    const i64 v = p * (p - 1);
    std::vector<i64> marks;
    i64 gi = 1;
    for (i64 i = 1; i <= p - 1; ++i) {
        gi = (gi * g) % p;
        marks.push_back(crt({{i, p - 1}, {gi, p}}));
    }
    std::sort(marks.begin(), marks.end());
    Ruler r = canonicalize(make_ruler(v, std::move(marks)));
    if (!verify_mgr(r).valid) throw std::logic_error("ruzsa: result failed verification");
    return r;
}

/// Removes the delta largest residues; a subset of a Sidon set is Sidon.
inline Ruler delete_points(const Ruler& r, i64 delta) {
    require_well_formed(r);
    if (delta < 0 || delta >= r.order() - 2)
        throw std::invalid_argument("delete_points: delta must satisfy 0 <= delta < k-2");
    Ruler out = r;
    out.marks.resize(out.marks.size() - static_cast<std::size_t>(delta));
    return out;
}

namespace cdetail {

inline Ruler table_ruler(i64 k) {
    switch (k) {
        case 3: return make_ruler(7, {0, 1, 3});
        case 4: return make_ruler(13, {0, 1, 4, 6});
        case 5: return make_ruler(21, {0, 2, 7, 8, 11});
        case 6: return make_ruler(31, {0, 1, 4, 10, 12, 17});
        case 7: return make_ruler(48, {0, 5, 7, 18, 19, 22, 28});
        case 8: return make_ruler(57, {0, 4, 5, 17, 19, 25, 28, 35});
        case 9: return make_ruler(73, {0, 2, 10, 24, 25, 29, 36, 42, 45});
        case 10: return make_ruler(91, {0, 1, 6, 10, 23, 26, 34, 41, 53, 55});
        case 11: return make_ruler(120, {0, 1, 4, 9, 23, 30, 41, 43, 58, 68, 74});
        default: throw std::logic_error("table_ruler: order out of range");
    }
}

inline i64 mid_range_prime(i64 k) {
    if (k == 12) return 11;
    if (k <= 14) return 13;
    if (k <= 17) return 16;
    if (k == 18) return 17;
    if (k <= 20) return 19;
    return 23;
}

} // namespace cdetail

/// A (v,k)-MGR with v <= floor(3k^2/2): stored small rulers for k <= 11,
/// Singer sets with point deletion beyond that.
inline Ruler exist_small(i64 k) {
    if (k < 3) throw std::invalid_argument("exist_small: k must be >= 3");
    Ruler r;
    if (k <= 11) {
        r = cdetail::table_ruler(k);
    } else {
        i64 p = (k <= 24) ? cdetail::mid_range_prime(k) : next_prime(k - 1);
        r = delete_points(singer(p), p + 1 - k);
    }
    if (r.modulus > 3 * k * k / 2) throw std::logic_error("exist_small: bound violated");
    return r;
}

/// A (v,k)-MGR for any v >= 3k^2 - 1, by re-reading a small ruler modulo v.
inline Ruler exist_any(i64 k, i64 v) {
    if (k < 3) throw std::invalid_argument("exist_any: k must be >= 3");
    if (v < 3 * k * k - 1) throw std::invalid_argument("exist_any: v below 3k^2 - 1");
    return embed(exist_small(k), v);
}

} // namespace golomb
