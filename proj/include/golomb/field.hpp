#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "golomb/numtheory.hpp"

namespace golomb {

/// Element of a FieldCtx, encoded as the coefficient vector read as a
/// base-p integer (coefficient of x^i is digit i).
struct FieldElement {
    i64 code = 0;
    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

namespace fdetail {

// polynomial helpers over Z_p; coefficient 0 is the constant term
inline std::vector<i64> poly_decode(i64 code, i64 p, int m) {
    std::vector<i64> c(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m && code > 0; ++i) { c[static_cast<std::size_t>(i)] = code % p; code /= p; }
    return c;
}

inline i64 poly_encode(const std::vector<i64>& c, i64 p) {
    i64 code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
    return code;
}

inline std::vector<i64> poly_mul_mod(const std::vector<i64>& a, const std::vector<i64>& b,
                                     const std::vector<i64>& modulus, i64 p) {
    const int m = static_cast<int>(modulus.size()) - 1;
    std::vector<i64> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    for (int d = static_cast<int>(prod.size()) - 1; d >= m; --d) {
        i64 lead = prod[static_cast<std::size_t>(d)];
        if (lead == 0) continue;
        prod[static_cast<std::size_t>(d)] = 0;
        for (int i = 0; i < m; ++i) {
            auto idx = static_cast<std::size_t>(d - m + i);
            prod[idx] = ((prod[idx] - lead * modulus[static_cast<std::size_t>(i)]) % p + p) % p;
        }
    }
    prod.resize(static_cast<std::size_t>(m), 0);
    return prod;
}

// division-free irreducibility for small inputs: f of degree m is reducible
// iff it has a monic divisor of degree 1..m/2
inline bool poly_divisible(const std::vector<i64>& f, const std::vector<i64>& g, i64 p) {
    std::vector<i64> rem = f;
    const int dg = static_cast<int>(g.size()) - 1;
    for (int d = static_cast<int>(rem.size()) - 1; d >= dg; --d) {
        i64 lead = rem[static_cast<std::size_t>(d)];
        if (lead == 0) continue;
        for (int i = 0; i <= dg; ++i) {
            auto idx = static_cast<std::size_t>(d - dg + i);
            rem[idx] = ((rem[idx] - lead * g[static_cast<std::size_t>(i)]) % p + p) % p;
        }
    }
    for (int d = 0; d < dg; ++d) {
        if (rem[static_cast<std::size_t>(d)] != 0) return false;
    }
    return true;
}

inline bool poly_irreducible(const std::vector<i64>& f, i64 p) {
    const int m = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= m; ++d) {
        i64 count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (i64 code = 0; code < count; ++code) {
            std::vector<i64> g = poly_decode(code, p, d + 1);
            g[static_cast<std::size_t>(d)] = 1; // monic
            if (poly_divisible(f, g, p)) return false;
        }
    }
    return true;
}

} // namespace fdetail

/// GF(p^m) with a deterministic modulus and primitive element and full
/// log/antilog tables.  Immutable after creation.
struct FieldCtx {
    i64 p = 0;
    int m = 0;
    i64 q = 0;                  // p^m
    std::vector<i64> modulus;   // monic, size m+1
    FieldElement primitive;
    std::vector<i64> log_table;     // size q, log_table[0] == -1
    std::vector<i64> antilog_table; // size q-1, antilog_table[i] == g^i

    FieldElement element(i64 code) const {
        if (code < 0 || code >= q) throw std::invalid_argument("element code out of range");
        return FieldElement{code};
    }

    std::vector<i64> coeffs(FieldElement x) const { return fdetail::poly_decode(x.code, p, m); }

    FieldElement from_coeffs(const std::vector<i64>& c) const {
        for (i64 ci : c) {
            if (ci < 0 || ci >= p) throw std::invalid_argument("coefficient out of range");
        }
        return FieldElement{fdetail::poly_encode(c, p)};
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        i64 ca = a.code, cb = b.code, out = 0, scale = 1;
        for (int i = 0; i < m; ++i) {
            out += ((ca + cb) % p) * scale;
            ca /= p; cb /= p; scale *= p;
        }
        return FieldElement{out};
    }

    FieldElement neg(FieldElement a) const {
        i64 ca = a.code, out = 0, scale = 1;
        for (int i = 0; i < m; ++i) {
            out += ((p - ca % p) % p) * scale;
            ca /= p; scale *= p;
        }
        return FieldElement{out};
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    /// Table-based product.
    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.code == 0 || b.code == 0) return FieldElement{0};
        i64 e = log_table[static_cast<std::size_t>(a.code)] +
                log_table[static_cast<std::size_t>(b.code)];
        if (e >= q - 1) e -= q - 1;
        return FieldElement{antilog_table[static_cast<std::size_t>(e)]};
    }

    /// Polynomial-arithmetic product, independent of the tables.
    FieldElement mul_poly(FieldElement a, FieldElement b) const {
        auto c = fdetail::poly_mul_mod(coeffs(a), coeffs(b), modulus, p);
        return FieldElement{fdetail::poly_encode(c, p)};
    }

    FieldElement pow(FieldElement a, i64 e) const {
        if (a.code == 0) {
            if (e <= 0) throw std::invalid_argument("pow: 0 to nonpositive power");
            return FieldElement{0};
        }
        i64 ord = q - 1;
        i64 le = ((e % ord) + ord) % ord;
        i64 idx = static_cast<i64>(
            (static_cast<__int128>(log_table[static_cast<std::size_t>(a.code)]) * le) % ord);
        return FieldElement{antilog_table[static_cast<std::size_t>(idx)]};
    }

    FieldElement inv(FieldElement a) const {
        if (a.code == 0) throw std::invalid_argument("inv: zero has no inverse");
        i64 e = (q - 1 - log_table[static_cast<std::size_t>(a.code)]) % (q - 1);
        return FieldElement{antilog_table[static_cast<std::size_t>(e)]};
    }

    /// Discrete log base the primitive element; rejects zero.
    i64 dlog(FieldElement a) const {
        if (a.code == 0) throw std::invalid_argument("dlog: zero argument");
        return log_table[static_cast<std::size_t>(a.code)];
    }

    FieldElement zero() const { return FieldElement{0}; }
    FieldElement one() const { return FieldElement{1}; }
};

inline constexpr i64 kFieldSizeCap = i64(1) << 20;

/// Deterministic GF(p^m): lexicographically least monic irreducible modulus,
/// least primitive element in base-p code order.
inline FieldCtx field_create(i64 p, int m) {
    if (!is_prime(p)) throw std::invalid_argument("field_create: p is not prime");
    if (m < 1) throw std::invalid_argument("field_create: m must be >= 1");
    i64 q = 1;
    for (int i = 0; i < m; ++i) {
        q *= p;
        if (q > kFieldSizeCap) throw std::invalid_argument("field_create: p^m exceeds size cap");
    }

    FieldCtx f;
    f.p = p;
    f.m = m;
    f.q = q;

    for (i64 code = 0;; ++code) {
        if (code >= q) throw std::logic_error("field_create: no irreducible polynomial found");
        std::vector<i64> cand = fdetail::poly_decode(code, p, m + 1);
        cand[static_cast<std::size_t>(m)] = 1;
        if (fdetail::poly_irreducible(cand, p)) { f.modulus = cand; break; }
    }

    auto mul_raw = [&](i64 a, i64 b) {
        auto c = fdetail::poly_mul_mod(fdetail::poly_decode(a, p, m), fdetail::poly_decode(b, p, m),
                                       f.modulus, p);
        return fdetail::poly_encode(c, p);
    };
    auto pow_raw = [&](i64 a, i64 e) {
        i64 r = 1;
        while (e > 0) {
            if (e & 1) r = mul_raw(r, a);
            a = mul_raw(a, a);
            e >>= 1;
        }
        return r;
    };

    // least element whose order is q-1: it must not die on any maximal
    // proper divisor of the group order
    Factorization ordfac = factorize(q - 1);
    i64 g = 0;
    for (i64 cand = 1; cand < q; ++cand) {
        bool ok = true;
        for (const auto& [r, e] : ordfac) {
            (void)e;
            if (pow_raw(cand, (q - 1) / r) == 1) { ok = false; break; }
        }
        if (ok) { g = cand; break; }
    }
    if (g == 0) throw std::logic_error("field_create: no primitive element found");
    f.primitive = FieldElement{g};

    f.log_table.assign(static_cast<std::size_t>(q), -1);
    f.antilog_table.assign(static_cast<std::size_t>(q - 1), 0);
    i64 cur = 1;
    for (i64 i = 0; i < q - 1; ++i) {
        f.antilog_table[static_cast<std::size_t>(i)] = cur;
        if (f.log_table[static_cast<std::size_t>(cur)] != -1)
            throw std::logic_error("field_create: primitive element has short order");
        f.log_table[static_cast<std::size_t>(cur)] = i;
        cur = mul_raw(cur, g);
    }
    if (cur != 1) throw std::logic_error("field_create: antilog table did not close");
    return f;
}

/// Degree-d extension of a base FieldCtx (d = 2 or 3), with coefficients
/// stored as base-field codes.  Used by the algebraic ruler constructions;
/// only the handful of operations they need.
struct ExtField {
    const FieldCtx* base = nullptr;
    int deg = 0;
    std::array<i64, 4> modulus{}; // monic, modulus[deg] == 1, base codes
    std::array<i64, 3> theta{};   // designated primitive element

    using Elem = std::array<i64, 3>;

    i64 q() const { return base->q; }
    i64 order() const {
        i64 n = 1;
        for (int i = 0; i < deg; ++i) n *= base->q;
        return n;
    }

    Elem one() const { return {1, 0, 0}; }

    Elem mul(const Elem& a, const Elem& b) const {
        const FieldCtx& F = *base;
        std::array<i64, 5> prod{};
        for (int i = 0; i < deg; ++i) {
            if (a[static_cast<std::size_t>(i)] == 0) continue;
            FieldElement ai{a[static_cast<std::size_t>(i)]};
            for (int j = 0; j < deg; ++j) {
                if (b[static_cast<std::size_t>(j)] == 0) continue;
                auto idx = static_cast<std::size_t>(i + j);
                prod[idx] = F.add(FieldElement{prod[idx]},
                                  F.mul(ai, FieldElement{b[static_cast<std::size_t>(j)]}))
                                .code;
            }
        }
        for (int d = 2 * deg - 2; d >= deg; --d) {
            i64 lead = prod[static_cast<std::size_t>(d)];
            if (lead == 0) continue;
            prod[static_cast<std::size_t>(d)] = 0;
            for (int i = 0; i < deg; ++i) {
                auto idx = static_cast<std::size_t>(d - deg + i);
                i64 sub = F.mul(FieldElement{lead}, FieldElement{modulus[static_cast<std::size_t>(i)]}).code;
                prod[idx] = F.sub(FieldElement{prod[idx]}, FieldElement{sub}).code;
            }
        }
        return {prod[0], prod[1], prod[2]};
    }

    Elem pow(Elem a, i64 e) const {
        Elem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

/// Deterministic degree-d extension: least irreducible monic polynomial in
/// base-code order, least primitive element in lexicographic element order.
inline ExtField ext_field_create(const FieldCtx& base, int deg) {
    if (deg != 2 && deg != 3) throw std::invalid_argument("ext_field_create: degree must be 2 or 3");
    ExtField E;
    E.base = &base;
    E.deg = deg;

    const i64 q = base.q;
    // a quadratic or cubic is irreducible iff it has no base-field root
    auto has_root = [&](const std::array<i64, 4>& poly) {
        for (i64 r = 0; r < q; ++r) {
            FieldElement x{r}, acc{poly[static_cast<std::size_t>(deg)]};
            for (int i = deg - 1; i >= 0; --i) {
                acc = base.add(base.mul(acc, x), FieldElement{poly[static_cast<std::size_t>(i)]});
            }
            if (acc.code == 0) return true;
        }
        return false;
    };

    i64 count = 1;
    for (int i = 0; i < deg; ++i) count *= q;
    bool found = false;
    for (i64 code = 0; code < count && !found; ++code) {
        std::array<i64, 4> cand{};
        i64 c = code;
        for (int i = 0; i < deg; ++i) { cand[static_cast<std::size_t>(i)] = c % q; c /= q; }
        cand[static_cast<std::size_t>(deg)] = 1;
        if (!has_root(cand)) {
            E.modulus = cand;
            found = true;
        }
    }
    if (!found) throw std::logic_error("ext_field_create: no irreducible polynomial");

    const i64 Q = E.order();
    Factorization ordfac = factorize(Q - 1);
    for (i64 code = 1; code < Q; ++code) {
        ExtField::Elem cand{};
        i64 c = code;
        for (int i = 0; i < deg; ++i) { cand[static_cast<std::size_t>(i)] = c % q; c /= q; }
        bool ok = true;
        for (const auto& [r, e] : ordfac) {
            (void)e;
            if (E.pow(cand, (Q - 1) / r) == E.one()) { ok = false; break; }
        }
        if (ok) { E.theta = cand; return E; }
    }
    throw std::logic_error("ext_field_create: no primitive element");
}

} // namespace golomb
