#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace golomb {

using i64 = std::int64_t;
using u64 = std::uint64_t;

struct PrimePower {
    i64 prime;
    int exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization, primes strictly increasing, exponents >= 1.
using Factorization = std::vector<PrimePower>;

/// Tuple of nonnegative integers whose squares sum to `target`.
struct SquaresWitness {
    std::vector<i64> parts;
    i64 target = 0;
};

enum class Parity { Even, Odd };

inline i64 isqrt(i64 n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    if (n == 0) return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

/// Trial division; scope keeps arguments far below the 2^63-1 cap.
inline Factorization factorize(i64 n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization out;
    auto strip = [&](i64 p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e > 0) out.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (i64 p = 5; p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (i64 p = 5; p * p <= n; p += 6) {
        if (n % p == 0 || n % (p + 2) == 0) return false;
    }
    return true;
}

/// Least prime >= n.
inline i64 next_prime(i64 n) {
    if (n <= 2) return 2;
    for (i64 c = n;; ++c) {
        if (is_prime(c)) return c;
    }
}

inline i64 gcd_i64(i64 a, i64 b) {
    while (b != 0) { i64 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

inline i64 mod_inverse(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
    while (a1 != 0) {
        i64 q = g / a1;
        i64 t = g - q * a1; g = a1; a1 = t;
        t = x - q * x1; x = x1; x1 = t;
    }
    if (g != 1) throw std::invalid_argument("mod_inverse: not invertible");
    return ((x % m) + m) % m;
}

/// Least nonnegative solution of a system of congruences with pairwise
/// coprime moduli.  Rejects non-coprime moduli.
inline i64 crt(const std::vector<std::pair<i64, i64>>& congruences) {
    if (congruences.empty()) throw std::invalid_argument("crt: empty system");
    i64 x = 0, mod = 1;
    for (auto [r, m] : congruences) {
        if (m < 1) throw std::invalid_argument("crt: modulus must be >= 1");
        if (gcd_i64(mod, m) != 1)
            throw std::invalid_argument("crt: moduli are not pairwise coprime");
        if (static_cast<__int128>(mod) * m > static_cast<__int128>(INT64_MAX))
            throw std::overflow_error("crt: combined modulus overflows");
        i64 rr = ((r % m) + m) % m;
        i64 t = (__int128(rr - x % m + m) * mod_inverse(mod % m, m)) % m;
        x = x + mod * t;
        mod = mod * m;
        x %= mod;
        if (x < 0) x += mod;
    }
    return x;
}

inline u64 pow_mod(u64 base, u64 exp, u64 mod) {
    if (mod == 1) return 0;
    u64 r = 1;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) r = static_cast<u64>((static_cast<unsigned __int128>(r) * base) % mod);
        base = static_cast<u64>((static_cast<unsigned __int128>(base) * base) % mod);
        exp >>= 1;
    }
    return r;
}

/// Legendre symbol (a/p) for odd prime p: +1, -1, or 0.
inline int legendre_symbol(i64 a, i64 p) {
    a = ((a % p) + p) % p;
    if (a == 0) return 0;
    u64 e = pow_mod(static_cast<u64>(a), static_cast<u64>((p - 1) / 2), static_cast<u64>(p));
    return e == 1 ? 1 : -1;
}

/// n = a^2 + b^2 iff no prime p = 3 (mod 4) divides n to an odd power.
inline bool is_sum_two_squares(i64 n) {
    if (n < 0) throw std::invalid_argument("is_sum_two_squares: n must be >= 0");
    if (n == 0) return true;
    for (const auto& [p, e] : factorize(n)) {
        if (p % 4 == 3 && e % 2 == 1) return false;
    }
    return true;
}

inline std::optional<SquaresWitness> two_squares_witness(i64 n) {
    if (n < 0) throw std::invalid_argument("two_squares_witness: n must be >= 0");
    for (i64 a = 0; 2 * a * a <= n; ++a) {
        i64 rest = n - a * a;
        i64 b = isqrt(rest);
        if (b * b == rest) return SquaresWitness{{a, b}, n};
    }
    return std::nullopt;
}

/// n = a^2 + b^2 + c^2 iff n is not of the form 4^a (8b + 7).
inline bool is_sum_three_squares(i64 n) {
    if (n < 0) throw std::invalid_argument("is_sum_three_squares: n must be >= 0");
    while (n % 4 == 0 && n > 0) n /= 4;
    return n % 8 != 7;
}

namespace detail {

inline bool squares_dfs(i64 target, int slots, i64 max_part,
                        std::optional<Parity> parity, std::vector<i64>& parts) {
    if (slots == 0) return target == 0;
    i64 hi = std::min(max_part, isqrt(target));
    if (parity) {
        int want = (*parity == Parity::Odd) ? 1 : 0;
        if ((hi & 1) != want) --hi;
    }
    i64 step = parity ? 2 : 1;
    for (i64 part = hi; part >= 0; part -= step) {
        // parts are nonincreasing, so everything left fits under part^2 each
        if (part * part * slots < target) break;
        parts.push_back(part);
        if (squares_dfs(target - part * part, slots - 1, part, parity, parts)) return true;
        parts.pop_back();
        if (part == 0) break;
    }
    return false;
}

} // namespace detail

/// n nonnegative parts, each <= bound and of the given parity when stated,
/// with squares summing to target.
inline std::optional<SquaresWitness> sum_n_squares_bounded(
    i64 target, int n, i64 bound, std::optional<Parity> parity = std::nullopt) {
    if (target < 0 || n < 1 || bound < 0)
        throw std::invalid_argument("sum_n_squares_bounded: bad arguments");
    std::vector<i64> parts;
    parts.reserve(static_cast<std::size_t>(n));
    if (!detail::squares_dfs(target, n, bound, parity, parts)) return std::nullopt;
    return SquaresWitness{std::move(parts), target};
}

enum class ConsecMethod { Auto, Scan, Crt };

/// Smallest s with s+1, ..., s+t all not sums of two squares.
inline i64 consecutive_non_two_squares_scan(int t) {
    if (t < 1) throw std::invalid_argument("consecutive_non_two_squares: t must be >= 1");
    int streak = 0;
    for (i64 m = 1;; ++m) {
        streak = is_sum_two_squares(m) ? 0 : streak + 1;
        if (streak == t) return m - t;
    }
}

/// s from the congruence system x + i = p_i (mod p_i^2) over the t smallest
/// primes p_i = 3 (mod 4); each s+i is divisible by p_i exactly once.
inline i64 consecutive_non_two_squares_crt(int t) {
    if (t < 1) throw std::invalid_argument("consecutive_non_two_squares: t must be >= 1");
    if (t > 7) throw std::invalid_argument("consecutive_non_two_squares: crt method overflows for t > 7");
    std::vector<std::pair<i64, i64>> sys;
    i64 p = 3;
    for (int i = 1; i <= t; ++i) {
        while (p % 4 != 3 || !is_prime(p)) ++p;
        sys.emplace_back(p - i, p * p);
        ++p;
    }
    i64 s = crt(sys);
    for (int i = 1; i <= t; ++i) {
        if (is_sum_two_squares(s + i))
            throw std::logic_error("consecutive_non_two_squares: construction check failed");
    }
    return s;
}

inline i64 consecutive_non_two_squares(int t, ConsecMethod method = ConsecMethod::Auto) {
    switch (method) {
        case ConsecMethod::Scan: return consecutive_non_two_squares_scan(t);
        case ConsecMethod::Crt: return consecutive_non_two_squares_crt(t);
        case ConsecMethod::Auto:
        default:
            return t <= 4 ? consecutive_non_two_squares_scan(t)
                          : consecutive_non_two_squares_crt(t);
    }
}

/// True iff n and n+1 are both not sums of three squares, i.e.
/// n + 1 = 4^a (8b + 7) with a >= 2.
inline bool consecutive_non_three_squares(i64 n) {
    if (n < 0) throw std::invalid_argument("consecutive_non_three_squares: n must be >= 0");
    i64 m = n + 1;
    int a = 0;
    while (m % 4 == 0) { m /= 4; ++a; }
    bool closed_form = (a >= 2 && m % 8 == 7);
    // the closed form is exactly the conjunction of the two predicates
    if (closed_form != (!is_sum_three_squares(n) && !is_sum_three_squares(n + 1)))
        throw std::logic_error("consecutive_non_three_squares: cross-check failed");
    return closed_form;
}

namespace detail {

struct SquarefreeSplit {
    i64 squarefree; // keeps the sign of the input
    i64 factor;     // squarefree * factor^2 == input
};

inline SquarefreeSplit squarefree_split(i64 n) {
    i64 sign = n < 0 ? -1 : 1;
    i64 m = n < 0 ? -n : n;
    i64 sf = 1, f = 1;
    for (const auto& [p, e] : factorize(m)) {
        if (e % 2 == 1) sf *= p;
        for (int i = 0; i < e / 2; ++i) f *= p;
    }
    return {sign * sf, f};
}

} // namespace detail

/// Nontrivial integer solution of a x^2 + b y^2 = z^2, or nullopt.
///
/// a and b are reduced to squarefree form, quadratic-residue obstructions
/// mod odd primes dividing them are checked, and the remaining box
/// |x| <= 2 sqrt|2ab|, |y| <= 2 sqrt(a) (after reduction) is searched
/// exhaustively, so "nullopt" is a proof of unsolvability at these sizes.
inline std::optional<std::array<i64, 3>> ternary_form_solvable(i64 a, i64 b) {
    if (a < 1) throw std::invalid_argument("ternary_form_solvable: a must be >= 1");
    if (b == 0) throw std::invalid_argument("ternary_form_solvable: b must be nonzero");
    auto [sa, fa] = detail::squarefree_split(a);
    auto [sb, fb] = detail::squarefree_split(b);

    // local obstruction: for odd p | sa with p not dividing sb, a primitive
    // solution forces sb to be a quadratic residue mod p (and symmetrically)
    for (const auto& [p, e] : factorize(sa)) {
        (void)e;
        if (p == 2 || sb % p == 0) continue;
        if (legendre_symbol(sb, p) != 1) return std::nullopt;
    }
    for (const auto& [p, e] : factorize(sb < 0 ? -sb : sb)) {
        (void)e;
        if (p == 2 || sa % p == 0) continue;
        if (legendre_symbol(sa, p) != 1) return std::nullopt;
    }

    const i64 abs_sb = sb < 0 ? -sb : sb;
    const i64 bx = 2 * (isqrt(2 * abs_sb * sa) + 1);
    const i64 by = 2 * (isqrt(sa) + 1);
    for (i64 x = 0; x <= bx; ++x) {
        for (i64 y = 0; y <= by; ++y) {
            if (x == 0 && y == 0) continue;
            i64 rhs = sa * x * x + sb * y * y;
            if (rhs < 0) continue;
            i64 z = isqrt(rhs);
            if (z * z == rhs) {
                return std::array<i64, 3>{fb * x, fa * y, fa * fb * z};
            }
        }
    }
    return std::nullopt;
}

} // namespace golomb
