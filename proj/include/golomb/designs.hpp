#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "golomb/certify.hpp"
#include "golomb/numtheory.hpp"
#include "golomb/ruler.hpp"

namespace golomb {

/// Family of k-subsets of Z_v with correlation parameters.
struct OocCode {
    i64 v = 0;
    i64 lambda_a = 1;
    i64 lambda_c = 1;
    std::vector<std::vector<i64>> blocks;

    i64 size() const { return static_cast<i64>(blocks.size()); }
    i64 weight() const { return blocks.empty() ? 0 : static_cast<i64>(blocks.front().size()); }
    friend bool operator==(const OocCode&, const OocCode&) = default;
};

inline void require_well_formed(const OocCode& c) {
    if (c.v < 2) throw std::invalid_argument("ooc: v must be >= 2");
    if (c.blocks.empty()) throw std::invalid_argument("ooc: no blocks");
    if (c.lambda_a < 1 || c.lambda_c < 1) throw std::invalid_argument("ooc: lambda must be >= 1");
    const std::size_t k = c.blocks.front().size();
    for (const auto& b : c.blocks) {
        if (b.size() != k || k < 2) throw std::invalid_argument("ooc: blocks must share size k >= 2");
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] < 0 || b[i] >= c.v) throw std::invalid_argument("ooc: residue out of range");
            if (i > 0 && b[i] <= b[i - 1]) throw std::invalid_argument("ooc: blocks must ascend");
        }
    }
}

struct OocReport {
    bool valid = false;
    i64 worst_auto = 0;
    i64 worst_auto_shift = 0;
    i64 worst_auto_block = -1;
    i64 worst_cross = 0;
    i64 worst_cross_shift = 0;
    std::pair<i64, i64> worst_cross_pair{-1, -1};
    bool optimal = false;
    bool packing_consistent = true;
};

inline i64 ooc_size_bound(i64 v, i64 k) {
    if (k < 2 || v <= k) throw std::invalid_argument("ooc_size_bound: need v > k >= 2");
    return (v - 1) / (k * (k - 1));
}

inline bool is_optimal_size(i64 v, i64 k, i64 n) { return n == ooc_size_bound(v, k); }

/// Exact correlation maxima by direct computation over all shifts; for
/// lambda = 1 the result is cross-checked against the distinct-differences
/// criterion.
inline OocReport verify_ooc(const OocCode& c) {
    require_well_formed(c);
    const i64 v = c.v;
    OocReport rep;

    // autocorrelation at shift t is the number of ordered pairs in one
    // block differing by t
    std::vector<i64> count(static_cast<std::size_t>(v), 0);
    for (std::size_t bi = 0; bi < c.blocks.size(); ++bi) {
        const auto& b = c.blocks[bi];
        std::fill(count.begin(), count.end(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (i == j) continue;
                ++count[static_cast<std::size_t>(((b[i] - b[j]) % v + v) % v)];
            }
        }
        for (i64 t = 1; t < v; ++t) {
            if (count[static_cast<std::size_t>(t)] > rep.worst_auto) {
                rep.worst_auto = count[static_cast<std::size_t>(t)];
                rep.worst_auto_shift = t;
                rep.worst_auto_block = static_cast<i64>(bi);
            }
        }
    }

    for (std::size_t bi = 0; bi < c.blocks.size(); ++bi) {
        for (std::size_t bj = bi + 1; bj < c.blocks.size(); ++bj) {
            std::fill(count.begin(), count.end(), 0);
            for (i64 x : c.blocks[bi]) {
                for (i64 y : c.blocks[bj]) {
                    ++count[static_cast<std::size_t>(((x - y) % v + v) % v)];
                }
            }
            for (i64 t = 0; t < v; ++t) {
                if (count[static_cast<std::size_t>(t)] > rep.worst_cross) {
                    rep.worst_cross = count[static_cast<std::size_t>(t)];
                    rep.worst_cross_shift = t;
                    rep.worst_cross_pair = {static_cast<i64>(bi), static_cast<i64>(bj)};
                }
            }
        }
    }

    rep.valid = rep.worst_auto <= c.lambda_a &&
                (c.blocks.size() < 2 || rep.worst_cross <= c.lambda_c);

    if (c.lambda_a == 1 && c.lambda_c == 1) {
        // equivalent difference-packing criterion: all within-block
        // differences distinct and nonzero
        std::vector<char> seen(static_cast<std::size_t>(v), 0);
        bool packing = true;
        for (const auto& b : c.blocks) {
            for (std::size_t i = 0; i < b.size() && packing; ++i) {
                for (std::size_t j = 0; j < b.size(); ++j) {
                    if (i == j) continue;
                    auto d = static_cast<std::size_t>(((b[i] - b[j]) % v + v) % v);
                    if (seen[d]) { packing = false; break; }
                    seen[d] = 1;
                }
            }
        }
        rep.packing_consistent = (packing == rep.valid);
        if (!rep.packing_consistent)
            throw std::logic_error("verify_ooc: correlation and packing routes disagree");
        rep.optimal = rep.valid && is_optimal_size(c.v, c.weight(), c.size());
    }
    return rep;
}

namespace ddetail {

struct OptimalDecomposition {
    i64 n = 0;
    i64 ell = 0;
};

// v = k(k-1) n + 2 ell with n >= 1 and 1 <= ell <= k(k-1)/2 is unique
inline OptimalDecomposition decompose_even_v(i64 v, i64 k) {
    if (v % 2 != 0) throw std::invalid_argument("certify_optimal_ooc: v must be even");
    if (k < 2) throw std::invalid_argument("certify_optimal_ooc: k must be >= 2");
    const i64 kk = k * (k - 1);
    i64 r = v % kk;
    OptimalDecomposition d;
    if (r == 0) {
        d.ell = kk / 2;
        d.n = v / kk - 1;
    } else {
        d.ell = r / 2;
        d.n = v / kk;
    }
    if (d.n < 1) throw std::invalid_argument("certify_optimal_ooc: v too small for n >= 1");
    return d;
}

inline std::vector<i64> odd_pair_products(i64 k) { // h(k-h) for h = 0..floor(k/2)
    std::vector<i64> t;
    for (i64 h = 0; h <= k / 2; ++h) t.push_back(h * (k - h));
    return t;
}

inline std::vector<i64> target_sums(i64 v, i64 ell) { // floor(v/4) - h
    std::vector<i64> s;
    for (i64 h = 0; h < ell; ++h) s.push_back(v / 4 - h);
    return s;
}

// can `target` be written as a sum of exactly n elements of T (repetition
// allowed)?  table over (count, sum)
inline bool dp_representable(const std::vector<i64>& T, i64 n, i64 max_sum,
                             const std::vector<i64>& targets, i64* hit,
                             std::vector<i64>* tuple) {
    const auto width = static_cast<std::size_t>(max_sum + 1);
    std::vector<char> reach(static_cast<std::size_t>(n + 1) * width, 0);
    reach[0] = 1;
    for (i64 c = 0; c < n; ++c) {
        const char* cur = &reach[static_cast<std::size_t>(c) * width];
        char* nxt = &reach[static_cast<std::size_t>(c + 1) * width];
        for (i64 s = 0; s <= max_sum; ++s) {
            if (!cur[s]) continue;
            for (i64 t : T) {
                if (s + t <= max_sum) nxt[s + t] = 1;
            }
        }
    }
    for (i64 s : targets) {
        if (s < 0 || s > max_sum) continue;
        if (reach[static_cast<std::size_t>(n) * width + static_cast<std::size_t>(s)]) {
            if (hit) *hit = s;
            if (tuple) {
                tuple->clear();
                i64 rem = s;
                for (i64 c = n; c > 0; --c) {
                    for (i64 t : T) {
                        if (rem - t >= 0 &&
                            reach[static_cast<std::size_t>(c - 1) * width +
                                  static_cast<std::size_t>(rem - t)]) {
                            tuple->push_back(t);
                            rem -= t;
                            break;
                        }
                    }
                }
            }
            return true;
        }
    }
    return false;
}

} // namespace ddetail

namespace rules {
inline constexpr const char* counting_argument = "counting-argument";
inline constexpr const char* steiner_two_squares = "steiner-two-squares";
inline constexpr const char* steiner_three_squares = "steiner-three-squares";
inline constexpr const char* steiner_vacuous = "steiner-vacuous";
inline constexpr const char* rdf_squares = "rdf-squares";
inline constexpr const char* inapplicable = "inapplicable";
} // namespace rules

/// Counting certificate for optimal (v,k,1)-OOCs at even v: some target
/// count of odd differences must be a sum of exactly n odd-pair products.
/// No representation proves nonexistence of an optimal code.
inline Certificate certify_optimal_ooc(i64 v, i64 k) {
    auto d = ddetail::decompose_even_v(v, k);
    Certificate c;
    c.trace["v"] = v;
    c.trace["k"] = k;
    c.trace["n"] = d.n;
    c.trace["ell"] = d.ell;
    auto S = ddetail::target_sums(v, d.ell);
    auto T = ddetail::odd_pair_products(k);
    if (static_cast<i64>(S.size()) <= 64) c.trace["S"] = S;
    c.trace["T"] = T;
    i64 hit = -1;
    std::vector<i64> tuple;
    bool rep = ddetail::dp_representable(T, d.n, v / 4, S, &hit, &tuple);
    c.trace["representable"] = rep;
    if (rep) {
        c.trace["target"] = hit;
        c.trace["tuple"] = tuple;
        c.verdict = Certificate::Verdict::Inconclusive;
        c.rule = rules::counting_argument;
    } else {
        c.verdict = Certificate::Verdict::Nonexistent;
        c.rule = rules::counting_argument;
    }
    return c;
}

/// Re-checks a counting certificate: exhaustive multiset enumeration when
/// small enough, otherwise an independent forward pass.
inline bool validate_ooc_certificate(const Certificate& c) try {
    if (c.rule != rules::counting_argument) return false;
    if (!c.trace.contains("v") || !c.trace.contains("k")) return false;
    const i64 v = c.trace["v"].get<i64>();
    const i64 k = c.trace["k"].get<i64>();
    auto d = ddetail::decompose_even_v(v, k);
    auto S = ddetail::target_sums(v, d.ell);
    auto T = ddetail::odd_pair_products(k);
    std::set<i64> wanted(S.begin(), S.end());

    bool representable;
    double pow_size = 1;
    for (i64 i = 0; i < d.n && pow_size <= 1e6; ++i) pow_size *= static_cast<double>(T.size());
    if (pow_size <= 1e6) {
        // enumerate nondecreasing tuples
        representable = false;
        std::vector<std::size_t> idx(static_cast<std::size_t>(d.n), 0);
        for (;;) {
            i64 sum = 0;
            for (auto i : idx) sum += T[i];
            if (wanted.count(sum)) { representable = true; break; }
            std::size_t p = idx.size();
            while (p > 0 && idx[p - 1] == T.size() - 1) --p;
            if (p == 0) break;
            ++idx[p - 1];
            for (std::size_t q = p; q < idx.size(); ++q) idx[q] = idx[p - 1];
        }
    } else {
        std::vector<char> reach(static_cast<std::size_t>(v / 4 + 1), 0);
        reach[0] = 1;
        for (i64 cnt = 0; cnt < d.n; ++cnt) {
            std::vector<char> nxt(reach.size(), 0);
            for (std::size_t s = 0; s < reach.size(); ++s) {
                if (!reach[s]) continue;
                for (i64 t : T) {
                    if (s + static_cast<std::size_t>(t) < nxt.size()) nxt[s + static_cast<std::size_t>(t)] = 1;
                }
            }
            reach.swap(nxt);
        }
        representable = false;
        for (i64 s : S) {
            if (s >= 0 && s < static_cast<i64>(reach.size()) && reach[static_cast<std::size_t>(s)]) {
                representable = true;
                break;
            }
        }
    }
    bool claimed_nonexistent = c.verdict == Certificate::Verdict::Nonexistent;
    return claimed_nonexistent == !representable;
} catch (const std::exception&) {
    return false;
}

/// Necessary condition for a cyclic Steiner system S(2,k,k(k-1)n+k) with k
/// even: k/2 must be a sum of n squares bounded by k/2.  Vacuous for n >= 4.
inline Certificate steiner_check(i64 k, i64 n) {
    if (k % 2 != 0 || k < 2) throw std::invalid_argument("steiner_check: k must be even and >= 2");
    if (n < 2) throw std::invalid_argument("steiner_check: n must be >= 2");
    Certificate c;
    c.trace["k"] = k;
    c.trace["n"] = n;
    c.trace["v"] = k * (k - 1) * n + k;
    c.trace["target"] = k / 2;
    c.trace["bound"] = k / 2;
    if (n >= 4) {
        c.verdict = Certificate::Verdict::Inconclusive;
        c.rule = rules::steiner_vacuous;
        c.trace["note"] = "a representation always exists for n >= 4";
        return c;
    }
    auto w = sum_n_squares_bounded(k / 2, static_cast<int>(n), k / 2);
    c.trace["witness"] = w ? json(w->parts) : json(nullptr);
    c.rule = (n == 2) ? rules::steiner_two_squares : rules::steiner_three_squares;
    c.verdict = w ? Certificate::Verdict::Inconclusive : Certificate::Verdict::Nonexistent;
    return c;
}

/// Necessary condition for a (Z_v, H, k, lambda)-relative difference family
/// with |H| = w and v even: the strengthened form requires kn - lambda*w
/// (or kn when H contains odd residues) to be a sum of n squares of the
/// parity of k, each at most k.
inline Certificate rdf_check(i64 v, i64 w, i64 k, i64 lambda) {
    if (v < 2 || v % 2 != 0) throw std::invalid_argument("rdf_check: v must be even");
    if (w < 1 || v % w != 0) throw std::invalid_argument("rdf_check: w must divide v");
    if (k < 2 || lambda < 1) throw std::invalid_argument("rdf_check: need k >= 2, lambda >= 1");
    Certificate c;
    c.trace["v"] = v;
    c.trace["w"] = w;
    c.trace["k"] = k;
    c.trace["lambda"] = lambda;
    const i64 numer = lambda * (v - w);
    const i64 denom = k * (k - 1);
    if (numer % denom != 0 || numer / denom < 1) {
        c.verdict = Certificate::Verdict::Inconclusive;
        c.rule = rules::inapplicable;
        c.trace["note"] = "block count lambda(v-w)/(k(k-1)) is not a positive integer";
        return c;
    }
    const i64 n = numer / denom;
    if (n > 4096) throw std::invalid_argument("rdf_check: block count out of scope");
    const bool h_in_even = (v / w) % 2 == 0; // subgroup of order w hits only even residues
    const i64 target = h_in_even ? k * n - lambda * w : k * n;
    c.trace["n"] = n;
    c.trace["subgroup_even"] = h_in_even;
    c.trace["target"] = target;
    c.trace["bound"] = k;
    c.trace["parity"] = (k % 2 == 0) ? "even" : "odd";
    c.rule = rules::rdf_squares;

    if (target < 0) {
        c.verdict = Certificate::Verdict::Nonexistent;
        c.trace["failed_form"] = "negative target";
        return c;
    }
    // parity pre-checks keep large-n hopeless cases cheap
    bool feasible = true;
    if (k % 2 == 0) {
        if (target % 4 != 0) feasible = false;
    } else {
        if ((target - n) % 8 != 0) feasible = false;
    }
    std::optional<SquaresWitness> bounded;
    if (feasible) {
        bounded = sum_n_squares_bounded(target, static_cast<int>(n), k,
                                        k % 2 == 0 ? Parity::Even : Parity::Odd);
    }
    c.trace["witness"] = bounded ? json(bounded->parts) : json(nullptr);
    if (bounded) {
        c.verdict = Certificate::Verdict::Inconclusive;
        return c;
    }
    c.verdict = Certificate::Verdict::Nonexistent;
    // record whether the plain sum-of-squares form would already fail
    auto plain = sum_n_squares_bounded(target, static_cast<int>(n),
                                       target == 0 ? 0 : isqrt(target));
    c.trace["failed_form"] = plain ? "parity/bound constraints" : "plain sum of n squares";
    return c;
}

enum class OocFamily { OddCongruence, TwoSquareWindow, Size3Tight, Size3Plus4, HalfTwoSquare };

struct OocFamilyParams {
    i64 k = 0;
    i64 ell = 0;
    i64 a = 0;
    i64 c = 0;
    i64 v_max = 0;
};

struct OocFamilyEntry {
    i64 v = 0;
    i64 k = 0;
    Certificate cert;
    json note;
};

struct OocFamilyResult {
    std::vector<OocFamilyEntry> entries;
    std::vector<std::pair<i64, i64>> classes; // (residue, modulus) flagged
};

/// Enumerates an optimal-OOC nonexistence family; every member is confirmed
/// through certify_optimal_ooc, so the family results stay consequences of
/// the counting rule.
inline OocFamilyResult family_scan_ooc(OocFamily kind, const OocFamilyParams& p) {
    OocFamilyResult out;
    auto confirm = [&](i64 v, i64 k, json note = {}) {
        Certificate c = certify_optimal_ooc(v, k);
        if (!c.nonexistent())
            throw std::logic_error("family_scan_ooc: family member failed to certify");
        out.entries.push_back({v, k, std::move(c), std::move(note)});
    };

    switch (kind) {
        case OocFamily::OddCongruence: {
            const i64 k = p.k;
            if (k < 3 || k % 2 == 0) throw std::invalid_argument("family_scan_ooc: k must be odd >= 3");
            const i64 kk = k * (k - 1);
            switch (k % 8) {
                case 3:
                    out.classes = {{3 * kk + 2, 4 * kk}, {2 * kk + 2, 4 * kk}};
                    break;
                case 5:
                    out.classes = {{kk + 2, 2 * kk}};
                    break;
                case 7:
                    out.classes = {{kk + 2, 4 * kk}, {2 * kk + 2, 4 * kk}};
                    break;
                default: // k = 1 mod 8: no class is forced
                    break;
            }
            for (auto [r, m] : out.classes) {
                for (i64 v = r; v <= p.v_max; v += m) {
                    if (v >= kk + 2) confirm(v, k);
                }
            }
            return out;
        }
        case OocFamily::TwoSquareWindow: {
            const i64 k = p.k, ell = p.ell;
            if (k < 2 || ell < 1 || ell > k * (k - 1) / 2)
                throw std::invalid_argument("family_scan_ooc: need 1 <= ell <= k(k-1)/2");
            std::vector<i64> window;
            if (k % 2 == 0) {
                for (i64 h = 0; h < ell; ++h) window.push_back((k - ell + 1) / 2 + h);
            } else if (ell % 2 == 0) {
                for (i64 h = 0; h < ell; ++h) window.push_back(k - ell + 2 * h);
            } else {
                for (i64 h = 0; h < ell; ++h) window.push_back(k - ell + 2 * h + 1);
            }
            json checks = json::array();
            bool any = false;
            for (i64 r : window) {
                bool s2 = r >= 0 && is_sum_two_squares(r);
                checks.push_back({{"value", r}, {"two_squares", s2}});
                any = any || s2;
            }
            json note = {{"window", window},
                         {"checks", checks},
                         {"note", "two-squares test is unbounded here"}};
            if (!any) confirm(2 * k * (k - 1) + 2 * ell, k, note);
            return out;
        }
        case OocFamily::Size3Tight: {
            if (p.a < 0 || p.c < 0) throw std::invalid_argument("family_scan_ooc: need a, c >= 0");
            if (p.a > 20) throw std::invalid_argument("family_scan_ooc: a out of scope");
            i64 pw = 4;
            for (i64 i = 0; i < p.a; ++i) pw *= 4;
            i64 k1 = (pw * (24 * p.c + 7) + 2) / 3;
            i64 k2 = pw * (8 * p.c + 5);
            for (i64 k : {k1, k2}) confirm(3 * k * (k - 1) + 2, k);
            return out;
        }
        case OocFamily::Size3Plus4: {
            if (p.a < 0 || p.c < 0) throw std::invalid_argument("family_scan_ooc: need a, c >= 0");
            if (p.a > 18) throw std::invalid_argument("family_scan_ooc: a out of scope");
            i64 pw = 64;
            for (i64 i = 0; i < p.a; ++i) pw *= 4;
            i64 k1 = (pw * (24 * p.c + 23) - 2) / 3;
            i64 k2 = pw * (8 * p.c + 5);
            for (i64 k : {k1, k2}) confirm(3 * k * (k - 1) + 4, k);
            return out;
        }
        case OocFamily::HalfTwoSquare: {
            if (p.k < 2) throw std::invalid_argument("family_scan_ooc: k must be >= 2");
            if (!is_sum_two_squares(p.k)) confirm(2 * p.k * (p.k - 1) + 2, p.k);
            return out;
        }
    }
    return out;
}

/// Leave-shape check for a cyclic Steiner system presented as a (v,k,1)-OOC:
/// the leave must be {0} (v = 1 mod k(k-1)) or the order-k subgroup
/// (v = k mod k(k-1)).
struct SteinerReport {
    bool valid_ooc = false;
    std::string leave_shape; // "zero", "subgroup", "other"
    bool is_cyclic_steiner = false;
};

inline SteinerReport verify_steiner_ooc(const OocCode& c) {
    SteinerReport rep;
    OocReport base = verify_ooc(c);
    rep.valid_ooc = base.valid && c.lambda_a == 1 && c.lambda_c == 1;
    if (!rep.valid_ooc) return rep;
    const i64 v = c.v, k = c.weight();
    std::vector<char> covered(static_cast<std::size_t>(v), 0);
    for (const auto& b : c.blocks) {
        for (i64 x : b) {
            for (i64 y : b) {
                if (x != y) covered[static_cast<std::size_t>(((x - y) % v + v) % v)] = 1;
            }
        }
    }
    std::vector<i64> leave;
    for (i64 d = 0; d < v; ++d) {
        if (!covered[static_cast<std::size_t>(d)]) leave.push_back(d);
    }
    if (leave == std::vector<i64>{0}) {
        rep.leave_shape = "zero";
        rep.is_cyclic_steiner = v % (k * (k - 1)) == 1;
    } else {
        std::vector<i64> subgroup;
        if (v % k == 0) {
            for (i64 i = 0; i < k; ++i) subgroup.push_back(i * (v / k));
        }
        if (!subgroup.empty() && leave == subgroup) {
            rep.leave_shape = "subgroup";
            rep.is_cyclic_steiner = v % (k * (k - 1)) == k % (k * (k - 1));
        } else {
            rep.leave_shape = "other";
        }
    }
    return rep;
}

} // namespace golomb
