#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "golomb/field.hpp"

using namespace golomb;

TEST_CASE("field_create determinism and errors") {
    FieldCtx gf4 = field_create(2, 2);
    CHECK(gf4.modulus == std::vector<i64>{1, 1, 1}); // x^2 + x + 1
    FieldCtx gf5 = field_create(5, 1);
    CHECK(gf5.primitive.code == 2);
    CHECK_THROWS_AS(field_create(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(field_create(2, 25), std::invalid_argument); // over the size cap
}

TEST_CASE("basic identities") {
    FieldCtx f = field_create(3, 2);
    for (i64 c = 0; c < f.q; ++c) {
        FieldElement x = f.element(c);
        CHECK(f.mul(x, f.one()) == x);
        CHECK(f.add(x, f.zero()) == x);
        CHECK(f.add(x, f.neg(x)) == f.zero());
    }
    CHECK(f.pow(f.primitive, f.q - 1) == f.one());
    CHECK_THROWS_AS(f.dlog(f.zero()), std::invalid_argument);

    // in GF(4) with modulus x^2+x+1: x * (x+1) = 1
    FieldCtx gf4 = field_create(2, 2);
    FieldElement x = gf4.from_coeffs({0, 1});
    FieldElement x1 = gf4.from_coeffs({1, 1});
    CHECK(gf4.mul(x, x1) == gf4.one());
    CHECK(gf4.mul_poly(x, x1) == gf4.one());
}

TEST_CASE("antilog table is a bijection on nonzero elements") {
    for (auto [p, m] : {std::pair<i64, int>{2, 4}, {3, 3}, {5, 2}, {7, 1}, {13, 1}, {2, 10}}) {
        FieldCtx f = field_create(p, m);
        std::vector<char> seen(static_cast<std::size_t>(f.q), 0);
        for (i64 i = 0; i < f.q - 1; ++i) {
            i64 e = f.antilog_table[static_cast<std::size_t>(i)];
            REQUIRE(e >= 1);
            REQUIRE(e < f.q);
            REQUIRE_FALSE(seen[static_cast<std::size_t>(e)]);
            seen[static_cast<std::size_t>(e)] = 1;
            CHECK(f.log_table[static_cast<std::size_t>(e)] == i);
        }
    }
}

TEST_CASE("field axioms, exhaustive for every order up to 256") {
    for (i64 q = 2; q <= 256; ++q) {
        auto fac = factorize(q);
        if (fac.size() != 1) continue;
        FieldCtx f = field_create(fac[0].prime, fac[0].exponent);
        CAPTURE(q);

        const auto n = static_cast<std::size_t>(f.q);
        std::vector<i64> addt(n * n), mult(n * n);
        bool tables_match_poly = true;
        for (i64 a = 0; a < f.q; ++a) {
            for (i64 b = 0; b < f.q; ++b) {
                FieldElement ea{a}, eb{b};
                addt[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] =
                    f.add(ea, eb).code;
                i64 m = f.mul(ea, eb).code;
                mult[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = m;
                if (m != f.mul_poly(ea, eb).code) tables_match_poly = false;
            }
        }
        REQUIRE(tables_match_poly);

        bool commutative = true, associative = true, distributive = true;
        auto A = [&](i64 a, i64 b) { return addt[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)]; };
        auto M = [&](i64 a, i64 b) { return mult[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)]; };
        for (i64 a = 0; a < f.q; ++a) {
            for (i64 b = 0; b < f.q; ++b) {
                if (A(a, b) != A(b, a) || M(a, b) != M(b, a)) commutative = false;
                for (i64 c = 0; c < f.q; ++c) {
                    if (A(A(a, b), c) != A(a, A(b, c))) associative = false;
                    if (M(M(a, b), c) != M(a, M(b, c))) associative = false;
                    if (M(a, A(b, c)) != A(M(a, b), M(a, c))) distributive = false;
                }
            }
        }
        REQUIRE(commutative);
        REQUIRE(associative);
        REQUIRE(distributive);
    }
}

TEST_CASE("extension fields used by the constructions") {
    FieldCtx gf2 = field_create(2, 1);
    ExtField e = ext_field_create(gf2, 3);
    CHECK(e.order() == 8);
    // theta generates the full multiplicative group
    auto cur = e.one();
    std::set<std::array<i64, 3>> seen;
    for (i64 i = 0; i < e.order() - 1; ++i) {
        REQUIRE(seen.insert(cur).second);
        cur = e.mul(cur, e.theta);
    }
    CHECK(cur == e.one());

    FieldCtx gf4 = field_create(2, 2);
    ExtField e2 = ext_field_create(gf4, 2);
    CHECK(e2.order() == 16);
    CHECK(e2.pow(e2.theta, 15) == e2.one());
    CHECK(e2.pow(e2.theta, 5) != e2.one());
    CHECK(e2.pow(e2.theta, 3) != e2.one());
}
