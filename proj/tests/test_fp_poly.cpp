#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace astower;
using test::poly;
using test::random_poly;
using test::school_mul;

TEST_CASE("prime modulus validation") {
    CHECK_THROWS_AS(PrimeModulus(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(4), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(word(1) << 62), std::invalid_argument);
    PrimeModulus mersenne((word(1) << 61) - 1);
    CHECK(mersenne.mul(mersenne.p - 1, mersenne.p - 1) == 1);
    CHECK(mersenne.mul(mersenne.inv(12345), 12345) == 1);
    CHECK(is_prime_u64(2305843009213693951ull));
    CHECK_FALSE(is_prime_u64(2305843009213693953ull));
}

TEST_CASE("poly_mul examples and dispatch") {
    PrimeModulus m2(2), m3(3);
    // freshman's dream
    CHECK(mul(poly(m2, {1, 1}), poly(m2, {1, 1})) == poly(m2, {1, 0, 1}));
    // identity
    PrimePoly a = poly(m3, {2, 1, 0, 2});
    CHECK(mul(a, PrimePoly::one(m3)) == a);
    // schoolbook expansion: (X^2+2X+1)(X+2) mod 3 = X^3 + X^2 + 2X + 2
    CHECK(mul(poly(m3, {1, 2, 1}), poly(m3, {2, 1})) == poly(m3, {2, 2, 1, 1}));
}

TEST_CASE("poly_mul agrees with schoolbook across moduli") {
    for (word p : {word(2), word(3), word(5), word(7), word(251)}) {
        PrimeModulus m(p);
        std::mt19937_64 rng(p * 7919);
        for (int it = 0; it < 1000; ++it) {
            std::size_t bound = it % 10 == 0 ? 512 : 80; // a few large, many small
            PrimePoly a = random_poly(m, bound, rng);
            PrimePoly b = random_poly(m, bound, rng);
            REQUIRE(mul(a, b) == school_mul(a, b));
        }
    }
}

TEST_CASE("big modulus multiplication path") {
    PrimeModulus m((word(1) << 61) - 1);
    std::mt19937_64 rng(99);
    for (int it = 0; it < 50; ++it) {
        PrimePoly a = random_poly(m, 70, rng);
        PrimePoly b = random_poly(m, 70, rng);
        REQUIRE(mul(a, b) == school_mul(a, b));
    }
}

TEST_CASE("poly_divrem") {
    PrimeModulus m2(2);
    auto [q, r] = divrem(poly(m2, {1, 1, 1}), poly(m2, {1, 1}));
    CHECK(q == poly(m2, {0, 1}));
    CHECK(r == poly(m2, {1}));

    PrimePoly a = poly(m2, {1, 0, 1, 1});
    CHECK(divrem(a, PrimePoly::one(m2)).first == a);
    CHECK(divrem(a, PrimePoly::one(m2)).second.is_zero());
    CHECK(divrem(a, a).first == PrimePoly::one(m2));
    CHECK(divrem(a, a).second.is_zero());
    CHECK_THROWS_AS(divrem(a, PrimePoly::zero(m2)), std::invalid_argument);

    for (word p : {word(2), word(3), word(251)}) {
        PrimeModulus m(p);
        std::mt19937_64 rng(p);
        for (int it = 0; it < 200; ++it) {
            PrimePoly f = random_poly(m, 130, rng);
            PrimePoly g = random_poly(m, 60, rng);
            if (g.is_zero()) continue;
            auto [qq, rr] = divrem(f, g);
            REQUIRE(add(school_mul(qq, g), rr) == f);
            REQUIRE(rr.degree() < g.degree());
        }
    }
}

TEST_CASE("poly_xgcd") {
    PrimeModulus m2(2);
    PrimePoly a = poly(m2, {1, 1, 1}), b = PrimePoly::x(m2);
    XgcdResult x = xgcd(a, b);
    CHECK(x.g == PrimePoly::one(m2));
    CHECK(add(mul(x.u, a), mul(x.v, b)) == PrimePoly::one(m2));

    PrimeModulus m5(5);
    PrimePoly c = poly(m5, {3, 2, 4});
    XgcdResult y = xgcd(c, PrimePoly::zero(m5));
    CHECK(y.g == mul_scalar(c, m5.inv(4)));
    CHECK(y.v.is_zero());
    XgcdResult z = xgcd(c, c);
    CHECK(z.g == mul_scalar(c, m5.inv(4)));
    CHECK_THROWS_AS(xgcd(PrimePoly::zero(m5), PrimePoly::zero(m5)), std::invalid_argument);

    std::mt19937_64 rng(17);
    for (int it = 0; it < 200; ++it) {
        PrimePoly f = random_poly(m5, 40, rng), g = random_poly(m5, 40, rng);
        if (f.is_zero() && g.is_zero()) continue;
        XgcdResult w = xgcd(f, g);
        REQUIRE(add(mul(w.u, f), mul(w.v, g)) == w.g);
        if (!f.is_zero()) REQUIRE(rem(f, w.g).is_zero());
        if (!g.is_zero()) REQUIRE(rem(g, w.g).is_zero());
    }
}

TEST_CASE("poly_rev") {
    PrimeModulus m2(2);
    CHECK(rev(poly(m2, {0, 1, 1}), 2) == poly(m2, {1, 1}));
    CHECK(rev(poly(m2, {1, 1}), 3) == poly(m2, {0, 0, 1, 1}));
    CHECK_THROWS_AS(rev(poly(m2, {1, 1, 1}), 1), std::invalid_argument);
    // involution when a(0) != 0 and deg a = e
    PrimeModulus m7(7);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        PrimePoly a = random_poly(m7, 30, rng);
        if (a.is_zero() || a.c[0] == 0) continue;
        std::size_t e = std::size_t(a.degree());
        REQUIRE(rev(rev(a, e), e) == a);
    }
}

TEST_CASE("modular composition") {
    PrimeModulus m2(2);
    PrimePoly h = poly(m2, {1, 1, 1});
    // f = X: g mod h
    CHECK(compose_mod(PrimePoly::x(m2), poly(m2, {1, 1}), h) == poly(m2, {1, 1}));
    // f = X^2, g = X+1: (X+1)^2 = X^2+1 = X mod X^2+X+1
    CHECK(compose_mod(poly(m2, {0, 0, 1}), poly(m2, {1, 1}), h) == PrimePoly::x(m2));
    // constant f
    CHECK(compose_mod(poly(m2, {1}), poly(m2, {1, 1}), h) == PrimePoly::one(m2));
    CHECK_THROWS_AS(compose_mod(h, h, PrimePoly::one(m2)), std::invalid_argument);

    for (word p : {word(3), word(17)}) {
        PrimeModulus m(p);
        std::mt19937_64 rng(p + 1);
        for (int it = 0; it < 60; ++it) {
            PrimePoly h2 = random_poly(m, 64, rng, true);
            if (h2.degree() < 1) continue;
            PrimePoly f = random_poly(m, 64, rng);
            PrimePoly g = rem(random_poly(m, 64, rng), h2);
            // Horner oracle
            PrimePoly acc(m);
            for (std::size_t i = f.c.size(); i-- > 0;)
                acc = rem(add(school_mul(acc, g), poly(m, {f.c[i]})), h2);
            REQUIRE(compose_mod(f, g, h2) == acc);
        }
    }
}

TEST_CASE("transposed multiplication duality") {
    PrimeModulus m2(2);
    PrimePoly h = poly(m2, {1, 1, 1});
    // identity and zero
    std::vector<word> L{0, 1};
    CHECK(transposed_mul(PrimePoly::one(m2), L, h) == L);
    CHECK(transposed_mul(PrimePoly::x(m2), std::vector<word>{0, 0}, h) ==
          std::vector<word>{0, 0});
    // derived: w = x, L = (0,1) -> (1,1)
    CHECK(transposed_mul(PrimePoly::x(m2), L, h) == std::vector<word>{1, 1});

    for (word p : {word(2), word(5), word(251)}) {
        PrimeModulus m(p);
        std::mt19937_64 rng(p + 5);
        for (int it = 0; it < 120; ++it) {
            std::size_t n = 1 + rng() % 100;
            std::vector<word> hc(n + 1);
            for (word& w : hc) w = rng() % p;
            hc[n] = 1;
            PrimePoly hh(m, hc);
            if (std::size_t(hh.degree()) != n) continue;
            Reducer red(hh);
            PrimePoly w = rem(random_poly(m, 2 * n, rng), hh);
            PrimePoly v = rem(random_poly(m, 2 * n, rng), hh);
            std::vector<word> ell(n);
            for (word& x : ell) x = rng() % p;
            std::vector<word> wl = red.transposed_mul(w, ell);
            REQUIRE(wl == transposed_mul_naive(w, ell, hh));
            // <w.ell, v> = <ell, v w mod h>
            PrimePoly prod = red.mulmod(v, w);
            word lhs = 0, rhs = 0;
            for (std::size_t i = 0; i < n; ++i) {
                lhs = m.add(lhs, m.mul(wl[i], v.coeff(i)));
                rhs = m.add(rhs, m.mul(ell[i], prod.coeff(i)));
            }
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("sequence extension matches the naive recurrence") {
    PrimeModulus m3(3);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 80; ++it) {
        PrimePoly h = random_poly(m3, 50, rng, true);
        if (h.degree() < 1) continue;
        std::size_t n = std::size_t(h.degree());
        Reducer red(h);
        std::vector<word> first(n);
        for (word& w : first) w = rng() % 3;
        REQUIRE(red.extend_sequence(first, 2 * n) == extend_sequence_naive(first, h, 2 * n));
    }
}

TEST_CASE("trace series") {
    PrimeModulus m2(2), m3(3);
    CHECK(trace_series(poly(m2, {1, 1, 1})) == std::vector<word>{0, 1});
    PrimeModulus m7(7);
    CHECK(trace_series(poly(m7, {6, 1})) == std::vector<word>{1}); // q = X - 1
    CHECK(trace_series(poly(m3, {2, 2, 0, 1})) == std::vector<word>{0, 0, 2});

    // linear-algebra oracle: trace of multiplication-by-x^a matrices
    for (word p : {word(2), word(5)}) {
        PrimeModulus m(p);
        std::mt19937_64 rng(p + 9);
        for (int it = 0; it < 40; ++it) {
            PrimePoly q = random_poly(m, 16, rng, true);
            if (q.degree() < 1 || !irreducible(q)) continue;
            std::size_t n = std::size_t(q.degree());
            Reducer red(q);
            std::vector<word> ts = trace_series(q);
            PrimePoly xa = PrimePoly::one(m);
            for (std::size_t a = 0; a < n; ++a) {
                // trace of v -> x^a v
                word tr = 0;
                for (std::size_t e = 0; e < n; ++e) {
                    PrimePoly unit(m);
                    unit.c.assign(e + 1, 0);
                    unit.c[e] = 1;
                    PrimePoly col = red.mulmod(xa, unit);
                    tr = m.add(tr, col.coeff(e));
                }
                REQUIRE(ts[a] == tr);
                xa = red.mulmod(xa, PrimePoly::x(m));
            }
        }
    }
}

TEST_CASE("series inverse") {
    PrimeModulus m5(5);
    std::mt19937_64 rng(21);
    for (int it = 0; it < 60; ++it) {
        PrimePoly f = random_poly(m5, 40, rng);
        if (f.is_zero() || f.c[0] == 0) continue;
        std::size_t prec = 1 + rng() % 100;
        PrimePoly g = series_inverse(f, prec);
        PrimePoly prod = school_mul(f, g);
        REQUIRE(prod.coeff(0) == 1);
        for (std::size_t i = 1; i < prec; ++i) REQUIRE(prod.coeff(i) == 0);
    }
}

TEST_CASE("irreducibility test") {
    PrimeModulus m2(2);
    CHECK(irreducible(poly(m2, {1, 1, 1})));
    CHECK_FALSE(irreducible(poly(m2, {1, 0, 1}))); // (X+1)^2
    CHECK(irreducible(poly(m2, {1, 1, 0, 0, 1})));
    // count monic irreducible quadratics mod 3: there are exactly 3
    PrimeModulus m3(3);
    int count = 0;
    for (word a = 0; a < 3; ++a)
        for (word b = 0; b < 3; ++b)
            if (irreducible(poly(m3, {a, b, 1}))) ++count;
    CHECK(count == 3);
    // degree-1 always irreducible
    CHECK(irreducible(poly(m3, {2, 1})));
}

TEST_CASE("cyclotomic polynomials") {
    PrimeModulus m2(2), m3(3), m5(5);
    CHECK(cyclotomic(3, m2) == poly(m2, {1, 1, 1}));
    CHECK(cyclotomic(5, m3) == poly(m3, {1, 1, 1, 1, 1}));
    CHECK(cyclotomic(9, m5) == poly(m5, {1, 0, 0, 1, 0, 0, 1}));
    CHECK(cyclotomic(1, m2) == poly(m2, {1, 1})); // X - 1 mod 2
}

TEST_CASE("find_irreducible default search") {
    PrimeModulus m2(2), m3(3);
    CHECK(find_irreducible(m2, 1) == poly(m2, {1, 1}));
    CHECK(find_irreducible(m3, 1) == poly(m3, {2, 1})); // X - 1
    CHECK(find_irreducible(m2, 2) == poly(m2, {1, 1, 1}));
    PrimePoly q = find_irreducible(m2, 5);
    CHECK(q.degree() == 5);
    CHECK(irreducible(q));
    CHECK(trace_of_generator(q) != 0);
}
