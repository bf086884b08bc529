#include <doctest.h>

#include <random>

#include "astower/frobenius.hpp"
#include "astower/oracle.hpp"
#include "test_util.hpp"

using namespace astower;
using test::poly;
using test::random_element;

TEST_CASE("frobenius base cases and examples") {
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1}), 3);
    // x_1^2 = x_1 + 1 = x_1 + beta_{0,1}
    TowerElement x1 = generator_element(t, 1);
    CHECK(frobenius(x1, 1) == make_element(t, 1, {1, 1}));
    // n = p^j d with i <= j: identity
    TowerElement v = make_element(t, 1, {1, 1});
    CHECK(frobenius(v, 2) == v);  // |U_1| = 4
    CHECK(frobenius(v, 4) == v);
    // full field order at the top
    std::mt19937_64 rng(3);
    TowerElement w = random_element(t, 3, rng);
    CHECK(frobenius(w, 8) == w);
    // inadmissible exponents
    CHECK_THROWS_AS(frobenius(w, 3), std::invalid_argument);
    CHECK_THROWS_AS(frobenius(w, 6), std::invalid_argument);
}

TEST_CASE("frobenius matches naive powering") {
    struct Cfg { word p; std::vector<word> q0; std::size_t k; };
    std::vector<Cfg> cfgs = {
        {2, {1, 1}, 7}, {2, {1, 1, 1}, 5}, {2, {1, 1, 0, 1}, 4},
        {3, {2, 1}, 4}, {3, {2, 2, 1}, 2}, {5, {4, 1}, 2},
    };
    for (const Cfg& cfg : cfgs) {
        PrimeModulus m(cfg.p);
        TowerDescriptor t = build_tower(m, poly(m, cfg.q0), cfg.k);
        oracle::MvContext ctx = oracle::primitive_context(t, std::uint32_t(cfg.k));
        std::mt19937_64 rng(cfg.p * 37);
        for (std::uint32_t i = 0; i <= cfg.k && t.level_size(i) <= 256; ++i) {
            std::vector<word> exps;
            for (word n : little_exponent_set(t.d))
                if (n < t.d) exps.push_back(n);
            for (word n = t.d; n <= t.level_size(i) || n == t.d; n *= cfg.p) {
                exps.push_back(n);
                if (n > t.level_size(i)) break;
            }
            for (int it = 0; it < 6; ++it) {
                TowerElement v = random_element(t, i, rng);
                oracle::MvElement vm = oracle::basis_convert(ctx, v);
                for (word n : exps) {
                    TowerElement f = frobenius(v, n);
                    oracle::MvElement fm = oracle::naive_frobenius(ctx, vm, n);
                    REQUIRE(oracle::basis_convert(ctx, f).coeffs == fm.coeffs);
                }
            }
        }
    }
}

TEST_CASE("frobenius is a ring homomorphism") {
    PrimeModulus m3(3);
    TowerDescriptor t = build_tower(m3, poly(m3, {2, 1}), 3);
    std::mt19937_64 rng(53);
    for (std::uint32_t i = 1; i <= 3; ++i) {
        for (int it = 0; it < 10; ++it) {
            TowerElement a = random_element(t, i, rng);
            TowerElement b = random_element(t, i, rng);
            word n = t.d;
            for (std::uint32_t h = 0; h + 1 < i; ++h) n *= 3;
            REQUIRE(frobenius(mul(a, b), n) == mul(frobenius(a, n), frobenius(b, n)));
            REQUIRE(frobenius(add(a, b), n) == add(frobenius(a, n), frobenius(b, n)));
        }
    }
}

TEST_CASE("little pseudotrace") {
    // n = 1 is the identity
    PrimeModulus m2(2);
    TowerDescriptor t2 = build_tower(m2, poly(m2, {1, 1, 1}), 3); // d = 2
    std::mt19937_64 rng(59);
    TowerElement v = random_element(t2, 2, rng);
    CHECK(little_pseudotrace(v, 1) == v);
    // v = x_0 in F_4: x_0 + x_0^2 = 1
    TowerElement x0 = generator_element(t2, 0);
    CHECK(little_pseudotrace(x0, 2) == one_element(t2, 0));
    CHECK_THROWS_AS(little_pseudotrace(v, 3), std::invalid_argument);

    // equals the literal conjugate sums
    struct Cfg { word p; std::vector<word> q0; std::size_t k; };
    std::vector<Cfg> cfgs = {{2, {1, 1, 0, 1}, 3}, {3, {2, 2, 1}, 2}, {2, {1, 0, 1, 1, 1, 1}, 2}};
    for (const Cfg& cfg : cfgs) {
        PrimeModulus m(cfg.p);
        PrimePoly q0 = poly(m, cfg.q0);
        if (trace_of_generator(q0) == 0) continue;
        TowerDescriptor t = build_tower(m, q0, cfg.k);
        oracle::MvContext ctx = oracle::primitive_context(t, std::uint32_t(cfg.k));
        std::mt19937_64 rng2(cfg.p * 41);
        for (std::uint32_t i = 0; i <= cfg.k && t.level_size(i) <= 256; ++i) {
            for (int it = 0; it < 4; ++it) {
                TowerElement w = random_element(t, i, rng2);
                oracle::MvElement wm = oracle::basis_convert(ctx, w);
                for (word n : little_exponent_set(t.d)) {
                    TowerElement pt = little_pseudotrace(w, n);
                    oracle::MvElement om = oracle::naive_pseudotrace(ctx, wm, n);
                    REQUIRE(oracle::basis_convert(ctx, pt).coeffs == om.coeffs);
                }
            }
        }
    }
}

TEST_CASE("pseudotrace") {
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1}), 4);
    TowerElement x1 = generator_element(t, 1);
    // PTr_{p^0 d} = PTr_1 = identity for d = 1
    CHECK(pseudotrace(x1, 0) == x1);
    // PTr_2(x_1) = x_1 + x_1^2 = 1
    CHECK(pseudotrace(x1, 1) == one_element(t, 1));
    CHECK_THROWS_AS(pseudotrace(x1, 2), std::invalid_argument);

    // equals literal conjugate sums
    struct Cfg { word p; std::vector<word> q0; std::size_t k; };
    std::vector<Cfg> cfgs = {{2, {1, 1}, 7}, {3, {2, 1}, 4}, {2, {1, 1, 1}, 5}, {5, {4, 1}, 2}};
    for (const Cfg& cfg : cfgs) {
        PrimeModulus m(cfg.p);
        TowerDescriptor tt = build_tower(m, poly(m, cfg.q0), cfg.k);
        oracle::MvContext ctx = oracle::primitive_context(tt, std::uint32_t(cfg.k));
        std::mt19937_64 rng(cfg.p * 43);
        for (std::uint32_t i = 0; i <= cfg.k && tt.level_size(i) <= 256; ++i) {
            for (int it = 0; it < 4; ++it) {
                TowerElement v = random_element(tt, i, rng);
                oracle::MvElement vm = oracle::basis_convert(ctx, v);
                word n = 1;
                for (std::size_t j = 0; j <= i; ++j) {
                    TowerElement pt = pseudotrace(v, j);
                    oracle::MvElement om = oracle::naive_pseudotrace(ctx, vm, n * tt.d);
                    REQUIRE(oracle::basis_convert(ctx, pt).coeffs == om.coeffs);
                    n *= cfg.p;
                }
                // additivity
                TowerElement w = random_element(tt, i, rng);
                REQUIRE(pseudotrace(add(v, w), std::min<std::size_t>(i, 1)) ==
                        add(pseudotrace(v, std::min<std::size_t>(i, 1)),
                            pseudotrace(w, std::min<std::size_t>(i, 1))));
            }
        }
    }
}

TEST_CASE("relative traces and the trace identities") {
    struct Cfg { word p; std::vector<word> q0; std::size_t k; };
    std::vector<Cfg> cfgs = {{2, {1, 1}, 6}, {2, {1, 1, 1}, 4}, {3, {2, 1}, 4}, {5, {4, 1}, 2}};
    for (const Cfg& cfg : cfgs) {
        PrimeModulus m(cfg.p);
        TowerDescriptor t = build_tower(m, poly(m, cfg.q0), cfg.k);
        oracle::MvContext ctx = oracle::primitive_context(t, std::uint32_t(cfg.k + 1));
        std::mt19937_64 rng(cfg.p * 47);
        // relative trace vs oracle conjugate sums
        for (std::uint32_t i = 0; i <= cfg.k && t.level_size(i) <= 256; ++i) {
            for (std::uint32_t j = 0; j <= i; ++j) {
                TowerElement v = random_element(t, i, rng);
                oracle::MvElement vm = oracle::basis_convert(ctx, v);
                word sub = word(t.level_size(j));
                std::size_t count = t.level_size(i) / t.level_size(j);
                oracle::MvElement acc = vm, cur = vm;
                for (std::size_t h = 1; h < count; ++h) {
                    cur = oracle::naive_frobenius(ctx, cur, sub);
                    acc = oracle::mv_add(ctx, acc, cur);
                }
                REQUIRE(oracle::basis_convert(ctx, relative_trace(v, j)).coeffs == acc.coeffs);
            }
        }
        // trace identities on gamma_i through the library route
        for (std::uint32_t i = 1; i <= cfg.k; ++i) {
            TowerElement gi = gamma_element(t, i);
            TowerElement tr = relative_trace(gi, i - 1);
            TowerElement expected;
            TowerElement gprev = embed_up(make_element(t, i - 1, t.levels[i - 1].gamma));
            if (cfg.p != 2) {
                expected = neg(gprev);
            } else if (i == 1 && t.d % 2 == 1) {
                expected = one_element(t, i);
            } else {
                expected = add(one_element(t, i), gprev);
            }
            REQUIRE(tr == expected);
        }
    }
}

TEST_CASE("pseudotrace composition relation") {
    // PTr_{nm}(v) = sum_{h<m} PTr_n(v)^{p^{hn}}
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1, 0, 1}), 2); // d = 3
    oracle::MvContext ctx = oracle::primitive_context(t, 2);
    std::mt19937_64 rng(61);
    for (int it = 0; it < 10; ++it) {
        TowerElement v = random_element(t, 2, rng);
        oracle::MvElement vm = oracle::basis_convert(ctx, v);
        // n = 3 (= d), m = 2: PTr_6 = PTr_3 + PTr_3^{p^3}
        oracle::MvElement lhs = oracle::naive_pseudotrace(ctx, vm, 6);
        oracle::MvElement pt3 = oracle::naive_pseudotrace(ctx, vm, 3);
        oracle::MvElement rhs = oracle::mv_add(ctx, pt3, oracle::naive_frobenius(ctx, pt3, 3));
        REQUIRE(lhs.coeffs == rhs.coeffs);
        // and the library's value agrees
        REQUIRE(oracle::basis_convert(ctx, pseudotrace(v, 1)).coeffs == lhs.coeffs);
    }
}

TEST_CASE("beta tables") {
    // d = 1: N(1) = {1}, beta_{i,1} = gamma_i
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1}), 3);
    CHECK(little_exponent_set(1) == std::set<word>{1});
    CHECK(t.levels[0].beta_little.at(1) == t.levels[0].gamma);
    // d = 5: N(5) = {1, 2, 4, 5}
    CHECK(little_exponent_set(5) == std::set<word>{1, 2, 4, 5});
    CHECK(little_exponent_set(3) == std::set<word>{1, 2, 3});

    // memory bound: O(k^2 + k log d) stored elements
    PrimeModulus m(2);
    PrimePoly q0 = find_irreducible(m, 5);
    TowerDescriptor t5 = build_tower(m, q0, 3);
    for (std::uint32_t i = 0; i < 3; ++i) {
        CHECK(t5.levels[i].beta_little.size() == little_exponent_set(5).size());
        CHECK(t5.levels[i].beta_big.size() == i + 1);
    }

    // the defining identity x_i^{p^n} = x_i + beta_{i-1,n}, via the oracle
    oracle::MvContext ctx = oracle::primitive_context(t5, 3);
    for (std::uint32_t i = 1; i <= 3 && t5.level_size(i) <= 256; ++i) {
        TowerElement xi = generator_element(t5, i);
        for (const auto& [n, beta] : t5.levels[i - 1].beta_little) {
            TowerElement lhs = frobenius(xi, n);
            TowerElement rhs = add(xi, embed_up(make_element(t5, i - 1, beta)));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("frobenius without tables is rejected") {
    PrimeModulus m2(2);
    TowerOptions opts;
    opts.frobenius_tables = false;
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1}), 3, opts);
    std::mt19937_64 rng(67);
    TowerElement v = random_element(t, 2, rng);
    CHECK_THROWS_AS(frobenius(v, 1), std::invalid_argument);
    // identity cases still work
    CHECK(frobenius(v, 4) == v);
    // push/lift are unaffected
    REQUIRE(lift_up(push_down(v)) == v);
}
