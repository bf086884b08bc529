#include <doctest.h>

#include <random>

#include "astower/oracle.hpp"
#include "astower/verify.hpp"
#include "test_util.hpp"

using namespace astower;
using test::poly;
using test::random_element;

TEST_CASE("find_parameterization") {
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1}), 2);
    TowerElement gamma = make_element(t, 1, t.levels[1].gamma);
    std::mt19937_64 rng(71);

    // w = b -> A = X
    TowerPoly b = tp_from({random_element(t, 1, rng), one_element(t, 1)});
    TowerPoly A = find_parameterization(b, b, gamma);
    REQUIRE(A.degree() == 1);
    CHECK(is_zero(tp_coeff(A, 0)));
    CHECK(tp_coeff(A, 1) == one_element(t, 1));

    // constant w -> A = w
    TowerElement c = random_element(t, 1, rng);
    TowerPoly wc = tp_from({c});
    TowerPoly Ac = find_parameterization(wc, b, gamma);
    REQUIRE(Ac.degree() <= 0);
    CHECK(tp_coeff(Ac, 0) == c);

    // level-2 case: w = x_2 + x_1, b = x_2 + 1 over U_1
    // on the D_2 basis: w = (x_1) + 1*x_2, b = 1 + 1*x_2
    TowerPoly w2 = tp_from({generator_element(t, 1), one_element(t, 1)});
    TowerPoly b2 = tp_from({one_element(t, 1), one_element(t, 1)});
    TowerPoly A2 = find_parameterization(w2, b2, gamma);
    // verify by evaluation in U_1[x_2]/(x_2^2 - x_2 - gamma)
    TowerPoly probe = tp_zero(t, 1);
    for (std::size_t j = A2.c.size(); j-- > 0;) {
        probe = reduce_artin_schreier(mul(probe, b2), gamma);
        if (probe.c.empty()) probe.c.push_back(tp_coeff(A2, j));
        else probe.c[0] = add(probe.c[0], tp_coeff(A2, j));
        probe.normalize();
    }
    CHECK(probe == w2);

    // non-generating b (constant in the lower field) is rejected
    TowerPoly bad = tp_from({c});
    CHECK_THROWS_AS(find_parameterization(w2, bad, gamma), std::invalid_argument);

    // random checks across p
    for (word p : {word(3), word(5)}) {
        PrimeModulus m(p);
        TowerDescriptor tt = build_tower(m, poly(m, {m.p - 1, 1}), 2);
        TowerElement g2 = make_element(tt, 1, tt.levels[1].gamma);
        std::mt19937_64 rng2(p * 73);
        for (int it = 0; it < 10; ++it) {
            // b = u + e x with e in F_p^*: a root of an Artin-Schreier polynomial
            TowerElement u = random_element(tt, 1, rng2);
            word e = 1 + rng2() % (p - 1);
            std::vector<TowerElement> bc(p, zero_element(tt, 1));
            bc[0] = u;
            bc[1] = scalar_element(tt, 1, e);
            TowerPoly bb = tp_from(bc);
            std::vector<TowerElement> wcs;
            for (word j = 0; j < p; ++j) wcs.push_back(random_element(tt, 1, rng2));
            TowerPoly ww = tp_from(wcs);
            if (ww.is_zero()) continue;
            TowerPoly AA = find_parameterization(ww, bb, g2);
            REQUIRE(AA.degree() < long(p));
        }
    }
}

TEST_CASE("naive_solve") {
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1, 1}), 1); // d = 2, U_0 = F_4
    // alpha = 0 -> delta = 0
    CHECK(naive_solve(zero_element(t, 0)) == zero_element(t, 0));
    // alpha = 1: Tr(1) = 0 in F_4; canonical root is x_0
    TowerElement one = one_element(t, 0);
    TowerElement delta = naive_solve(one);
    CHECK(delta == generator_element(t, 0));
    // alpha = x_0 has trace 1: rejected
    CHECK_THROWS_AS(naive_solve(generator_element(t, 0)), std::domain_error);

    for (word p : {word(3), word(5)}) {
        PrimeModulus m(p);
        TowerDescriptor tt = build_tower(m, find_irreducible(m, 3), 0);
        std::mt19937_64 rng(p * 79);
        for (int it = 0; it < 20; ++it) {
            TowerElement d0 = random_element(tt, 0, rng);
            TowerElement alpha = sub(pow(d0, p), d0);
            TowerElement found = naive_solve(alpha);
            REQUIRE(sub(pow(found, p), found) == alpha);
            REQUIRE(found.coeffs[0] == 0); // canonical pick
        }
    }
}

TEST_CASE("approximate_as") {
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1}), 3);
    // eta = 0 -> mu = 0
    CHECK(is_zero(approximate_as(zero_element(t, 2))));

    struct Cfg { word p; std::vector<word> q0; std::size_t k; };
    std::vector<Cfg> cfgs = {{2, {1, 1}, 4}, {3, {2, 1}, 3}, {5, {4, 1}, 2}, {2, {1, 1, 1}, 3}};
    for (const Cfg& cfg : cfgs) {
        PrimeModulus m(cfg.p);
        TowerDescriptor tt = build_tower(m, poly(m, cfg.q0), cfg.k);
        std::mt19937_64 rng(cfg.p * 83);
        for (std::uint32_t i = 1; i <= cfg.k; ++i) {
            word n = tt.d;
            for (std::uint32_t h = 0; h + 1 < i; ++h) n *= cfg.p; // p^{i-1} d
            for (int it = 0; it < 6; ++it) {
                // solvable eta from a random delta
                TowerElement d0 = random_element(tt, i, rng);
                TowerElement eta = sub(frobenius(d0, n), d0);
                TowerElement mu = approximate_as(eta);
                REQUIRE(sub(frobenius(mu, n), mu) == eta);
            }
            // not-in-image rejection: eta = x_i^{p-1}-heavy element
            TowerElement bad = zero_element(tt, i);
            BivariateElement bw = bivariate_zero(tt, i);
            bw.parts[cfg.p - 1] = one_element(tt, i - 1);
            bad = lift_up(bw);
            CHECK_THROWS_AS(approximate_as(bad), std::invalid_argument);
        }
    }
}

TEST_CASE("solve_artin_schreier") {
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1}), 4);
    // level 1: alpha = 1 = gamma_0, solved by x_1
    TowerElement alpha1 = one_element(t, 1);
    TowerElement s = solve_artin_schreier(alpha1);
    CHECK(sub(pow(s, 2), s) == alpha1);
    TowerElement diff = sub(s, generator_element(t, 1));
    for (std::size_t a = 1; a < diff.coeffs.size(); ++a) CHECK(diff.coeffs[a] == 0);

    struct Cfg { word p; std::vector<word> q0; std::size_t k; };
    std::vector<Cfg> cfgs = {{2, {1, 1}, 4}, {3, {2, 1}, 3}, {5, {4, 1}, 2}, {2, {1, 1, 1}, 3}};
    for (const Cfg& cfg : cfgs) {
        PrimeModulus m(cfg.p);
        TowerDescriptor tt = build_tower(m, poly(m, cfg.q0), cfg.k);
        std::mt19937_64 rng(cfg.p * 89);
        for (std::uint32_t i = 0; i <= cfg.k; ++i) {
            for (int it = 0; it < 6; ++it) {
                TowerElement d0 = random_element(tt, i, rng);
                TowerElement alpha = sub(pow(d0, cfg.p), d0);
                TowerElement found = solve_artin_schreier(alpha);
                REQUIRE(sub(pow(found, cfg.p), found) == alpha);
                // the solution set is delta + F_p
                TowerElement dd = sub(found, d0);
                for (std::size_t a = 1; a < dd.coeffs.size(); ++a) REQUIRE(dd.coeffs[a] == 0);
                // every shift solves, nothing else nearby does
                for (word c = 0; c < cfg.p; ++c) {
                    TowerElement shifted = add(found, scalar_element(tt, i, c));
                    REQUIRE(sub(pow(shifted, cfg.p), shifted) == alpha);
                }
            }
            // trace obstruction
            for (int it = 0; it < 20; ++it) {
                TowerElement r = random_element(tt, i, rng);
                if (absolute_trace(r) != 0) {
                    CHECK_THROWS_AS(solve_artin_schreier(r), std::domain_error);
                    break;
                }
            }
        }
    }
}

TEST_CASE("apply_isomorphism basics") {
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1}), 4);
    GeneralTower g = verify::self_general_tower(t, 4);
    // images of the primitive tower against itself differ from x_i by a scalar
    for (std::uint32_t i = 1; i <= 4; ++i) {
        TowerElement diff = sub(g.images[i], generator_element(t, i));
        for (std::size_t a = 1; a < diff.coeffs.size(); ++a) REQUIRE(diff.coeffs[a] == 0);
    }
    // v = x'_i -> s_i
    for (std::uint32_t i = 1; i <= 4; ++i)
        CHECK(apply_isomorphism(g, general_generator(t, i)) == g.images[i]);
    // constants are fixed
    GeneralElement c = general_zero(t, 3);
    c.coeffs[0] = 1;
    CHECK(apply_isomorphism(g, c) == one_element(t, 3));
    // t = s_i -> x'_i
    for (std::uint32_t i = 1; i <= 4; ++i)
        CHECK(apply_inverse(g, g.images[i]) == general_generator(t, i));
}

TEST_CASE("random general towers") {
    struct Cfg { word p; std::vector<word> q0; std::size_t k; };
    std::vector<Cfg> cfgs = {{2, {1, 1}, 4}, {3, {2, 1}, 3}, {2, {1, 1, 1}, 3}, {5, {4, 1}, 2}};
    for (const Cfg& cfg : cfgs) {
        PrimeModulus m(cfg.p);
        TowerDescriptor t = build_tower(m, poly(m, cfg.q0), cfg.k);
        std::mt19937_64 rng(cfg.p * 97);
        GeneralTower g = verify::random_general_tower(t, cfg.k, rng);
        oracle::MvContext ctx = oracle::general_context(g);

        for (std::uint32_t i = 1; i <= cfg.k; ++i) {
            // s_i^p - s_i = sigma(gamma'_{i-1}), exactly
            TowerElement rel = sub(pow(g.images[i], cfg.p), g.images[i]);
            REQUIRE(rel == embed_up(apply_isomorphism(g, g.generators[i - 1])));

            std::size_t sz = t.level_size(i);
            for (int it = 0; it < 8; ++it) {
                std::vector<word> ac(sz), bc(sz);
                for (word& w : ac) w = rng() % cfg.p;
                for (word& w : bc) w = rng() % cfg.p;
                GeneralElement a = make_general(t, i, ac), b = make_general(t, i, bc);
                TowerElement sa = apply_isomorphism(g, a), sb = apply_isomorphism(g, b);
                // ring homomorphism, with the general-tower product from the oracle
                oracle::MvElement prod = oracle::mv_mul(ctx, {i, a.coeffs}, {i, b.coeffs});
                REQUIRE(apply_isomorphism(g, make_general(t, i, prod.coeffs)) == mul(sa, sb));
                REQUIRE(apply_isomorphism(g, make_general(t, i,
                        oracle::mv_add(ctx, {i, a.coeffs}, {i, b.coeffs}).coeffs)) ==
                        add(sa, sb));
                // inverse pair
                REQUIRE(apply_inverse(g, sa) == a);
                TowerElement v = random_element(t, i, rng);
                REQUIRE(apply_isomorphism(g, apply_inverse(g, v)) == v);
            }
            if (sz <= 64) {
                // basis-exhaustive round trip (both maps are linear)
                for (std::size_t a = 0; a < sz; ++a) {
                    TowerElement v = zero_element(t, i);
                    v.coeffs[a] = 1;
                    REQUIRE(apply_isomorphism(g, apply_inverse(g, v)) == v);
                }
            }
        }
    }
}

TEST_CASE("invalid general towers are rejected") {
    PrimeModulus m2(2);
    TowerDescriptor t = build_tower(m2, poly(m2, {1, 1}), 3);
    // gamma'_0 = 0 has zero trace: X^2 - X - 0 is reducible
    GeneralTower g = make_general_tower(t, {general_zero(t, 0)});
    CHECK_THROWS_AS(compute_images(g), std::invalid_argument);
}
