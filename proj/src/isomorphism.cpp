#include "astower/isomorphism.hpp"

#include <stdexcept>
#include <string>

namespace astower {

namespace {

TowerElement gamma_of(const TowerDescriptor& t, std::uint32_t level) {
    if (t.levels[level].gamma.empty())
        throw std::logic_error("isomorphism: generator image missing at level " +
                               std::to_string(level));
    TowerElement out;
    out.tower = &t;
    out.level = level;
    out.coeffs = t.levels[level].gamma;
    return out;
}

word binom_mod(word h, word k, const PrimeModulus& m) {
    // h < p, so no factor is divisible by p
    if (k > h) return 0;
    word num = 1, den = 1;
    for (word s = 1; s <= k; ++s) {
        num = m.mul(num, (h - k + s) % m.p);
        den = m.mul(den, s % m.p);
    }
    return m.mul(num, m.inv(den));
}

} // namespace

GeneralElement make_general(const TowerDescriptor& t, std::uint32_t level,
                            std::vector<word> coeffs) {
    if (level >= t.levels.size())
        throw std::invalid_argument("make_general: level exceeds the tower height");
    if (coeffs.size() != t.level_size(level))
        throw std::invalid_argument("make_general: coefficient count != p^level * d");
    GeneralElement out;
    out.tower = &t;
    out.level = level;
    out.coeffs = std::move(coeffs);
    for (word& w : out.coeffs) w = t.mod.reduce(w);
    return out;
}

GeneralElement general_zero(const TowerDescriptor& t, std::uint32_t level) {
    GeneralElement out;
    out.tower = &t;
    out.level = level;
    out.coeffs.assign(t.level_size(level), 0);
    return out;
}

GeneralElement general_generator(const TowerDescriptor& t, std::uint32_t level) {
    GeneralElement out = general_zero(t, level);
    if (level == 0) {
        TowerElement x0 = generator_element(t, 0);
        out.coeffs = x0.coeffs;
    } else {
        out.coeffs[t.level_size(level - 1)] = 1; // exponent vector (0,...,0,1)
    }
    return out;
}

GeneralElement general_slice(const GeneralElement& v, std::size_t j) {
    const TowerDescriptor& t = *v.tower;
    if (v.level == 0) throw std::invalid_argument("general_slice: level 0 has no slices");
    std::size_t msz = t.level_size(v.level - 1);
    GeneralElement out = general_zero(t, v.level - 1);
    for (std::size_t a = 0; a < msz; ++a) out.coeffs[a] = v.coeffs[j * msz + a];
    return out;
}

GeneralTower make_general_tower(const TowerDescriptor& t,
                                std::vector<GeneralElement> generators) {
    if (generators.size() > t.height())
        throw std::invalid_argument("make_general_tower: more generators than tower levels");
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].tower != &t || generators[i].level != i)
            throw std::invalid_argument("make_general_tower: generator i must live at level i");
    GeneralTower g;
    g.tower = &t;
    g.generators = std::move(generators);
    return g;
}

TowerPoly find_parameterization(const TowerPoly& w, const TowerPoly& b,
                                const TowerElement& gamma) {
    const TowerDescriptor& t = *w.tower;
    const word p = t.p();
    if (b.tower != &t || b.level != w.level)
        throw std::invalid_argument("find_parameterization: operand mismatch");
    if (w.c.size() > p || b.c.size() > p)
        throw std::invalid_argument("find_parameterization: operands must have degree < p");
    if (b.degree() < 1)
        throw std::invalid_argument("find_parameterization: b does not generate (constant)");
    std::uint32_t lvl = w.level;

    // ell = w . Tr on (1, x, ..., x^{p-1}): ell_t = -coeff_{p-1}(x^t w)
    std::vector<TowerElement> ell;
    ell.reserve(p);
    for (std::size_t tix = 0; tix < p; ++tix) {
        TowerElement u = tp_coeff(w, std::size_t(p) - 1 - tix);
        if (tix + 1 == std::size_t(p)) u = add(u, tp_coeff(w, std::size_t(p) - 1));
        ell.push_back(neg(u));
    }

    // M_j = ell(b^j)
    std::vector<TowerElement> M;
    M.reserve(p);
    TowerPoly bpow = tp_one(t, lvl);
    for (word j = 0; j < p; ++j) {
        if (j > 0) bpow = reduce_artin_schreier(mul(bpow, b), gamma);
        TowerElement acc = zero_element(t, lvl);
        for (std::size_t tix = 0; tix < p; ++tix)
            acc = add(acc, mul(ell[tix], tp_coeff(bpow, tix)));
        M.push_back(std::move(acc));
    }

    // N = M rev_p(Q_b) mod X^p with Q_b Artin-Schreier: N = M - M_0 X^{p-1},
    // and A = -rev_{p-1}(N).
    std::vector<TowerElement> A(p, zero_element(t, lvl));
    for (std::size_t j = 0; j < p; ++j) A[j] = neg(M[std::size_t(p) - 1 - j]);
    A[0] = add(A[0], M[0]);

    TowerPoly out = tp_zero(t, lvl);
    out.c = std::move(A);
    out.normalize();

    // Verification doubles as the degeneracy check.
    TowerPoly probe = tp_zero(t, lvl);
    for (std::size_t j = out.c.size(); j-- > 0;) {
        probe = reduce_artin_schreier(mul(probe, b), gamma);
        if (probe.c.empty()) probe.c.push_back(out.c[j]);
        else probe.c[0] = add(probe.c[0], out.c[j]);
        probe.normalize();
    }
    TowerPoly wn = w;
    wn.normalize();
    if (!(probe == wn))
        throw std::invalid_argument("find_parameterization: b does not generate the extension");
    return out;
}

TowerElement naive_solve(const TowerElement& alpha) {
    const TowerDescriptor& t = *alpha.tower;
    if (alpha.level != 0) throw std::invalid_argument("naive_solve: element must be at level 0");
    if (absolute_trace(alpha) != 0)
        throw std::domain_error("naive_solve: Tr(alpha) != 0, no solution exists");
    const PrimeModulus& m = t.mod;
    std::size_t d = t.d;

    // Columns of delta -> delta^p - delta on the power basis.
    const PrimePoly& q0 = t.levels[0].q;
    PrimePoly xp = powmod(PrimePoly::x(m), m.p, q0);
    Reducer red(q0);
    std::vector<std::vector<word>> col(d, std::vector<word>(d, 0));
    PrimePoly cur = PrimePoly::one(m);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t r = 0; r < d; ++r) col[a][r] = cur.coeff(r);
        col[a][a] = m.sub(col[a][a], 1);
        if (a + 1 < d) cur = red.mulmod(cur, xp);
    }

    // Gaussian elimination on [A | alpha].
    std::vector<std::vector<word>> aug(d, std::vector<word>(d + 1, 0));
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t cix = 0; cix < d; ++cix) aug[r][cix] = col[cix][r];
        aug[r][d] = alpha.coeffs[r];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t cix = 0; cix < d && row < d; ++cix) {
        std::size_t sel = row;
        while (sel < d && aug[sel][cix] == 0) ++sel;
        if (sel == d) continue;
        std::swap(aug[sel], aug[row]);
        word ip = m.inv(aug[row][cix]);
        for (std::size_t k = cix; k <= d; ++k) aug[row][k] = m.mul(aug[row][k], ip);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == row || aug[r][cix] == 0) continue;
            word f = aug[r][cix];
            for (std::size_t k = cix; k <= d; ++k)
                aug[r][k] = m.sub(aug[r][k], m.mul(f, aug[row][k]));
        }
        pivot_col.push_back(cix);
        ++row;
    }
    for (std::size_t r = row; r < d; ++r)
        if (aug[r][d] != 0) throw std::logic_error("naive_solve: inconsistent system");

    TowerElement delta = zero_element(t, 0);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) delta.coeffs[pivot_col[r]] = aug[r][d];
    // canonical root: zero constant coordinate
    word c0 = delta.coeffs[0];
    if (c0) delta = sub(delta, scalar_element(t, 0, c0));

    if (!(sub(pow(delta, m.p), delta) == alpha))
        throw std::logic_error("naive_solve: verification failed");
    return delta;
}

TowerElement approximate_as(const TowerElement& eta) {
    const TowerDescriptor& t = *eta.tower;
    const word p = t.p();
    std::uint32_t i = eta.level;
    if (i == 0) throw std::invalid_argument("approximate_as: level must be >= 1");
    const LevelData& below = t.levels[i - 1];
    if (below.beta_big.size() < i)
        throw std::invalid_argument("approximate_as: beta tables missing");

    TowerElement beta;
    beta.tower = &t;
    beta.level = i - 1;
    beta.coeffs = below.beta_big[i - 1]; // PTr_{p^{i-1} d}(gamma_{i-1}), a nonzero scalar
    TowerElement beta_inv = inv(beta);

    BivariateElement w = push_down(eta);
    if (!is_zero(w.parts[std::size_t(p) - 1]))
        throw std::invalid_argument("approximate_as: eta is not in the image of the map");

    std::vector<TowerElement> betapow(p + 1, one_element(t, i - 1));
    for (std::size_t s = 1; s <= p; ++s) betapow[s] = mul(betapow[s - 1], beta);

    const PrimeModulus& m = t.mod;
    std::vector<TowerElement> mu(p, zero_element(t, i - 1));
    for (word j = p - 1; j >= 1; --j) {
        TowerElement rhs = w.parts[std::size_t(j) - 1];
        for (word h = j + 1; h < p; ++h) {
            word bc = binom_mod(h, j - 1, m);
            if (!bc) continue;
            TowerElement term = mul(mu[std::size_t(h)], betapow[std::size_t(h - j + 1)]);
            rhs = sub(rhs, mul_scalar(term, bc));
        }
        word jinv = m.inv(j % m.p);
        mu[std::size_t(j)] = mul_scalar(mul(rhs, beta_inv), jinv);
    }

    BivariateElement out = bivariate_zero(t, i);
    out.parts = std::move(mu);
    return lift_up(out);
}

TowerElement solve_artin_schreier(const TowerElement& alpha) {
    const TowerDescriptor& t = *alpha.tower;
    if (absolute_trace(alpha) != 0)
        throw std::domain_error("solve_artin_schreier: Tr(alpha) != 0, no solution exists");
    if (alpha.level == 0) return naive_solve(alpha);

    TowerElement eta = pseudotrace(alpha, alpha.level - 1);
    TowerElement mu = approximate_as(eta);
    TowerElement rest = add(sub(alpha, pow(mu, t.p())), mu);

    BivariateElement w = push_down(rest);
    for (std::size_t j = 1; j < t.p(); ++j)
        if (!is_zero(w.parts[j]))
            throw std::logic_error("solve_artin_schreier: residual not in the lower level");
    TowerElement delta = solve_artin_schreier(w.parts[0]);

    BivariateElement lift = bivariate_zero(t, alpha.level);
    lift.parts[0] = delta;
    return add(mu, lift_up(lift));
}

TowerElement apply_isomorphism(const GeneralTower& g, const GeneralElement& v) {
    const TowerDescriptor& t = *g.tower;
    if (v.tower != &t) throw std::invalid_argument("apply_isomorphism: tower mismatch");
    if (v.level >= g.images.size())
        throw std::invalid_argument("apply_isomorphism: images not computed up to this level");
    if (v.level == 0) return make_element(t, 0, v.coeffs);

    const TowerPoly spd = to_poly(g.images_pd[v.level]);
    TowerElement gamma = gamma_of(t, v.level - 1);

    TowerPoly acc = tp_zero(t, v.level - 1);
    for (std::size_t j = t.p(); j-- > 0;) {
        if (!acc.is_zero()) acc = reduce_artin_schreier(mul(acc, spd), gamma);
        TowerElement tj = apply_isomorphism(g, general_slice(v, j));
        if (acc.c.empty()) acc.c.push_back(std::move(tj));
        else acc.c[0] = add(acc.c[0], tj);
        acc.normalize();
    }
    return lift_up(to_bivariate(t, v.level, acc));
}

GeneralElement apply_inverse(const GeneralTower& g, const TowerElement& v) {
    const TowerDescriptor& t = *g.tower;
    if (v.tower != &t) throw std::invalid_argument("apply_inverse: tower mismatch");
    if (v.level >= g.images.size())
        throw std::invalid_argument("apply_inverse: images not computed up to this level");
    if (v.level == 0) return make_general(t, 0, v.coeffs);

    BivariateElement parts = push_down(v);
    TowerPoly w = to_poly(parts);
    TowerPoly b = to_poly(g.images_pd[v.level]);
    TowerElement gamma = gamma_of(t, v.level - 1);
    TowerPoly A = find_parameterization(w, b, gamma);

    GeneralElement out = general_zero(t, v.level);
    std::size_t msz = t.level_size(v.level - 1);
    for (std::size_t j = 0; j < t.p(); ++j) {
        GeneralElement slice = apply_inverse(g, tp_coeff(A, j));
        for (std::size_t a = 0; a < msz; ++a) out.coeffs[j * msz + a] = slice.coeffs[a];
    }
    return out;
}

void compute_images(GeneralTower& g) {
    const TowerDescriptor& t = *g.tower;
    std::size_t k = g.height();
    if (t.height() < k)
        throw std::invalid_argument("compute_images: primitive tower is too short");

    g.images.clear();
    g.images_pd.assign(k + 1, BivariateElement{});
    g.images.push_back(generator_element(t, 0));

    for (std::uint32_t i = 1; i <= k; ++i) {
        TowerElement alpha = apply_isomorphism(g, g.generators[i - 1]);
        if (absolute_trace(alpha) == 0)
            throw std::invalid_argument(
                "compute_images: generator " + std::to_string(i - 1) +
                " has zero trace; the sequence does not define a tower of fields");
        TowerElement up = embed_up(alpha);
        TowerElement s = solve_artin_schreier(up);
        if (!(sub(pow(s, t.p()), s) == up))
            throw std::logic_error("compute_images: image verification failed");
        g.images_pd[i] = push_down(s);
        g.images.push_back(std::move(s));
    }
}

} // namespace astower
