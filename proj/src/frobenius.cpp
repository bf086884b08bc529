#include "astower/frobenius.hpp"

#include <stdexcept>
#include <string>

#include "astower/tower_poly.hpp"

namespace astower {

namespace {

// Shape of an admissible exponent: small (n < d) or p^j d.
struct ExponentShape {
    bool big = false;
    std::size_t j = 0;
};

ExponentShape classify(const TowerDescriptor& t, word n) {
    if (n == 0) throw std::invalid_argument("frobenius: exponent must be positive");
    if (n < t.d) return {false, 0};
    if (n % t.d == 0) {
        word q = n / t.d;
        std::size_t j = 0;
        while (q % t.p() == 0) { q /= t.p(); ++j; }
        if (q == 1) return {true, j};
    }
    throw std::invalid_argument("frobenius: exponent must satisfy n < d or n = p^j d");
}

TowerElement beta_for(const TowerDescriptor& t, std::uint32_t level, word n,
                      const ExponentShape& shape) {
    const LevelData& L = t.levels[level];
    const std::vector<word>* coeffs = nullptr;
    if (shape.big) {
        if (shape.j < L.beta_big.size()) coeffs = &L.beta_big[shape.j];
    } else {
        auto it = L.beta_little.find(n);
        if (it != L.beta_little.end()) coeffs = &it->second;
    }
    if (!coeffs)
        throw std::invalid_argument(
            "frobenius: beta table missing for exponent " + std::to_string(n) +
            " at level " + std::to_string(level) +
            " (tower built without frobenius tables, or n outside N(d))");
    TowerElement out;
    out.tower = &t;
    out.level = level;
    out.coeffs = *coeffs;
    return out;
}

TowerElement gamma_of(const TowerDescriptor& t, std::uint32_t level) {
    const LevelData& L = t.levels[level];
    if (L.gamma.empty())
        throw std::logic_error("frobenius: generator image missing at level " +
                               std::to_string(level));
    TowerElement out;
    out.tower = &t;
    out.level = level;
    out.coeffs = L.gamma;
    return out;
}

// X^{p^n} mod Q_0 by composition doubling.
PrimePoly frobenius_poly_base(const TowerDescriptor& t, word n) {
    const PrimePoly& q0 = t.levels[0].q;
    PrimePoly xp = powmod(PrimePoly::x(t.mod), t.p(), q0);
    std::vector<PrimePoly> pow2{xp};
    PrimePoly acc(t.mod);
    bool first = true;
    for (std::size_t j = 0; n; ++j, n >>= 1) {
        if (j >= pow2.size()) pow2.push_back(compose_mod(pow2[j - 1], pow2[j - 1], q0));
        if (!(n & 1)) continue;
        acc = first ? pow2[j] : compose_mod(acc, pow2[j], q0);
        first = false;
    }
    return acc;
}

TowerElement frobenius_shaped(const TowerElement& v, word n, const ExponentShape& shape) {
    const TowerDescriptor& t = *v.tower;
    if (shape.big && v.level <= shape.j) return v;
    if (v.level == 0) {
        PrimePoly f(t.mod);
        f.c = v.coeffs;
        f.normalize();
        PrimePoly img = compose_mod(f, frobenius_poly_base(t, n), t.levels[0].q);
        TowerElement out = zero_element(t, 0);
        for (std::size_t a = 0; a < img.c.size(); ++a) out.coeffs[a] = img.c[a];
        return out;
    }

    BivariateElement w = push_down(v);
    TowerElement beta = beta_for(t, v.level - 1, n, shape);
    TowerElement gamma = gamma_of(t, v.level - 1);

    // x_i + beta, as a polynomial in x_i over U_{i-1}
    TowerPoly shift = tp_from({beta, one_element(t, v.level - 1)});
    TowerPoly acc = tp_zero(t, v.level - 1);
    for (std::size_t h = t.p(); h-- > 0;) {
        if (!acc.is_zero()) acc = reduce_artin_schreier(mul(acc, shift), gamma);
        TowerElement th = frobenius_shaped(w.parts[h], n, shape);
        if (acc.c.empty()) acc.c.push_back(std::move(th));
        else acc.c[0] = add(acc.c[0], th);
        acc.normalize();
    }
    return lift_up(to_bivariate(t, v.level, acc));
}

} // namespace

TowerElement frobenius(const TowerElement& v, word n) {
    if (n == 0) return v;
    return frobenius_shaped(v, n, classify(*v.tower, n));
}

namespace {

// Instrumented halving recursion; records every pseudotrace it produces.
TowerElement lpt_rec(const TowerElement& v, word n,
                     std::map<word, std::vector<word>>* record) {
    if (n == 1) {
        if (record) (*record)[1] = v.coeffs;
        return v;
    }
    word m = n / 2;
    TowerElement t = lpt_rec(v, m, record);
    t = add(t, frobenius(t, m));
    if (record) (*record)[2 * m] = t.coeffs;
    if (n % 2) {
        // PTr_n = PTr_{n-1} + v^{p^{n-1}}
        t = add(t, frobenius(v, n - 1));
        if (record) (*record)[n] = t.coeffs;
    }
    return t;
}

} // namespace

TowerElement little_pseudotrace(const TowerElement& v, word n) {
    if (n == 0 || n > v.tower->d)
        throw std::invalid_argument("little_pseudotrace: need 1 <= n <= d");
    return lpt_rec(v, n, nullptr);
}

TowerElement pseudotrace(const TowerElement& v, std::size_t j) {
    const TowerDescriptor& t = *v.tower;
    if (j > v.level) throw std::invalid_argument("pseudotrace: j exceeds the level");
    if (j == 0) return little_pseudotrace(v, t.d);
    TowerElement step = pseudotrace(v, j - 1);
    TowerElement acc = step;
    word n = 1;
    for (std::size_t h = 0; h + 1 < j; ++h) n *= t.p();
    n *= t.d; // p^{j-1} d
    for (word h = 1; h < t.p(); ++h) {
        step = frobenius(step, n);
        acc = add(acc, step);
    }
    return acc;
}

TowerElement relative_trace(const TowerElement& v, std::uint32_t j) {
    const TowerDescriptor& t = *v.tower;
    if (j > v.level) throw std::invalid_argument("relative_trace: j exceeds the level");
    if (j == v.level) return v;
    word n = t.d;
    for (std::uint32_t h = 0; h < j; ++h) n *= t.p();
    std::size_t count = 1;
    for (std::uint32_t h = j; h < v.level; ++h) count *= std::size_t(t.p());
    TowerElement step = v, acc = v;
    for (std::size_t h = 1; h < count; ++h) {
        step = frobenius(step, n);
        acc = add(acc, step);
    }
    return acc;
}

std::set<word> little_exponent_set(std::size_t d) {
    std::set<word> out;
    auto rec = [&](auto&& self, word n) -> void {
        if (n == 1) { out.insert(1); return; }
        word m = n / 2;
        self(self, m);
        out.insert(2 * m);
        if (n % 2) out.insert(n);
    };
    rec(rec, word(d));
    return out;
}

void precompute_betas(TowerDescriptor& t, std::uint32_t level) {
    LevelData& L = t.levels[level];
    if (!L.beta_little.empty()) return;
    if (L.gamma.empty())
        throw std::logic_error("precompute_betas: generator image missing");

    TowerElement gamma;
    gamma.tower = &t;
    gamma.level = level;
    gamma.coeffs = L.gamma;

    std::map<word, std::vector<word>> little;
    lpt_rec(gamma, t.d, &little);
    L.beta_little = std::move(little);

    // PTr_{p^j d}(gamma) as a p-power ladder; the j-1 entry feeds the j-th.
    L.beta_big.resize(level + 1);
    L.beta_big[0] = L.beta_little.at(t.d);
    word n = t.d;
    for (std::uint32_t j = 1; j <= level; ++j) {
        TowerElement step;
        step.tower = &t;
        step.level = level;
        step.coeffs = L.beta_big[j - 1];
        TowerElement acc = step;
        for (word h = 1; h < t.p(); ++h) {
            step = frobenius(step, n);
            acc = add(acc, step);
        }
        L.beta_big[j] = acc.coeffs;
        n *= t.p();
    }
}

} // namespace astower
