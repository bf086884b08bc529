#include "astower/oracle.hpp"

#include <stdexcept>
#include <string>

namespace astower::oracle {

namespace {

void guard(const MvContext& c, std::uint32_t level, const char* where) {
    if (c.size(level) > kOracleSizeGuard)
        throw std::invalid_argument(std::string(where) + ": oracle size guard exceeded");
    if (level > 0 && c.gamma.size() < level)
        throw std::invalid_argument(std::string(where) + ": relation data missing");
}

// Schoolbook product mod Q_0, independent of the library's kernels.
std::vector<word> base_mulmod(const TowerDescriptor& t, const std::vector<word>& a,
                              const std::vector<word>& b) {
    const PrimeModulus& m = t.mod;
    const PrimePoly& q0 = t.levels[0].q;
    std::size_t d = t.d;
    std::vector<word> prod(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < d; ++j)
            prod[i + j] = m.add(prod[i + j], m.mul(a[i], b[j]));
    }
    for (std::size_t k = prod.size(); k-- > d;) {
        word top = prod[k];
        if (!top) continue;
        prod[k] = 0;
        for (std::size_t j = 0; j < d; ++j)
            prod[k - d + j] = m.sub(prod[k - d + j], m.mul(top, q0.c[j]));
    }
    prod.resize(d);
    return prod;
}

bool all_zero(const word* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (v[i]) return false;
    return true;
}

// out += a * b, raw slices of length p^level d; one scratch buffer per node.
void mv_mul_acc(const MvContext& c, std::uint32_t level, const word* a, const word* b,
                word* out) {
    const TowerDescriptor& t = *c.tower;
    const PrimeModulus& m = t.mod;
    std::size_t n = t.level_size(level);
    if (all_zero(a, n) || all_zero(b, n)) return;

    if (level == 0) {
        std::vector<word> prod =
            base_mulmod(t, std::vector<word>(a, a + n), std::vector<word>(b, b + n));
        for (std::size_t x = 0; x < n; ++x) out[x] = m.add(out[x], prod[x]);
        return;
    }

    std::size_t p = std::size_t(t.p());
    std::size_t msz = t.level_size(level - 1);

    // Schoolbook in the top variable, then reduce x^p = x + gamma.
    std::vector<word> prod((2 * p - 1) * msz, 0);
    for (std::size_t i = 0; i < p; ++i) {
        if (all_zero(a + i * msz, msz)) continue;
        for (std::size_t j = 0; j < p; ++j)
            mv_mul_acc(c, level - 1, a + i * msz, b + j * msz, prod.data() + (i + j) * msz);
    }
    const std::vector<word>& gam = c.gamma[level - 1];
    for (std::size_t tdeg = 2 * p - 2; tdeg >= p; --tdeg) {
        word* cur = prod.data() + tdeg * msz;
        if (all_zero(cur, msz)) continue;
        word* lin = prod.data() + (tdeg - p + 1) * msz;
        for (std::size_t x = 0; x < msz; ++x) lin[x] = m.add(lin[x], cur[x]);
        mv_mul_acc(c, level - 1, cur, gam.data(), prod.data() + (tdeg - p) * msz);
    }
    for (std::size_t x = 0; x < p * msz; ++x) out[x] = m.add(out[x], prod[x]);
}

} // namespace

MvContext primitive_context(const TowerDescriptor& t, std::uint32_t up_to_level) {
    MvContext c;
    c.tower = &t;
    for (std::uint32_t j = 0; j < up_to_level; ++j) {
        // gamma_j = x_j (linear) or x_j^{2p-1} (power) on B_j
        MvElement g = mv_generator(c, j);
        if (generator_kind(j + 1, t.p(), t.d) == GeneratorKind::power)
            g = mv_pow(c, g, 2 * t.p() - 1);
        c.gamma.push_back(std::move(g.coeffs));
    }
    return c;
}

MvContext general_context(const GeneralTower& g) {
    MvContext c;
    c.tower = g.tower;
    for (const GeneralElement& gen : g.generators) c.gamma.push_back(gen.coeffs);
    return c;
}

MvElement mv_zero(const MvContext& c, std::uint32_t level) {
    guard(c, level, "mv_zero");
    return {level, std::vector<word>(c.size(level), 0)};
}

MvElement mv_scalar(const MvContext& c, std::uint32_t level, word v) {
    MvElement out = mv_zero(c, level);
    out.coeffs[0] = c.tower->mod.reduce(v);
    return out;
}

MvElement mv_from(const MvContext& c, std::uint32_t level, std::vector<word> coeffs) {
    guard(c, level, "mv_from");
    if (coeffs.size() != c.size(level))
        throw std::invalid_argument("mv_from: coefficient count != p^level * d");
    for (word& w : coeffs) w = c.tower->mod.reduce(w);
    return {level, std::move(coeffs)};
}

MvElement mv_generator(const MvContext& c, std::uint32_t level) {
    MvElement out = mv_zero(c, level);
    if (level == 0) {
        if (c.tower->d == 1)
            out.coeffs[0] = c.tower->mod.neg(c.tower->levels[0].q.c[0]);
        else
            out.coeffs[1] = 1;
    } else {
        out.coeffs[c.size(level - 1)] = 1;
    }
    return out;
}

bool mv_is_zero(const MvElement& a) {
    for (word w : a.coeffs)
        if (w) return false;
    return true;
}

MvElement mv_add(const MvContext& c, const MvElement& a, const MvElement& b) {
    if (a.level != b.level) throw std::invalid_argument("mv_add: level mismatch");
    MvElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = c.tower->mod.add(out.coeffs[i], b.coeffs[i]);
    return out;
}

MvElement mv_sub(const MvContext& c, const MvElement& a, const MvElement& b) {
    if (a.level != b.level) throw std::invalid_argument("mv_sub: level mismatch");
    MvElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = c.tower->mod.sub(out.coeffs[i], b.coeffs[i]);
    return out;
}

MvElement mv_mul(const MvContext& c, const MvElement& a, const MvElement& b) {
    if (a.level != b.level) throw std::invalid_argument("mv_mul: level mismatch");
    guard(c, a.level, "mv_mul");
    MvElement out = mv_zero(c, a.level);
    mv_mul_acc(c, a.level, a.coeffs.data(), b.coeffs.data(), out.coeffs.data());
    return out;
}

MvElement mv_mul_scalar(const MvContext& c, const MvElement& a, word s) {
    s = c.tower->mod.reduce(s);
    MvElement out = a;
    for (word& w : out.coeffs) w = c.tower->mod.mul(w, s);
    return out;
}

MvElement mv_pow(const MvContext& c, const MvElement& a, word e) {
    MvElement acc = mv_scalar(c, a.level, 1);
    MvElement base = a;
    while (e) {
        if (e & 1) acc = mv_mul(c, acc, base);
        e >>= 1;
        if (e) base = mv_mul(c, base, base);
    }
    return acc;
}

MvElement naive_frobenius(const MvContext& c, const MvElement& a, word n) {
    MvElement out = a;
    for (word i = 0; i < n; ++i) out = mv_pow(c, out, c.tower->p());
    return out;
}

MvElement naive_pseudotrace(const MvContext& c, const MvElement& a, word n) {
    MvElement acc = mv_zero(c, a.level);
    MvElement cur = a;
    for (word i = 0; i < n; ++i) {
        acc = mv_add(c, acc, cur);
        if (i + 1 < n) cur = mv_pow(c, cur, c.tower->p());
    }
    return acc;
}

word trace_of_multiplication(const MvContext& c, const MvElement& a) {
    const PrimeModulus& m = c.tower->mod;
    std::size_t n = c.size(a.level);
    word tr = 0;
    for (std::size_t e = 0; e < n; ++e) {
        MvElement unit = mv_zero(c, a.level);
        unit.coeffs[e] = 1;
        MvElement prod = mv_mul(c, a, unit);
        tr = m.add(tr, prod.coeffs[e]);
    }
    return tr;
}

MvMatrix frobenius_matrix(const MvContext& c, std::uint32_t level) {
    guard(c, level, "frobenius_matrix");
    std::size_t n = c.size(level);
    MvMatrix m;
    m.level = level;
    m.cols.reserve(n);
    for (std::size_t e = 0; e < n; ++e) {
        MvElement unit = mv_zero(c, level);
        unit.coeffs[e] = 1;
        m.cols.push_back(mv_pow(c, unit, c.tower->p()).coeffs);
    }
    return m;
}

MvMatrix power_basis_matrix(const MvContext& c, std::uint32_t level) {
    guard(c, level, "power_basis_matrix");
    std::size_t n = c.size(level);
    MvMatrix m;
    m.level = level;
    m.cols.reserve(n);
    MvElement x = mv_generator(c, level);
    MvElement pw = mv_scalar(c, level, 1);
    for (std::size_t a = 0; a < n; ++a) {
        m.cols.push_back(pw.coeffs);
        if (a + 1 < n) pw = mv_mul(c, pw, x);
    }
    return m;
}

MvElement apply_matrix(const MvContext& c, const MvMatrix& m, const std::vector<word>& v) {
    const PrimeModulus& mod = c.tower->mod;
    std::size_t n = c.size(m.level);
    if (v.size() != n || m.cols.size() != n)
        throw std::invalid_argument("apply_matrix: shape mismatch");
    MvElement out = mv_zero(c, m.level);
    bool small_p = mod.p < (word(1) << 21) && n <= (std::size_t(1) << 21);
    if (small_p) {
        for (std::size_t e = 0; e < n; ++e) {
            if (!v[e]) continue;
            const std::vector<word>& col = m.cols[e];
            for (std::size_t r = 0; r < n; ++r) out.coeffs[r] += v[e] * col[r];
        }
        for (word& w : out.coeffs) w %= mod.p;
    } else {
        for (std::size_t e = 0; e < n; ++e) {
            if (!v[e]) continue;
            const std::vector<word>& col = m.cols[e];
            for (std::size_t r = 0; r < n; ++r)
                out.coeffs[r] = mod.add(out.coeffs[r], mod.mul(v[e], col[r]));
        }
    }
    return out;
}

MvElement basis_convert(const MvContext& c, const TowerElement& a) {
    guard(c, a.level, "basis_convert");
    MvElement x = mv_generator(c, a.level);
    MvElement pw = mv_scalar(c, a.level, 1);
    MvElement acc = mv_zero(c, a.level);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i]) acc = mv_add(c, acc, mv_mul_scalar(c, pw, a.coeffs[i]));
        if (i + 1 < a.coeffs.size()) pw = mv_mul(c, pw, x);
    }
    return acc;
}

MvElement convert_bivariate(const MvContext& c, const BivariateElement& w) {
    guard(c, w.level, "convert_bivariate");
    MvElement x = mv_generator(c, w.level);
    MvElement acc = mv_zero(c, w.level);
    MvElement pw = mv_scalar(c, w.level, 1);
    std::size_t msz = c.size(w.level - 1);
    for (std::size_t j = 0; j < w.parts.size(); ++j) {
        MvElement part = mv_zero(c, w.level);
        MvElement low = basis_convert(c, w.parts[j]);
        for (std::size_t t = 0; t < msz; ++t) part.coeffs[t] = low.coeffs[t];
        acc = mv_add(c, acc, mv_mul(c, part, pw));
        if (j + 1 < w.parts.size()) pw = mv_mul(c, pw, x);
    }
    return acc;
}

MvElement eval_poly_at_generator(const MvContext& c, const PrimePoly& q, std::uint32_t level) {
    guard(c, level, "eval_poly_at_generator");
    MvElement x = mv_generator(c, level);
    MvElement acc = mv_zero(c, level);
    for (std::size_t i = q.c.size(); i-- > 0;) {
        acc = mv_mul(c, acc, x);
        if (q.c[i]) acc = mv_add(c, acc, mv_scalar(c, level, q.c[i]));
    }
    return acc;
}

} // namespace astower::oracle
