#include "astower/embedding.hpp"

#include <algorithm>
#include <stdexcept>

namespace astower {

namespace {

std::size_t upow(word base, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= std::size_t(base);
    return r;
}

// n = floor(log_p(sz - 1)), c = (sz - 1) div p^n for sz >= 2; 1 <= c < p.
void slicing_params(std::size_t sz, word p, std::size_t& n, std::size_t& c, std::size_t& pn) {
    n = 0;
    pn = 1;
    while (pn <= (sz - 1) / std::size_t(p)) { pn *= std::size_t(p); ++n; }
    c = (sz - 1) / pn;
}

word block_at(const std::vector<word>& v, std::size_t i) { return i < v.size() ? v[i] : 0; }

} // namespace

BivariateElement make_bivariate(const TowerDescriptor& t, std::uint32_t level,
                                std::vector<TowerElement> parts) {
    if (level == 0 || level > t.height())
        throw std::invalid_argument("make_bivariate: level out of range");
    if (parts.size() != t.p())
        throw std::invalid_argument("make_bivariate: need exactly p parts");
    for (const TowerElement& e : parts)
        if (e.tower != &t || e.level != level - 1)
            throw std::invalid_argument("make_bivariate: parts must live at level-1");
    BivariateElement out;
    out.tower = &t;
    out.level = level;
    out.parts = std::move(parts);
    return out;
}

BivariateElement bivariate_zero(const TowerDescriptor& t, std::uint32_t level) {
    if (level == 0 || level > t.height())
        throw std::invalid_argument("bivariate_zero: level out of range");
    std::vector<TowerElement> parts(std::size_t(t.p()), zero_element(t, level - 1));
    return make_bivariate(t, level, std::move(parts));
}

BivArray mulmod(const BivArray& a, std::size_t k, std::size_t n, word p, PrimeModulus m) {
    if (n == 0) throw std::invalid_argument("mulmod: n must be >= 1");
    if (a.blocks.size() != p) throw std::invalid_argument("mulmod: need p blocks");
    std::size_t pn1 = upow(p, n - 1);
    for (const auto& b : a.blocks)
        if (b.size() > k) throw std::invalid_argument("mulmod: Y degree bound violated");

    std::size_t out_len = k + pn1;
    BivArray out;
    out.blocks.assign(p, std::vector<word>(out_len, 0));

    // R_n * a_b for every block
    for (std::size_t b = 0; b < p; ++b) {
        const std::vector<word>& in = a.blocks[b];
        std::size_t off = 1;
        for (std::size_t j = 0; j < n; ++j, off *= std::size_t(p))
            for (std::size_t t = 0; t < in.size(); ++t)
                out.blocks[b][t + off] = m.add(out.blocks[b][t + off], in[t]);
    }
    // out_0 += Y * a_{p-1}
    for (std::size_t t = 0; t < a.blocks[p - 1].size(); ++t)
        out.blocks[0][t + 1] = m.add(out.blocks[0][t + 1], a.blocks[p - 1][t]);
    // out_1 += a_0 + a_{p-1}
    for (std::size_t t = 0; t < a.blocks[0].size(); ++t)
        out.blocks[1][t] = m.add(out.blocks[1][t], a.blocks[0][t]);
    for (std::size_t t = 0; t < a.blocks[p - 1].size(); ++t)
        out.blocks[1][t] = m.add(out.blocks[1][t], a.blocks[p - 1][t]);
    // out_b += a_{b-1}, 2 <= b <= p-1
    for (std::size_t b = 2; b < p; ++b)
        for (std::size_t t = 0; t < a.blocks[b - 1].size(); ++t)
            out.blocks[b][t] = m.add(out.blocks[b][t], a.blocks[b - 1][t]);
    return out;
}

BivArray mulmod_transposed(const BivArray& l, std::size_t k, std::size_t n, word p,
                           PrimeModulus m) {
    if (n == 0) throw std::invalid_argument("mulmod_transposed: n must be >= 1");
    if (l.blocks.size() != p) throw std::invalid_argument("mulmod_transposed: need p blocks");
    std::size_t pn1 = upow(p, n - 1);
    for (const auto& b : l.blocks)
        if (b.size() > k + pn1)
            throw std::invalid_argument("mulmod_transposed: shape mismatch");

    BivArray out;
    out.blocks.assign(p, std::vector<word>(k, 0));
    // m'^T on every block
    for (std::size_t b = 0; b < p; ++b) {
        std::size_t off = 1;
        for (std::size_t j = 0; j < n; ++j, off *= std::size_t(p))
            for (std::size_t t = 0; t < k; ++t)
                out.blocks[b][t] = m.add(out.blocks[b][t], block_at(l.blocks[b], t + off));
    }
    // M_b += m_0^T L_{b+1} for 0 <= b <= p-2
    for (std::size_t b = 0; b + 1 < p; ++b)
        for (std::size_t t = 0; t < k; ++t)
            out.blocks[b][t] = m.add(out.blocks[b][t], block_at(l.blocks[b + 1], t));
    // M_{p-1} += m_1^T L_0 + m_0^T L_1
    for (std::size_t t = 0; t < k; ++t) {
        word v = m.add(block_at(l.blocks[0], t + 1), block_at(l.blocks[1], t));
        out.blocks[p - 1][t] = m.add(out.blocks[p - 1][t], v);
    }
    return out;
}

BivArray push_down_rec(const std::vector<word>& v, std::size_t c, std::size_t n, word p,
                       PrimeModulus m) {
    if (c == 0 || c >= p) throw std::invalid_argument("push_down_rec: need 1 <= c < p");
    std::size_t pn = upow(p, n);
    if (v.size() > (c + 1) * pn)
        throw std::invalid_argument("push_down_rec: deg V >= (c+1) p^n");
    BivArray out;
    if (n == 0) {
        out.blocks.assign(p, std::vector<word>(1, 0));
        for (std::size_t b = 0; b < v.size(); ++b) out.blocks[b][0] = v[b];
        return out;
    }
    std::size_t pn1 = pn / std::size_t(p);
    std::size_t k = (c + 1) * pn1;

    out.blocks.assign(p, std::vector<word>(k, 0));
    bool empty = true;
    for (std::size_t j = c + 1; j-- > 0;) {
        if (!empty) {
            BivArray next = mulmod(out, k, n, p, m);
            for (std::size_t b = 0; b < p; ++b) {
                next.blocks[b].resize(k); // deg_Y stays below k throughout the Horner loop
                out.blocks[b] = std::move(next.blocks[b]);
            }
        }
        std::size_t lo = j * pn, hi = std::min(v.size(), (j + 1) * pn);
        if (lo < hi) {
            std::vector<word> slice(v.begin() + lo, v.begin() + hi);
            BivArray wj = push_down_rec(slice, p - 1, n - 1, p, m);
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t t = 0; t < wj.blocks[b].size(); ++t)
                    out.blocks[b][t] = m.add(out.blocks[b][t], wj.blocks[b][t]);
            empty = false;
        }
    }
    return out;
}

std::vector<word> push_down_rec_transposed(const BivArray& l, std::size_t c, std::size_t n,
                                           word p, PrimeModulus m) {
    if (c == 0 || c >= p)
        throw std::invalid_argument("push_down_rec_transposed: need 1 <= c < p");
    if (l.blocks.size() != p)
        throw std::invalid_argument("push_down_rec_transposed: need p blocks");
    if (n == 0) {
        std::vector<word> out(c + 1, 0);
        for (std::size_t b = 0; b <= c; ++b) out[b] = block_at(l.blocks[b], 0);
        return out;
    }
    std::size_t pn = upow(p, n), pn1 = pn / std::size_t(p);
    std::size_t k = (c + 1) * pn1;

    BivArray cur = l;
    for (auto& b : cur.blocks) b.resize(k, 0);

    std::vector<word> out((c + 1) * pn, 0);
    for (std::size_t j = 0; j <= c; ++j) {
        BivArray lj;
        lj.blocks.assign(p, {});
        for (std::size_t b = 0; b < p; ++b)
            lj.blocks[b].assign(cur.blocks[b].begin(), cur.blocks[b].begin() + pn1);
        std::vector<word> mj = push_down_rec_transposed(lj, p - 1, n - 1, p, m);
        std::copy(mj.begin(), mj.end(), out.begin() + j * pn);
        if (j < c) cur = mulmod_transposed(cur, k, n, p, m);
    }
    return out;
}

namespace {

std::size_t eval_stride(const TowerDescriptor& t, std::uint32_t level) {
    return t.levels[level].kind == GeneratorKind::linear ? 1 : 2 * std::size_t(t.p()) - 1;
}

PrimePoly coeffs_to_poly(const TowerDescriptor& t, const std::vector<word>& v) {
    PrimePoly f(t.mod);
    f.c = v;
    f.normalize();
    return f;
}

} // namespace

BivariateElement push_down(const TowerElement& v) {
    if (v.level == 0) throw std::invalid_argument("push_down: level must be >= 1");
    const TowerDescriptor& t = *v.tower;
    word p = t.p();
    std::size_t sz = t.level_size(v.level);
    std::size_t n, c, pn;
    slicing_params(sz, p, n, c, pn);

    BivArray w = push_down_rec(v.coeffs, c, n, p, t.mod);

    std::size_t e = eval_stride(t, v.level);
    const Reducer& red = t.levels[v.level - 1].red;
    std::vector<TowerElement> parts;
    parts.reserve(p);
    for (std::size_t b = 0; b < p; ++b) {
        const std::vector<word>& yb = w.blocks[b];
        std::vector<word> z(yb.empty() ? 1 : e * (yb.size() - 1) + 1, 0);
        for (std::size_t a = 0; a < yb.size(); ++a) z[e * a] = yb[a];
        PrimePoly r = red.reduce(coeffs_to_poly(t, z));
        TowerElement part = zero_element(t, v.level - 1);
        for (std::size_t i = 0; i < r.c.size(); ++i) part.coeffs[i] = r.c[i];
        parts.push_back(std::move(part));
    }
    return make_bivariate(t, v.level, std::move(parts));
}

std::vector<word> push_down_transposed(const TowerDescriptor& t, std::uint32_t level,
                                       const std::vector<std::vector<word>>& ell) {
    if (level == 0 || level > t.height())
        throw std::invalid_argument("push_down_transposed: level out of range");
    word p = t.p();
    std::size_t sz = t.level_size(level);
    std::size_t msz = t.level_size(level - 1);
    if (ell.size() != p) throw std::invalid_argument("push_down_transposed: need p blocks");
    for (const auto& b : ell)
        if (b.size() != msz)
            throw std::invalid_argument("push_down_transposed: block length != p^{i-1} d");

    std::size_t n, c, pn;
    slicing_params(sz, p, n, c, pn);
    std::size_t ylen = n == 0 ? 1 : (c + 1) * (pn / std::size_t(p));
    std::size_t e = eval_stride(t, level);
    std::size_t ext = e * (ylen - 1) + 1;

    const Reducer& red = t.levels[level - 1].red;
    BivArray l;
    l.blocks.assign(p, {});
    for (std::size_t b = 0; b < p; ++b) {
        std::vector<word> s = red.extend_sequence(ell[b], std::max(ext, msz));
        l.blocks[b].resize(ylen);
        for (std::size_t a = 0; a < ylen; ++a) l.blocks[b][a] = s[e * a];
    }
    std::vector<word> out = push_down_rec_transposed(l, c, n, p, t.mod);
    out.resize(sz);
    return out;
}

std::vector<word> trace_row(const TowerDescriptor& t, std::uint32_t level) {
    if (level == 0) throw std::invalid_argument("trace_row: level must be >= 1");
    std::vector<word> s = t.levels[level - 1].trace;
    for (word& w : s) w = t.mod.neg(w);
    return s;
}

LevelTables precompute_level_tables(const TowerDescriptor& t, std::uint32_t level) {
    if (level == 0) throw std::invalid_argument("precompute_level_tables: level must be >= 1");
    const PrimePoly& q = t.levels[level].q;
    PrimePoly dq = derivative(q);
    if (dq.is_zero())
        throw std::runtime_error("precompute_level_tables: Q_i' = 0, tower corrupt");
    XgcdResult x = xgcd(dq, q);
    if (x.g.degree() != 0)
        throw std::runtime_error("precompute_level_tables: Q_i not separable");
    return {trace_row(t, level), x.u};
}

TowerElement lift_up(const BivariateElement& w) {
    const TowerDescriptor& t = *w.tower;
    std::uint32_t i = w.level;
    word p = t.p();
    std::size_t sz = t.level_size(i);
    if (t.levels[i].dqinv.is_zero())
        throw std::invalid_argument("lift_up: level tables missing");

    // Values of (w . Tr) on D_i: rows b < p-1 of S_i vanish, so this is p
    // univariate transposed products against row p-1.
    std::vector<word> s = trace_row(t, i);
    const Reducer& red_lo = t.levels[i - 1].red;
    std::vector<std::vector<word>> ell(p);
    for (std::size_t b = 0; b < p; ++b) {
        TowerElement u = w.parts[std::size_t(p) - 1 - b];
        if (b + 1 == std::size_t(p)) u = add(u, w.parts[std::size_t(p) - 1]);
        ell[b] = red_lo.transposed_mul(coeffs_to_poly(t, u.coeffs), s);
    }

    std::vector<word> mvals = push_down_transposed(t, i, ell);

    PrimePoly M = coeffs_to_poly(t, mvals);
    PrimePoly N = mul(M, rev(t.levels[i].q, sz));
    if (N.c.size() > sz) N.c.resize(sz);
    N.normalize();
    PrimePoly V = t.levels[i].red.reduce(mul(rev(N, sz - 1), t.levels[i].dqinv));

    TowerElement out = zero_element(t, i);
    for (std::size_t a = 0; a < V.c.size(); ++a) out.coeffs[a] = V.c[a];
    return out;
}

TowerElement embed_up(const TowerElement& v) {
    const TowerDescriptor& t = *v.tower;
    if (v.level + 1 > t.height())
        throw std::invalid_argument("embed_up: already at the top level");
    BivariateElement w = bivariate_zero(t, v.level + 1);
    w.parts[0] = v;
    return lift_up(w);
}

TowerPoly to_poly(const BivariateElement& w) {
    TowerPoly out;
    out.tower = w.tower;
    out.level = w.level - 1;
    out.c = w.parts;
    out.normalize();
    return out;
}

BivariateElement to_bivariate(const TowerDescriptor& t, std::uint32_t level, const TowerPoly& f) {
    if (f.level != level - 1)
        throw std::invalid_argument("to_bivariate: coefficients must live at level-1");
    if (f.c.size() > t.p()) throw std::invalid_argument("to_bivariate: degree must be < p");
    BivariateElement out = bivariate_zero(t, level);
    for (std::size_t j = 0; j < f.c.size(); ++j) out.parts[j] = f.c[j];
    return out;
}

} // namespace astower
