#include "astower/tower_poly.hpp"

#include <stdexcept>
#include <string>

namespace astower {

namespace {

void require_compatible(const TowerPoly& a, const TowerPoly& b, const char* where) {
    if (a.tower != b.tower) throw std::invalid_argument(std::string(where) + ": tower mismatch");
    if (a.level != b.level) throw std::invalid_argument(std::string(where) + ": level mismatch");
}

} // namespace

void TowerPoly::normalize() {
    while (!c.empty() && astower::is_zero(c.back())) c.pop_back();
}

TowerPoly tp_zero(const TowerDescriptor& t, std::uint32_t level) {
    TowerPoly out;
    out.tower = &t;
    out.level = level;
    return out;
}

TowerPoly tp_one(const TowerDescriptor& t, std::uint32_t level) {
    TowerPoly out = tp_zero(t, level);
    out.c.push_back(one_element(t, level));
    return out;
}

TowerPoly tp_from(std::vector<TowerElement> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("tp_from: need at least one coefficient");
    TowerPoly out;
    out.tower = coeffs[0].tower;
    out.level = coeffs[0].level;
    for (const TowerElement& e : coeffs)
        if (e.tower != out.tower || e.level != out.level)
            throw std::invalid_argument("tp_from: coefficients at mixed levels");
    out.c = std::move(coeffs);
    out.normalize();
    return out;
}

TowerElement tp_coeff(const TowerPoly& a, std::size_t i) {
    if (i < a.c.size()) return a.c[i];
    return zero_element(*a.tower, a.level);
}

TowerPoly add(const TowerPoly& a, const TowerPoly& b) {
    require_compatible(a, b, "add");
    TowerPoly out = tp_zero(*a.tower, a.level);
    std::size_t n = std::max(a.c.size(), b.c.size());
    out.c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.c.push_back(add(tp_coeff(a, i), tp_coeff(b, i)));
    out.normalize();
    return out;
}

TowerPoly sub(const TowerPoly& a, const TowerPoly& b) {
    require_compatible(a, b, "sub");
    TowerPoly out = tp_zero(*a.tower, a.level);
    std::size_t n = std::max(a.c.size(), b.c.size());
    out.c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.c.push_back(sub(tp_coeff(a, i), tp_coeff(b, i)));
    out.normalize();
    return out;
}

TowerPoly neg(const TowerPoly& a) {
    TowerPoly out = a;
    for (TowerElement& e : out.c) e = neg(e);
    return out;
}

TowerPoly mul(const TowerPoly& a, const TowerPoly& b) {
    require_compatible(a, b, "mul");
    TowerPoly out = tp_zero(*a.tower, a.level);
    if (a.is_zero() || b.is_zero()) return out;

    const TowerDescriptor& t = *a.tower;
    const PrimeModulus& m = t.mod;
    std::size_t msize = t.level_size(a.level);
    std::size_t stride = 2 * msize - 1;

    auto pack = [&](const TowerPoly& f) {
        PrimePoly out_poly(m);
        out_poly.c.assign(f.c.size() * stride, 0);
        for (std::size_t i = 0; i < f.c.size(); ++i)
            for (std::size_t tix = 0; tix < msize; ++tix)
                out_poly.c[i * stride + tix] = f.c[i].coeffs[tix];
        out_poly.normalize();
        return out_poly;
    };
    PrimePoly prod = mul(pack(a), pack(b));

    const Reducer& red = t.levels[a.level].red;
    std::size_t nout = a.c.size() + b.c.size() - 1;
    out.c.reserve(nout);
    for (std::size_t i = 0; i < nout; ++i) {
        PrimePoly chunk(m);
        chunk.c.assign(stride, 0);
        for (std::size_t tix = 0; tix < stride; ++tix) chunk.c[tix] = prod.coeff(i * stride + tix);
        chunk.normalize();
        PrimePoly r = red.reduce(chunk);
        TowerElement e = zero_element(t, a.level);
        for (std::size_t tix = 0; tix < r.c.size(); ++tix) e.coeffs[tix] = r.c[tix];
        out.c.push_back(std::move(e));
    }
    out.normalize();
    return out;
}

TowerPoly mul_elem(const TowerPoly& a, const TowerElement& s) {
    TowerPoly out = a;
    for (TowerElement& e : out.c) e = mul(e, s);
    out.normalize();
    return out;
}

namespace {

std::pair<TowerPoly, TowerPoly> divrem_long(const TowerPoly& a, const TowerPoly& b) {
    const TowerDescriptor& t = *a.tower;
    std::size_t db = b.c.size() - 1;
    TowerPoly r = a;
    std::vector<TowerElement> q(a.c.size() - db, zero_element(t, a.level));
    for (std::size_t k = a.c.size() - db; k-- > 0;) {
        TowerElement coef = tp_coeff(r, k + db);
        q[k] = coef;
        if (is_zero(coef)) continue;
        for (std::size_t j = 0; j <= db; ++j)
            r.c[k + j] = sub(r.c[k + j], mul(coef, tp_coeff(b, j)));
    }
    r.c.resize(db, zero_element(t, a.level));
    r.normalize();
    TowerPoly qq = tp_zero(t, a.level);
    qq.c = std::move(q);
    qq.normalize();
    return {std::move(qq), std::move(r)};
}

TowerPoly series_inverse_tp(const TowerPoly& a, std::size_t prec) {
    const TowerDescriptor& t = *a.tower;
    TowerPoly g = tp_zero(t, a.level);
    g.c.push_back(inv(a.c[0]));
    std::size_t cur = 1;
    auto trunc = [&](TowerPoly f, std::size_t k) {
        if (f.c.size() > k) f.c.resize(k, zero_element(t, a.level));
        f.normalize();
        return f;
    };
    while (cur < prec) {
        cur = std::min(2 * cur, prec);
        TowerPoly fg = trunc(mul(trunc(a, cur), g), cur);
        TowerPoly e = neg(fg);
        TowerElement two = scalar_element(t, a.level, 2);
        if (e.c.empty()) e.c.push_back(zero_element(t, a.level));
        e.c[0] = add(e.c[0], two);
        e.normalize();
        g = trunc(mul(g, e), cur);
    }
    return g;
}

} // namespace

std::pair<TowerPoly, TowerPoly> divrem(const TowerPoly& a, const TowerPoly& b) {
    require_compatible(a, b, "divrem");
    if (b.is_zero()) throw std::invalid_argument("divrem: division by zero polynomial");
    if (!is_zero(sub(b.c.back(), one_element(*a.tower, a.level))))
        throw std::invalid_argument("divrem: divisor must be monic");
    if (a.c.size() < b.c.size()) return {tp_zero(*a.tower, a.level), a};

    std::size_t da = a.c.size() - 1, db = b.c.size() - 1, dq = da - db;
    if (db < 8 || dq < 8) return divrem_long(a, b);

    // Newton iteration on reversed operands.
    const TowerDescriptor& t = *a.tower;
    auto rev_tp = [&](const TowerPoly& f, std::size_t e) {
        TowerPoly out = tp_zero(t, a.level);
        out.c.assign(e + 1, zero_element(t, a.level));
        for (std::size_t i = 0; i < f.c.size(); ++i) out.c[e - i] = f.c[i];
        out.normalize();
        return out;
    };
    TowerPoly ra = rev_tp(a, da), rb = rev_tp(b, db);
    TowerPoly invb = series_inverse_tp(rb, dq + 1);
    TowerPoly qr = mul(ra, invb);
    if (qr.c.size() > dq + 1) qr.c.resize(dq + 1, zero_element(t, a.level));
    qr.c.resize(dq + 1, zero_element(t, a.level));
    std::reverse(qr.c.begin(), qr.c.end());
    TowerPoly q = tp_zero(t, a.level);
    q.c = std::move(qr.c);
    q.normalize();
    TowerPoly r = sub(a, mul(q, b));
    if (r.c.size() > db) throw std::logic_error("divrem: remainder too large");
    return {std::move(q), std::move(r)};
}

TowerXgcdResult xgcd(const TowerPoly& a, const TowerPoly& b) {
    require_compatible(a, b, "xgcd");
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("xgcd: both inputs zero");
    const TowerDescriptor& t = *a.tower;
    TowerPoly r0 = a, r1 = b;
    TowerPoly s0 = tp_one(t, a.level), s1 = tp_zero(t, a.level);
    TowerPoly t0 = tp_zero(t, a.level), t1 = tp_one(t, a.level);
    auto make_monic = [&](TowerPoly& f, TowerPoly& sf, TowerPoly& tf) {
        if (f.is_zero()) return;
        TowerElement ilc = inv(f.c.back());
        f = mul_elem(f, ilc);
        sf = mul_elem(sf, ilc);
        tf = mul_elem(tf, ilc);
    };
    make_monic(r1, s1, t1);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        TowerPoly ns = sub(s0, mul(q, s1));
        TowerPoly nt = sub(t0, mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        t0 = std::move(t1);
        s1 = std::move(ns);
        t1 = std::move(nt);
        make_monic(r1, s1, t1);
    }
    return {std::move(r0), std::move(s0), std::move(t0)};
}

TowerElement eval(const TowerPoly& a, const TowerElement& x) {
    TowerElement acc = zero_element(*a.tower, a.level);
    for (std::size_t i = a.c.size(); i-- > 0;) acc = add(mul(acc, x), a.c[i]);
    return acc;
}

TowerPoly reduce_artin_schreier(TowerPoly a, const TowerElement& gamma) {
    const word p = a.tower->p();
    while (a.c.size() > std::size_t(p)) {
        std::size_t top = a.c.size() - 1;
        TowerElement c = a.c[top];
        a.c.pop_back();
        if (is_zero(c)) continue;
        // Y^{p+t} = Y^{t+1} + gamma Y^t
        std::size_t tshift = top - std::size_t(p);
        a.c[tshift + 1] = add(a.c[tshift + 1], c);
        a.c[tshift] = add(a.c[tshift], mul(c, gamma));
    }
    a.normalize();
    return a;
}

} // namespace astower
