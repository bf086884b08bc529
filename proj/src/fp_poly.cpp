#include "astower/fp_poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace astower {

namespace {

void require_same(const PrimePoly& a, const PrimePoly& b, const char* where) {
    if (!(a.mod == b.mod))
        throw std::invalid_argument(std::string(where) + ": modulus mismatch");
}

// Schoolbook product of raw coefficient ranges into out (len na+nb-1, zeroed).
// For small p the inner products are accumulated raw in 64 bits: terms are
// < 2^42 and at most min(na, nb) <= 2^21 of them are summed per slot.
void school_mul(const word* a, std::size_t na, const word* b, std::size_t nb, word* out,
                const PrimeModulus& m) {
    if (na == 0 || nb == 0) return;
    if (m.p < (word(1) << 21) && std::min(na, nb) <= (std::size_t(1) << 21)) {
        for (std::size_t i = 0; i < na; ++i) {
            word ai = a[i];
            if (!ai) continue;
            for (std::size_t j = 0; j < nb; ++j) out[i + j] += ai * b[j];
        }
        for (std::size_t k = 0; k < na + nb - 1; ++k) out[k] %= m.p;
    } else {
        for (std::size_t i = 0; i < na; ++i) {
            word ai = a[i];
            if (!ai) continue;
            for (std::size_t j = 0; j < nb; ++j)
                out[i + j] = m.add(out[i + j], m.mul(ai, b[j]));
        }
    }
}

void kara_rec(const word* a, std::size_t na, const word* b, std::size_t nb, word* out,
              const PrimeModulus& m) {
    if (na == 0 || nb == 0) return;
    if (std::min(na, nb) < kNaiveMulThreshold) {
        school_mul(a, na, b, nb, out, m);
        return;
    }
    std::size_t h = (std::max(na, nb) + 1) / 2;
    if (na <= h || nb <= h) {
        // Unbalanced: split only the longer operand.
        if (na > nb) {
            kara_rec(a, h, b, nb, out, m);
            std::vector<word> hi(na - h + nb - 1, 0);
            kara_rec(a + h, na - h, b, nb, hi.data(), m);
            for (std::size_t k = 0; k < hi.size(); ++k) out[h + k] = m.add(out[h + k], hi[k]);
        } else {
            kara_rec(b, nb, a, na, out, m);
        }
        return;
    }
    std::size_t na0 = h, na1 = na - h, nb0 = h, nb1 = nb - h;
    std::vector<word> t0(na0 + nb0 - 1, 0), t2(na1 + nb1 - 1, 0);
    kara_rec(a, na0, b, nb0, t0.data(), m);
    kara_rec(a + h, na1, b + h, nb1, t2.data(), m);

    std::size_t nsa = std::max(na0, na1), nsb = std::max(nb0, nb1);
    std::vector<word> sa(nsa), sb(nsb);
    for (std::size_t i = 0; i < nsa; ++i)
        sa[i] = m.add(i < na0 ? a[i] : 0, i < na1 ? a[h + i] : 0);
    for (std::size_t i = 0; i < nsb; ++i)
        sb[i] = m.add(i < nb0 ? b[i] : 0, i < nb1 ? b[h + i] : 0);
    std::vector<word> t1(nsa + nsb - 1, 0);
    kara_rec(sa.data(), nsa, sb.data(), nsb, t1.data(), m);
    for (std::size_t k = 0; k < t0.size(); ++k) t1[k] = m.sub(t1[k], t0[k]);
    for (std::size_t k = 0; k < t2.size(); ++k) t1[k] = m.sub(t1[k], t2[k]);

    for (std::size_t k = 0; k < t0.size(); ++k) out[k] = m.add(out[k], t0[k]);
    for (std::size_t k = 0; k < t1.size(); ++k) out[h + k] = m.add(out[h + k], t1[k]);
    for (std::size_t k = 0; k < t2.size(); ++k) out[2 * h + k] = m.add(out[2 * h + k], t2[k]);
}

std::vector<word> vec_mul(const std::vector<word>& a, const std::vector<word>& b,
                          const PrimeModulus& m) {
    if (a.empty() || b.empty()) return {};
    std::vector<word> out(a.size() + b.size() - 1, 0);
    kara_rec(a.data(), a.size(), b.data(), b.size(), out.data(), m);
    return out;
}

std::vector<word> vec_mul_trunc(const std::vector<word>& a, const std::vector<word>& b,
                                std::size_t k, const PrimeModulus& m) {
    std::vector<word> ta(a.begin(), a.begin() + std::min(a.size(), k));
    std::vector<word> tb(b.begin(), b.begin() + std::min(b.size(), k));
    std::vector<word> out = vec_mul(ta, tb, m);
    if (out.size() > k) out.resize(k);
    return out;
}

std::vector<word> rev_window(const std::vector<word>& a, std::size_t e) {
    std::vector<word> out(e + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[e - i] = a[i];
    return out;
}

std::vector<std::pair<word, int>> factorize(word n) {
    std::vector<std::pair<word, int>> f;
    for (word d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            f.push_back({d, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

} // namespace

bool is_prime_u64(word n) {
    if (n < 2) return false;
    for (word q : {word(2), word(3), word(5), word(7), word(11), word(13), word(17), word(19),
                   word(23), word(29), word(31), word(37)}) {
        if (n % q == 0) return n == q;
    }
    word d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    auto mulm = [n](word a, word b) { return word(dword(a) * b % n); };
    auto powm = [&](word a, word e) {
        word res = 1;
        while (e) {
            if (e & 1) res = mulm(res, a);
            a = mulm(a, a);
            e >>= 1;
        }
        return res;
    };
    // Deterministic witness set for 64-bit inputs.
    for (word a : {word(2), word(3), word(5), word(7), word(11), word(13), word(17), word(19),
                   word(23), word(29), word(31), word(37)}) {
        word x = powm(a % n, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulm(x, x);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

PrimePoly::PrimePoly(PrimeModulus m, std::vector<word> coeffs) : mod(m), c(std::move(coeffs)) {
    for (word& w : c)
        if (w >= mod.p) w %= mod.p;
    normalize();
}

void PrimePoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

PrimePoly add(const PrimePoly& a, const PrimePoly& b) {
    require_same(a, b, "add");
    PrimePoly out(a.mod);
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = a.mod.add(a.coeff(i), b.coeff(i));
    out.normalize();
    return out;
}

PrimePoly sub(const PrimePoly& a, const PrimePoly& b) {
    require_same(a, b, "sub");
    PrimePoly out(a.mod);
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = a.mod.sub(a.coeff(i), b.coeff(i));
    out.normalize();
    return out;
}

PrimePoly neg(const PrimePoly& a) {
    PrimePoly out(a.mod);
    out.c.resize(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.mod.neg(a.c[i]);
    return out;
}

PrimePoly mul(const PrimePoly& a, const PrimePoly& b) {
    require_same(a, b, "mul");
    PrimePoly out(a.mod);
    out.c = vec_mul(a.c, b.c, a.mod);
    out.normalize();
    return out;
}

PrimePoly mul_scalar(const PrimePoly& a, word s) {
    s = a.mod.reduce(s);
    PrimePoly out(a.mod);
    if (s == 0) return out;
    out.c.resize(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.mod.mul(a.c[i], s);
    return out;
}

PrimePoly shift_left(const PrimePoly& a, std::size_t k) {
    if (a.is_zero()) return a;
    PrimePoly out(a.mod);
    out.c.assign(k, 0);
    out.c.insert(out.c.end(), a.c.begin(), a.c.end());
    return out;
}

namespace {

std::pair<PrimePoly, PrimePoly> divrem_long(const PrimePoly& a, const PrimePoly& b) {
    const PrimeModulus& m = a.mod;
    std::size_t db = b.c.size() - 1;
    word ilc = m.inv(b.lead());
    std::vector<word> r = a.c;
    std::vector<word> q(r.size() - db, 0);
    for (std::size_t k = r.size() - db; k-- > 0;) {
        word coef = m.mul(r[k + db], ilc);
        q[k] = coef;
        if (!coef) continue;
        for (std::size_t j = 0; j <= db; ++j) r[k + j] = m.sub(r[k + j], m.mul(coef, b.c[j]));
    }
    r.resize(db);
    PrimePoly qq(m), rr(m);
    qq.c = std::move(q);
    qq.normalize();
    rr.c = std::move(r);
    rr.normalize();
    return {std::move(qq), std::move(rr)};
}

} // namespace

std::pair<PrimePoly, PrimePoly> divrem(const PrimePoly& a, const PrimePoly& b) {
    require_same(a, b, "divrem");
    if (b.is_zero()) throw std::invalid_argument("divrem: division by zero polynomial");
    if (a.c.size() < b.c.size()) return {PrimePoly(a.mod), a};
    std::size_t da = a.c.size() - 1, db = b.c.size() - 1, dq = da - db;
    if (db <= kNaiveDivremThreshold || dq <= kNaiveDivremThreshold) return divrem_long(a, b);

    const PrimeModulus& m = a.mod;
    word lc = b.lead();
    PrimePoly bm = lc == 1 ? b : mul_scalar(b, m.inv(lc));
    std::vector<word> ra = rev_window(a.c, da);
    std::vector<word> rb = rev_window(bm.c, db);
    PrimePoly rbp(m);
    rbp.c = rb;
    rbp.normalize();
    PrimePoly inv = series_inverse(rbp, dq + 1);
    std::vector<word> qr = vec_mul_trunc(ra, inv.c, dq + 1, m);
    qr.resize(dq + 1, 0);
    std::reverse(qr.begin(), qr.end());
    PrimePoly q(m);
    q.c = std::move(qr);
    q.normalize();
    std::vector<word> t = vec_mul_trunc(q.c, bm.c, db, m);
    PrimePoly r(m);
    r.c.resize(db, 0);
    for (std::size_t i = 0; i < db; ++i) r.c[i] = m.sub(a.coeff(i), i < t.size() ? t[i] : 0);
    r.normalize();
    if (lc != 1) q = mul_scalar(q, m.inv(lc));
    return {std::move(q), std::move(r)};
}

PrimePoly rem(const PrimePoly& a, const PrimePoly& b) { return divrem(a, b).second; }
PrimePoly quo(const PrimePoly& a, const PrimePoly& b) { return divrem(a, b).first; }

XgcdResult xgcd(const PrimePoly& a, const PrimePoly& b) {
    require_same(a, b, "xgcd");
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("xgcd: both inputs zero");
    const PrimeModulus& m = a.mod;
    PrimePoly r0 = a, r1 = b;
    PrimePoly s0 = PrimePoly::one(m), s1 = PrimePoly::zero(m);
    PrimePoly t0 = PrimePoly::zero(m), t1 = PrimePoly::one(m);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        PrimePoly ns = sub(s0, mul(q, s1));
        PrimePoly nt = sub(t0, mul(q, t1));
        s0 = std::move(s1);
        t0 = std::move(t1);
        s1 = std::move(ns);
        t1 = std::move(nt);
    }
    word ilc = m.inv(r0.lead());
    return {mul_scalar(r0, ilc), mul_scalar(s0, ilc), mul_scalar(t0, ilc)};
}

PrimePoly gcd(const PrimePoly& a, const PrimePoly& b) {
    require_same(a, b, "gcd");
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd: both inputs zero");
    PrimePoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        PrimePoly r = rem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    return mul_scalar(r0, a.mod.inv(r0.lead()));
}

PrimePoly rev(const PrimePoly& a, std::size_t e) {
    if (a.degree() > long(e)) throw std::invalid_argument("rev: window smaller than degree");
    PrimePoly out(a.mod);
    out.c = rev_window(a.c, e);
    out.normalize();
    return out;
}

PrimePoly derivative(const PrimePoly& a) {
    PrimePoly out(a.mod);
    if (a.c.size() <= 1) return out;
    out.c.resize(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) out.c[i - 1] = a.mod.mul(a.c[i], i % a.mod.p);
    out.normalize();
    return out;
}

PrimePoly series_inverse(const PrimePoly& a, std::size_t prec) {
    if (a.is_zero() || a.c[0] == 0)
        throw std::invalid_argument("series_inverse: constant term is zero");
    const PrimeModulus& m = a.mod;
    PrimePoly g(m, {m.inv(a.c[0])});
    std::size_t t = 1;
    while (t < prec) {
        t = std::min(2 * t, prec);
        std::vector<word> fg = vec_mul_trunc(a.c, g.c, t, m);
        fg.resize(t, 0);
        for (word& w : fg) w = m.neg(w);
        fg[0] = m.add(fg[0], 2 % m.p);
        g.c = vec_mul_trunc(g.c, fg, t, m);
        g.c.resize(t, 0);
    }
    g.normalize();
    return g;
}

word eval(const PrimePoly& a, word x) {
    const PrimeModulus& m = a.mod;
    x = m.reduce(x);
    word acc = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) acc = m.add(m.mul(acc, x), a.c[i]);
    return acc;
}

Reducer::Reducer(PrimePoly modulus) : q(std::move(modulus)) {
    if (q.degree() < 1) throw std::invalid_argument("Reducer: modulus must have degree >= 1");
    if (!q.is_monic()) throw std::invalid_argument("Reducer: modulus must be monic");
    n = std::size_t(q.degree());
    rq = rev_window(q.c, n);
    PrimePoly rqp(q.mod);
    rqp.c = rq;
    rqp.normalize();
    // Tower work reduces operands of degree up to (2p-1)n (substituted
    // bivariate blocks, p-power spreads); cover that range for small p.
    std::size_t prec = q.mod.p <= 64 ? (2 * std::size_t(q.mod.p) - 1) * n + 1 : 2 * n;
    PrimePoly inv = series_inverse(rqp, prec);
    rq_inv = inv.c;
    rq_inv.resize(prec, 0);
}

PrimePoly Reducer::reduce(const PrimePoly& a) const {
    if (a.c.size() <= n) return a;
    std::size_t da = a.c.size() - 1, dq = da - n;
    if (dq + 1 > rq_inv.size()) return rem(a, q);
    const PrimeModulus& m = q.mod;
    std::vector<word> ra = rev_window(a.c, da);
    std::vector<word> qr = vec_mul_trunc(ra, rq_inv, dq + 1, m);
    qr.resize(dq + 1, 0);
    std::reverse(qr.begin(), qr.end());
    std::vector<word> t = vec_mul_trunc(qr, q.c, n, m);
    PrimePoly r(m);
    r.c.resize(n, 0);
    for (std::size_t i = 0; i < n; ++i) r.c[i] = m.sub(a.coeff(i), i < t.size() ? t[i] : 0);
    r.normalize();
    return r;
}

PrimePoly Reducer::mulmod(const PrimePoly& a, const PrimePoly& b) const {
    return reduce(mul(a, b));
}

std::vector<word> Reducer::extend_sequence(const std::vector<word>& first, std::size_t total) const {
    if (first.size() != n)
        throw std::invalid_argument("extend_sequence: need exactly deg(q) initial values");
    if (total <= n) return std::vector<word>(first.begin(), first.begin() + total);
    const PrimeModulus& m = q.mod;
    std::vector<word> num = vec_mul_trunc(first, rq, n, m);
    std::vector<word> out;
    if (total <= rq_inv.size()) {
        out = vec_mul_trunc(num, rq_inv, total, m);
    } else {
        PrimePoly rqp(m);
        rqp.c = rq;
        rqp.normalize();
        out = vec_mul_trunc(num, series_inverse(rqp, total).c, total, m);
    }
    out.resize(total, 0);
    return out;
}

std::vector<word> Reducer::transposed_mul(const PrimePoly& w, const std::vector<word>& ell) const {
    if (ell.size() != n)
        throw std::invalid_argument("transposed_mul: form length must equal deg(q)");
    const PrimeModulus& m = q.mod;
    if (n < kNaiveTransposedMulThreshold) return transposed_mul_naive(w, ell, q);
    std::vector<word> s = extend_sequence(ell, 2 * n - 1);
    std::vector<word> wr = rev_window(w.c, n - 1);
    std::vector<word> prod = vec_mul(wr, s, m);
    std::vector<word> out(n, 0);
    for (std::size_t j = 0; j < n; ++j)
        if (n - 1 + j < prod.size()) out[j] = prod[n - 1 + j];
    return out;
}

std::vector<word> extend_sequence_naive(const std::vector<word>& first, const PrimePoly& q,
                                        std::size_t total) {
    std::size_t n = std::size_t(q.degree());
    if (first.size() != n)
        throw std::invalid_argument("extend_sequence_naive: need deg(q) initial values");
    const PrimeModulus& m = q.mod;
    std::vector<word> s(first.begin(), first.begin() + std::min(first.size(), total));
    s.reserve(total);
    while (s.size() < total) {
        std::size_t a = s.size();
        word v = 0;
        for (std::size_t t = 0; t < n; ++t) v = m.add(v, m.mul(q.c[t], s[a - n + t]));
        s.push_back(m.neg(v));
    }
    return s;
}

std::vector<word> transposed_mul_naive(const PrimePoly& w, const std::vector<word>& ell,
                                       const PrimePoly& q) {
    std::size_t n = std::size_t(q.degree());
    if (ell.size() != n)
        throw std::invalid_argument("transposed_mul_naive: form length must equal deg(q)");
    const PrimeModulus& m = q.mod;
    std::vector<word> cur(n, 0);
    for (std::size_t i = 0; i < w.c.size() && i < n; ++i) cur[i] = w.c[i];
    std::vector<word> out(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        word dot = 0;
        for (std::size_t t = 0; t < n; ++t) dot = m.add(dot, m.mul(ell[t], cur[t]));
        out[j] = dot;
        if (j + 1 == n) break;
        word top = cur[n - 1];
        for (std::size_t t = n; t-- > 1;) cur[t] = cur[t - 1];
        cur[0] = 0;
        if (top)
            for (std::size_t t = 0; t < n; ++t) cur[t] = m.sub(cur[t], m.mul(top, q.c[t]));
    }
    return out;
}

std::vector<word> transposed_mul(const PrimePoly& w, const std::vector<word>& ell,
                                 const PrimePoly& q) {
    if (std::size_t(q.degree()) < kNaiveTransposedMulThreshold)
        return transposed_mul_naive(w, ell, q);
    Reducer r(q);
    return r.transposed_mul(w, ell);
}

PrimePoly compose_mod(const PrimePoly& f, const PrimePoly& g, const Reducer& R) {
    const PrimeModulus& m = f.mod;
    if (f.c.size() <= 1) return f;
    PrimePoly gr = R.reduce(g);

    std::size_t df = f.c.size() - 1;
    std::size_t t = 1;
    while (t * t < df + 1) ++t;
    std::size_t s = (df + t) / t;

    std::vector<PrimePoly> pw(t + 1, PrimePoly(m));
    pw[0] = PrimePoly::one(m);
    for (std::size_t j = 1; j <= t; ++j) pw[j] = R.mulmod(pw[j - 1], gr);

    std::size_t n = R.n;
    std::vector<std::vector<word>> rows(s, std::vector<word>(n, 0));
    bool small_p = m.p < (word(1) << 21) && t <= (std::size_t(1) << 21);
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t k = 0; k < t; ++k) {
            word fc = f.coeff(j * t + k);
            if (!fc) continue;
            const PrimePoly& gk = pw[k];
            if (small_p) {
                for (std::size_t i = 0; i < gk.c.size(); ++i) rows[j][i] += fc * gk.c[i];
            } else {
                for (std::size_t i = 0; i < gk.c.size(); ++i)
                    rows[j][i] = m.add(rows[j][i], m.mul(fc, gk.c[i]));
            }
        }
        if (small_p)
            for (word& w : rows[j]) w %= m.p;
    }

    PrimePoly acc(m);
    for (std::size_t j = s; j-- > 0;) {
        acc = R.mulmod(acc, pw[t]);
        PrimePoly row(m);
        row.c = rows[j];
        row.normalize();
        acc = add(acc, row);
    }
    return acc;
}

PrimePoly compose_mod(const PrimePoly& f, const PrimePoly& g, const PrimePoly& h) {
    require_same(f, g, "compose_mod");
    require_same(f, h, "compose_mod");
    if (h.degree() < 1) throw std::invalid_argument("compose_mod: deg h must be >= 1");
    if (!h.is_monic()) throw std::invalid_argument("compose_mod: h must be monic");
    if (f.c.size() <= 1) return f;
    Reducer R(h);
    return compose_mod(f, g, R);
}

PrimePoly powmod(const PrimePoly& f, word e, const PrimePoly& h) {
    Reducer R(h);
    PrimePoly base = R.reduce(f);
    PrimePoly acc = PrimePoly::one(f.mod);
    while (e) {
        if (e & 1) acc = R.mulmod(acc, base);
        base = R.mulmod(base, base);
        e >>= 1;
    }
    return acc;
}

std::vector<word> trace_series(const PrimePoly& q) {
    if (!q.is_monic() || q.degree() < 1)
        throw std::invalid_argument("trace_series: q must be monic of degree >= 1");
    const PrimeModulus& m = q.mod;
    std::size_t n = std::size_t(q.degree());
    std::vector<word> out(n, 0);
    out[0] = n % m.p;
    if (n >= 2) {
        PrimePoly rq = rev(q, n);
        PrimePoly d = derivative(rq);
        PrimePoly inv = series_inverse(rq, n - 1);
        std::vector<word> s = vec_mul_trunc(d.c, inv.c, n - 1, m);
        for (std::size_t a = 0; a + 1 < n; ++a)
            out[a + 1] = m.neg(a < s.size() ? s[a] : 0);
    }
    return out;
}

word trace_of_generator(const PrimePoly& q) {
    if (!q.is_monic() || q.degree() < 1)
        throw std::invalid_argument("trace_of_generator: q must be monic of degree >= 1");
    return q.mod.neg(q.coeff(std::size_t(q.degree()) - 1));
}

namespace {

// X^{p^e} mod q. Small exponent gaps advance by p-th powers (coefficient
// spread + one reduction); large jumps use modular composition, which adds
// exponents: frob(a+b) = frob(a) o frob(b).
struct FrobeniusChain {
    const Reducer& R;
    word cutoff;
    std::map<word, PrimePoly> memo; // e -> X^{p^e} mod q

    FrobeniusChain(const Reducer& red, const PrimePoly& xp) : R(red) {
        std::size_t s = 1;
        while (s * s < R.n) ++s;
        word c = 3 * word(s) / (R.mod().p - 1);
        cutoff = c < 1 ? 1 : c;
        memo.emplace(1, xp);
    }

    PrimePoly spread(const PrimePoly& f) const {
        const word p = R.mod().p;
        PrimePoly out(f.mod);
        if (f.is_zero()) return out;
        out.c.assign(std::size_t(p) * (f.c.size() - 1) + 1, 0);
        for (std::size_t i = 0; i < f.c.size(); ++i) out.c[std::size_t(p) * i] = f.c[i];
        out.normalize();
        return R.reduce(out);
    }

    const PrimePoly& get(word e) {
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        auto below = memo.upper_bound(e);
        --below; // memo holds 1, and e >= 1
        if (e - below->first <= cutoff) {
            PrimePoly f = below->second;
            for (word s = below->first; s < e; ++s) f = spread(f);
            return memo.emplace(e, std::move(f)).first->second;
        }
        word half = word(1) << (63 - __builtin_clzll(e - 1));
        const PrimePoly& lo = get(half >= e ? half / 2 : half);
        word done = half >= e ? half / 2 : half;
        const PrimePoly& hi = get(e - done);
        PrimePoly f = compose_mod(lo, hi, R);
        return memo.emplace(e, std::move(f)).first->second;
    }
};

} // namespace

bool irreducible(const PrimePoly& q) {
    if (!q.is_monic() || q.degree() < 1)
        throw std::invalid_argument("irreducible: q must be monic of degree >= 1");
    std::size_t n = std::size_t(q.degree());
    if (n == 1) return true;
    const PrimeModulus& m = q.mod;
    if (q.c[0] == 0) return false; // divisible by X

    Reducer R(q);
    PrimePoly x = PrimePoly::x(m);
    PrimePoly base = R.reduce(x), xp = PrimePoly::one(m);
    {
        word e = m.p;
        while (e) { // X^p mod q
            if (e & 1) xp = R.mulmod(xp, base);
            base = R.mulmod(base, base);
            e >>= 1;
        }
    }
    FrobeniusChain chain(R, xp);
    if (!(chain.get(n) == x)) return false;
    for (auto [r, e] : factorize(n)) {
        (void)e;
        PrimePoly g = gcd(sub(chain.get(n / r), x), q);
        if (g.degree() != 0) return false;
    }
    return true;
}

PrimePoly cyclotomic(word n, PrimeModulus m) {
    if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
    std::map<word, PrimePoly> memo;
    auto rec = [&](auto&& self, word k) -> PrimePoly {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        PrimePoly num(m);
        num.c.assign(k + 1, 0);
        num.c[0] = m.neg(1);
        num.c[k] = 1;
        PrimePoly den = PrimePoly::one(m);
        for (word d = 1; d < k; ++d)
            if (k % d == 0) den = mul(den, self(self, d));
        auto [quot, r] = divrem(num, den);
        if (!r.is_zero()) throw std::logic_error("cyclotomic: non-exact divisor product");
        memo.emplace(k, quot);
        return quot;
    };
    return rec(rec, n);
}

PrimePoly find_irreducible(PrimeModulus m, std::size_t d) {
    if (d == 0) throw std::invalid_argument("find_irreducible: degree must be >= 1");
    word count = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (count > (word(1) << 40) / m.p) { count = 0; break; } // enumeration infeasible
        count *= m.p;
    }
    if (count == 0)
        throw std::invalid_argument("find_irreducible: search space too large, pass q0 explicitly");
    for (word v = count; v-- > 0;) {
        std::vector<word> c(d + 1, 0);
        word t = v;
        for (std::size_t i = 0; i < d; ++i) { c[i] = t % m.p; t /= m.p; }
        c[d] = 1;
        PrimePoly cand(m, std::move(c));
        if (trace_of_generator(cand) == 0) continue;
        if (irreducible(cand)) return cand;
    }
    throw std::logic_error("find_irreducible: no candidate found"); // unreachable for d >= 1
}

} // namespace astower
