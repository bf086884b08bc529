#include "astower/tower.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "astower/embedding.hpp"
#include "astower/frobenius.hpp"

namespace astower {

namespace {

std::size_t ipow(word base, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > (std::size_t(1) << 40) / base)
            throw std::invalid_argument("tower: level size exceeds supported range");
        r *= std::size_t(base);
    }
    return r;
}

} // namespace

GeneratorKind generator_kind(std::size_t level, word p, std::size_t d) {
    if (level <= 1) return GeneratorKind::linear;
    if (level == 2 && p == 2 && d % 2 == 1) return GeneratorKind::linear;
    return GeneratorKind::power;
}

std::size_t TowerDescriptor::level_size(std::size_t i) const {
    return ipow(mod.p, i) * d;
}

PrimePoly naive_compose(const PrimePoly& P, const PrimePoly& R) {
    if (!(P.mod == R.mod)) throw std::invalid_argument("naive_compose: modulus mismatch");
    PrimePoly s(P.mod);
    PrimePoly rho = PrimePoly::one(P.mod);
    for (std::size_t i = 0; i < P.c.size(); ++i) {
        if (P.c[i]) s = add(s, mul_scalar(rho, P.c[i]));
        if (i + 1 < P.c.size()) rho = mul(rho, R);
    }
    return s;
}

namespace {

// a * R(X^{stride}) with R sparse; cost O(deg(a) * #terms(R)).
std::vector<word> sparse_mul(const std::vector<word>& a, const PrimePoly& R, std::size_t stride,
                             const PrimeModulus& m) {
    if (a.empty() || R.is_zero()) return {};
    std::vector<word> out(a.size() + std::size_t(R.degree()) * stride, 0);
    for (std::size_t j = 0; j < R.c.size(); ++j) {
        word rj = R.c[j];
        if (!rj) continue;
        std::size_t off = j * stride;
        if (rj == 1) {
            for (std::size_t i = 0; i < a.size(); ++i) out[off + i] = m.add(out[off + i], a[i]);
        } else {
            for (std::size_t i = 0; i < a.size(); ++i)
                out[off + i] = m.add(out[off + i], m.mul(rj, a[i]));
        }
    }
    return out;
}

PrimePoly compose_rec(const word* pc, std::size_t len, const PrimePoly& R,
                      const PrimeModulus& m) {
    PrimePoly P(m);
    P.c.assign(pc, pc + len);
    P.normalize();
    if (P.c.size() <= 1) return P;
    std::size_t deg = P.c.size() - 1;
    if (deg < m.p) return naive_compose(P, R);

    std::size_t pn = 1, n = 0;
    while (pn <= deg / m.p) { pn *= m.p; ++n; }
    (void)n;
    std::size_t c = deg / pn;

    std::vector<PrimePoly> slices;
    slices.reserve(c + 1);
    for (std::size_t i = 0; i <= c; ++i) {
        std::size_t lo = i * pn, hi = std::min(P.c.size(), lo + pn);
        slices.push_back(lo < hi ? compose_rec(P.c.data() + lo, hi - lo, R, m) : PrimePoly(m));
    }
    PrimePoly out(m);
    for (std::size_t i = c + 1; i-- > 0;) {
        if (!out.is_zero()) {
            out.c = sparse_mul(out.c, R, pn, m);
            out.normalize();
        }
        out = add(out, slices[i]);
    }
    return out;
}

} // namespace

PrimePoly compose(const PrimePoly& P, const PrimePoly& R) {
    if (!(P.mod == R.mod)) throw std::invalid_argument("compose: modulus mismatch");
    if (P.is_zero()) return P;
    return compose_rec(P.c.data(), P.c.size(), R, P.mod);
}

namespace {

// Arithmetic in A = F_p[X]/Phi_{2p-1}: elements are length-e coefficient
// vectors, e = deg Phi.  Reduction is shift-subtract against Phi.
struct CycloRing {
    PrimeModulus m;
    PrimePoly phi;
    std::size_t e;
    word order; // 2p-1; x^order = 1 in A

    explicit CycloRing(PrimeModulus mm)
        : m(mm), phi(cyclotomic(2 * mm.p - 1, mm)), e(std::size_t(phi.degree())),
          order(2 * mm.p - 1) {}

    void reduce_in_place(std::vector<word>& v) const {
        for (std::size_t i = v.size(); i-- > e;) {
            word top = v[i];
            if (!top) continue;
            v[i] = 0;
            for (std::size_t t = 0; t < e; ++t)
                v[i - e + t] = m.sub(v[i - e + t], m.mul(top, phi.c[t]));
        }
        v.resize(e);
    }

    std::vector<word> x_power(word k) const {
        k %= order;
        std::vector<word> v(std::max<std::size_t>(e, std::size_t(k) + 1), 0);
        v[std::size_t(k)] = 1;
        reduce_in_place(v);
        return v;
    }
};

using APoly = std::vector<std::vector<word>>; // coefficients in A, degree index outer

// Product in A[Y] via Kronecker substitution: each A-coefficient occupies a
// block of 2e-1 base coefficients, one base-field product, carry-free unpack.
APoly apoly_mul(const APoly& a, const APoly& b, const CycloRing& A) {
    if (a.empty() || b.empty()) return {};
    std::size_t stride = 2 * A.e - 1;
    auto pack = [&](const APoly& f) {
        PrimePoly out(A.m);
        out.c.assign(f.size() * stride, 0);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t t = 0; t < A.e; ++t) out.c[i * stride + t] = f[i][t];
        out.normalize();
        return out;
    };
    PrimePoly prod = mul(pack(a), pack(b));
    APoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::vector<word> chunk(stride, 0);
        for (std::size_t t = 0; t < stride; ++t) chunk[t] = prod.coeff(i * stride + t);
        A.reduce_in_place(chunk);
        out[i] = std::move(chunk);
    }
    return out;
}

} // namespace

PrimePoly star_product(const PrimePoly& Q, PrimeModulus m) {
    if (!Q.is_monic()) throw std::invalid_argument("star_product: Q must be monic");
    CycloRing A(m);
    std::size_t dq = std::size_t(Q.degree());

    // Factors Q(x^i Y), i = 0..2p-2, coefficient j is q_j x^{ij}.
    std::vector<APoly> factors;
    factors.reserve(A.order);
    for (word i = 0; i < A.order; ++i) {
        APoly f(dq + 1, std::vector<word>(A.e, 0));
        for (std::size_t j = 0; j <= dq; ++j) {
            word qj = Q.coeff(j);
            if (!qj) continue;
            std::vector<word> xp = A.x_power(i * j);
            for (std::size_t t = 0; t < A.e; ++t) f[j][t] = m.mul(qj, xp[t]);
        }
        factors.push_back(std::move(f));
    }

    // Balanced product tree.
    while (factors.size() > 1) {
        std::vector<APoly> next;
        next.reserve((factors.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < factors.size(); i += 2)
            next.push_back(apoly_mul(factors[i], factors[i + 1], A));
        if (factors.size() % 2) next.push_back(std::move(factors.back()));
        factors = std::move(next);
    }
    const APoly& qstar_full = factors[0];

    PrimePoly out(m);
    out.c.assign(dq + 1, 0);
    for (std::size_t i = 0; i < qstar_full.size(); ++i) {
        const std::vector<word>& coeff = qstar_full[i];
        bool constant = true;
        for (std::size_t t = 1; t < A.e; ++t) constant &= (coeff[t] == 0);
        if (i % A.order != 0) {
            for (word w : coeff)
                if (w) throw std::runtime_error("star_product: exponent not divisible by 2p-1");
            continue;
        }
        if (!constant) throw std::runtime_error("star_product: nonconstant coefficient in A");
        out.c[i / A.order] = coeff[0];
    }
    out.normalize();
    if (out.degree() != long(dq)) throw std::runtime_error("star_product: degree mismatch");
    return out;
}

namespace {

PrimePoly inverse_of_derivative(const PrimePoly& q) {
    PrimePoly dq = derivative(q);
    if (dq.is_zero()) throw std::runtime_error("tower: Q' vanished, tower corrupt");
    XgcdResult x = xgcd(dq, q);
    if (x.g.degree() != 0) throw std::runtime_error("tower: Q not separable");
    return x.u;
}

LevelData make_level(PrimePoly q, GeneratorKind kind, PrimePoly dqinv) {
    LevelData L;
    L.kind = kind;
    L.red = Reducer(q);
    L.trace = trace_series(q);
    L.dqinv = std::move(dqinv);
    L.q = std::move(q);
    return L;
}

} // namespace

TowerDescriptor init_tower(PrimeModulus m, const PrimePoly& q0, TowerOptions opts) {
    if (!(q0.mod == m)) throw std::invalid_argument("init_tower: modulus mismatch");
    if (!q0.is_monic() || q0.degree() < 1)
        throw std::invalid_argument("init_tower: Q_0 must be monic of degree >= 1");
    if (!irreducible(q0)) throw std::invalid_argument("init_tower: Q_0 is reducible");

    PrimePoly q = q0;
    std::size_t d = std::size_t(q0.degree());
    if (trace_of_generator(q) == 0) {
        if (d % m.p == 0)
            throw std::invalid_argument(
                "init_tower: Tr(x_0) = 0 and p | d, no generator shift available");
        q = compose(q, PrimePoly(m, {m.neg(1), 1})); // Q_0(X - 1)
    }

    TowerDescriptor t;
    t.mod = m;
    t.d = d;
    t.options = opts;
    t.levels.push_back(make_level(std::move(q), GeneratorKind::linear, PrimePoly(m)));
    return t;
}

TowerElement gamma_element(const TowerDescriptor& t, std::uint32_t level) {
    GeneratorKind kind = generator_kind(level + 1, t.p(), t.d);
    TowerElement g = generator_element(t, level);
    if (kind == GeneratorKind::linear) return g;
    return pow(g, 2 * t.p() - 1);
}

void extend_tower(TowerDescriptor& t) {
    std::size_t i = t.height();
    LevelData& base = t.levels[i];
    GeneratorKind kind = generator_kind(i + 1, t.p(), t.d);

    if (base.gamma.empty()) base.gamma = gamma_element(t, std::uint32_t(i)).coeffs;
    if (t.options.frobenius_tables) precompute_betas(t, std::uint32_t(i));

    // X^p - X over F_p
    PrimePoly xpx(t.mod);
    xpx.c.assign(std::size_t(t.p()) + 1, 0);
    xpx.c[1] = t.mod.neg(1);
    xpx.c[std::size_t(t.p())] = 1;
    xpx.normalize();

    PrimePoly w = kind == GeneratorKind::linear ? t.levels[i].q
                                                : star_product(t.levels[i].q, t.mod);
    PrimePoly qnext = compose(w, xpx);
    if (qnext.degree() != long(t.level_size(i + 1)))
        throw std::runtime_error("extend_tower: Q_{i+1} has wrong degree");

    // Q_{i+1} = W(X^p - X) gives Q_{i+1}' = -W'(X^p - X), so its inverse is
    // -U(X^p - X) for U = W'^{-1} mod W; one size-n/p gcd instead of size-n.
    PrimePoly u;
    if (kind == GeneratorKind::linear && i >= 1 && !t.levels[i].dqinv.is_zero())
        u = t.levels[i].dqinv;
    else
        u = inverse_of_derivative(w);
    PrimePoly dqinv = neg(compose(u, xpx));

    LevelData next = make_level(std::move(qnext), kind, std::move(dqinv));
    PrimePoly check = next.red.reduce(mul(next.dqinv, derivative(next.q)));
    if (!(check == PrimePoly::one(t.mod)))
        throw std::runtime_error("extend_tower: derivative inverse check failed");
    t.levels.push_back(std::move(next));
}

TowerDescriptor build_tower(PrimeModulus m, const PrimePoly& q0, std::size_t k,
                            TowerOptions opts) {
    TowerDescriptor t = init_tower(m, q0, opts);
    for (std::size_t i = 0; i < k; ++i) extend_tower(t);
    return t;
}

namespace {

void require_compatible(const TowerElement& a, const TowerElement& b, const char* where) {
    if (a.tower != b.tower) throw std::invalid_argument(std::string(where) + ": tower mismatch");
    if (a.level != b.level) throw std::invalid_argument(std::string(where) + ": level mismatch");
}

PrimePoly as_poly(const TowerElement& a) {
    PrimePoly f(a.tower->mod);
    f.c = a.coeffs;
    f.normalize();
    return f;
}

TowerElement from_poly(const TowerDescriptor& t, std::uint32_t level, const PrimePoly& f) {
    TowerElement out;
    out.tower = &t;
    out.level = level;
    out.coeffs.assign(t.level_size(level), 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) out.coeffs[i] = f.c[i];
    return out;
}

} // namespace

TowerElement zero_element(const TowerDescriptor& t, std::uint32_t level) {
    if (level >= t.levels.size())
        throw std::invalid_argument("zero_element: level exceeds the tower height");
    TowerElement out;
    out.tower = &t;
    out.level = level;
    out.coeffs.assign(t.level_size(level), 0);
    return out;
}

TowerElement scalar_element(const TowerDescriptor& t, std::uint32_t level, word value) {
    TowerElement out = zero_element(t, level);
    out.coeffs[0] = t.mod.reduce(value);
    return out;
}

TowerElement one_element(const TowerDescriptor& t, std::uint32_t level) {
    return scalar_element(t, level, 1);
}

TowerElement make_element(const TowerDescriptor& t, std::uint32_t level, std::vector<word> coeffs) {
    if (coeffs.size() != t.level_size(level))
        throw std::invalid_argument("make_element: coefficient count != p^level * d");
    TowerElement out;
    out.tower = &t;
    out.level = level;
    out.coeffs = std::move(coeffs);
    for (word& w : out.coeffs) w = t.mod.reduce(w);
    return out;
}

TowerElement generator_element(const TowerDescriptor& t, std::uint32_t level) {
    TowerElement out = zero_element(t, level);
    if (out.coeffs.size() >= 2) {
        out.coeffs[1] = 1;
    } else {
        // degree-1 level: x is the scalar -q[0]
        out.coeffs[0] = t.mod.neg(t.levels[level].q.c[0]);
    }
    return out;
}

bool is_zero(const TowerElement& a) {
    for (word w : a.coeffs)
        if (w) return false;
    return true;
}

TowerElement add(const TowerElement& a, const TowerElement& b) {
    require_compatible(a, b, "add");
    TowerElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = a.tower->mod.add(out.coeffs[i], b.coeffs[i]);
    return out;
}

TowerElement sub(const TowerElement& a, const TowerElement& b) {
    require_compatible(a, b, "sub");
    TowerElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = a.tower->mod.sub(out.coeffs[i], b.coeffs[i]);
    return out;
}

TowerElement neg(const TowerElement& a) {
    TowerElement out = a;
    for (word& w : out.coeffs) w = a.tower->mod.neg(w);
    return out;
}

TowerElement mul(const TowerElement& a, const TowerElement& b) {
    require_compatible(a, b, "mul");
    const Reducer& red = a.tower->levels[a.level].red;
    return from_poly(*a.tower, a.level, red.mulmod(as_poly(a), as_poly(b)));
}

TowerElement mul_scalar(const TowerElement& a, word s) {
    s = a.tower->mod.reduce(s);
    TowerElement out = a;
    for (word& w : out.coeffs) w = a.tower->mod.mul(w, s);
    return out;
}

TowerElement inv(const TowerElement& a) {
    if (is_zero(a)) throw std::domain_error("inv: inversion of zero");
    XgcdResult x = xgcd(as_poly(a), a.tower->levels[a.level].q);
    if (x.g.degree() != 0) throw std::logic_error("inv: gcd with Q_i not constant");
    return from_poly(*a.tower, a.level, x.u);
}

TowerElement pow(const TowerElement& a, word e) {
    TowerElement acc = one_element(*a.tower, a.level);
    TowerElement base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return acc;
}

word absolute_trace(const TowerElement& a) {
    const std::vector<word>& tr = a.tower->levels[a.level].trace;
    const PrimeModulus& m = a.tower->mod;
    word acc = 0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) acc = m.add(acc, m.mul(tr[i], a.coeffs[i]));
    return acc;
}

} // namespace astower
