#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "astower/fp.hpp"

namespace astower {

// Dense polynomial over F_p, constant term first, no trailing zeros.
// The empty coefficient sequence is the zero polynomial.
struct PrimePoly {
    PrimeModulus mod;
    std::vector<word> c;

    PrimePoly() = default;
    explicit PrimePoly(PrimeModulus m) : mod(m) {}
    PrimePoly(PrimeModulus m, std::vector<word> coeffs);

    bool is_zero() const { return c.empty(); }
    long degree() const { return long(c.size()) - 1; }
    word coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    word lead() const { return c.empty() ? 0 : c.back(); }
    bool is_monic() const { return lead() == 1; }

    void normalize();

    bool operator==(const PrimePoly&) const = default;

    static PrimePoly zero(PrimeModulus m) { return PrimePoly(m); }
    static PrimePoly one(PrimeModulus m) { return PrimePoly(m, {1}); }
    static PrimePoly x(PrimeModulus m) { return PrimePoly(m, {0, 1}); }
};

PrimePoly add(const PrimePoly& a, const PrimePoly& b);
PrimePoly sub(const PrimePoly& a, const PrimePoly& b);
PrimePoly neg(const PrimePoly& a);
PrimePoly mul(const PrimePoly& a, const PrimePoly& b);
PrimePoly mul_scalar(const PrimePoly& a, word s);
PrimePoly shift_left(const PrimePoly& a, std::size_t k); // a * X^k

// a = q*b + r with deg r < deg b. Newton iteration above the naive threshold.
std::pair<PrimePoly, PrimePoly> divrem(const PrimePoly& a, const PrimePoly& b);
PrimePoly rem(const PrimePoly& a, const PrimePoly& b);
PrimePoly quo(const PrimePoly& a, const PrimePoly& b);

struct XgcdResult {
    PrimePoly g, u, v; // g monic, g = u*a + v*b
};
XgcdResult xgcd(const PrimePoly& a, const PrimePoly& b);
PrimePoly gcd(const PrimePoly& a, const PrimePoly& b);

// rev_e(P) = X^e P(1/X); requires deg P <= e.
PrimePoly rev(const PrimePoly& a, std::size_t e);

PrimePoly derivative(const PrimePoly& a);

// Inverse of a as a power series mod X^prec; requires a(0) != 0.
PrimePoly series_inverse(const PrimePoly& a, std::size_t prec);

word eval(const PrimePoly& a, word x);

// Euclidean reduction modulo a fixed q with the series inverse of rev(q)
// precomputed to precision 2*deg(q). Falls back to generic divrem for
// operands beyond that precision.
struct Reducer {
    PrimePoly q;
    std::size_t n = 0;            // deg q
    std::vector<word> rq;         // rev_n(q)
    std::vector<word> rq_inv;     // rev(q)^{-1} mod X^{2n}

    Reducer() = default;
    explicit Reducer(PrimePoly modulus);

    const PrimeModulus& mod() const { return q.mod; }

    PrimePoly reduce(const PrimePoly& a) const;
    PrimePoly mulmod(const PrimePoly& a, const PrimePoly& b) const;

    // Values of a linear form on 1, x, ..., x^{total-1} in F_p[X]/q from its
    // first n values; the sequence is linearly generated by q.
    std::vector<word> extend_sequence(const std::vector<word>& first, std::size_t total) const;

    // Dual multiplication: out[j] = ell(x^j * w mod q) for j < n.
    std::vector<word> transposed_mul(const PrimePoly& w, const std::vector<word>& ell) const;
};

std::vector<word> extend_sequence_naive(const std::vector<word>& first, const PrimePoly& q,
                                        std::size_t total);
std::vector<word> transposed_mul_naive(const PrimePoly& w, const std::vector<word>& ell,
                                       const PrimePoly& q);
std::vector<word> transposed_mul(const PrimePoly& w, const std::vector<word>& ell,
                                 const PrimePoly& q);

// f(g) mod h, baby-step/giant-step with a naive coefficient matrix product.
PrimePoly compose_mod(const PrimePoly& f, const PrimePoly& g, const PrimePoly& h);
PrimePoly compose_mod(const PrimePoly& f, const PrimePoly& g, const Reducer& R);
PrimePoly powmod(const PrimePoly& f, word e, const PrimePoly& h);

// (Tr(x^0), ..., Tr(x^{n-1})) for x = X mod q, via the power-sum series
// -rev(q)'/rev(q); requires q monic of degree n >= 1.
std::vector<word> trace_series(const PrimePoly& q);

// Tr_{F_p[X]/q / F_p}(x) = -coeff(q, n-1) for monic q.
word trace_of_generator(const PrimePoly& q);

// Distinct-degree criterion: X^{p^n} = X mod q and gcd(X^{p^{n/r}} - X, q) = 1
// for every prime r | n.
bool irreducible(const PrimePoly& q);

// Cyclotomic polynomial Phi_n reduced mod p, by the divisor-product quotient.
PrimePoly cyclotomic(word n, PrimeModulus m);

// First monic irreducible of degree d with nonzero generator trace, scanning
// coefficient vectors from high to low (picks X - 1 for d = 1).
PrimePoly find_irreducible(PrimeModulus m, std::size_t d);

// Multiplication dispatch thresholds.
inline constexpr std::size_t kNaiveMulThreshold = 32;
inline constexpr std::size_t kNaiveDivremThreshold = 32;
inline constexpr std::size_t kNaiveTransposedMulThreshold = 64;

} // namespace astower
