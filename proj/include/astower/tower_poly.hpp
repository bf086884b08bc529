#pragma once

#include "astower/tower.hpp"

namespace astower {

// Polynomial in Y over U_i, coefficients on the basis C_i; no trailing zero
// coefficients, all at the same level.
struct TowerPoly {
    const TowerDescriptor* tower = nullptr;
    std::uint32_t level = 0;
    std::vector<TowerElement> c;

    long degree() const { return long(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void normalize();

    bool operator==(const TowerPoly&) const = default;
};

TowerPoly tp_zero(const TowerDescriptor& t, std::uint32_t level);
TowerPoly tp_one(const TowerDescriptor& t, std::uint32_t level);
TowerPoly tp_from(std::vector<TowerElement> coeffs);
TowerElement tp_coeff(const TowerPoly& a, std::size_t i);

TowerPoly add(const TowerPoly& a, const TowerPoly& b);
TowerPoly sub(const TowerPoly& a, const TowerPoly& b);
TowerPoly neg(const TowerPoly& a);

// Product via Kronecker substitution: each coefficient packs into a block of
// 2 p^i d - 1 base coefficients, one base-field multiplication, then
// coefficient-wise reduction mod Q_i.
TowerPoly mul(const TowerPoly& a, const TowerPoly& b);
TowerPoly mul_elem(const TowerPoly& a, const TowerElement& s);

// A = Q*B + R with deg R < deg B; requires B monic (callers normalize).
std::pair<TowerPoly, TowerPoly> divrem(const TowerPoly& a, const TowerPoly& b);

struct TowerXgcdResult {
    TowerPoly g, u, v;
};
TowerXgcdResult xgcd(const TowerPoly& a, const TowerPoly& b);

TowerElement eval(const TowerPoly& a, const TowerElement& x);

// Reduce modulo Y^p - Y - gamma (gamma at the same level as the
// coefficients); result has degree < p.
TowerPoly reduce_artin_schreier(TowerPoly a, const TowerElement& gamma);

} // namespace astower
