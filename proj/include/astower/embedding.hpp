#pragma once

#include "astower/tower.hpp"
#include "astower/tower_poly.hpp"

namespace astower {

// Element of U_i on the bivariate basis D_i: v = sum_j parts[j] x_i^j with
// parts[j] in U_{i-1}.
struct BivariateElement {
    const TowerDescriptor* tower = nullptr;
    std::uint32_t level = 1; // >= 1
    std::vector<TowerElement> parts; // exactly p, at level-1

    bool operator==(const BivariateElement&) const = default;
};

BivariateElement make_bivariate(const TowerDescriptor& t, std::uint32_t level,
                                std::vector<TowerElement> parts);
BivariateElement bivariate_zero(const TowerDescriptor& t, std::uint32_t level);

// Bivariate working array over F_p[Y, X_i] with deg_{X_i} < p:
// blocks[b] holds the Y-coefficients of X_i^b.
struct BivArray {
    std::vector<std::vector<word>> blocks;
};

// (X_i + R_n) * A mod X_i^p - X_i - Y, R_n = sum_{j<n} Y^{p^j}; input blocks
// of length <= k, output blocks of length k + p^{n-1}.
BivArray mulmod(const BivArray& a, std::size_t k, std::size_t n, word p, PrimeModulus m);

// Transpose of mulmod: input blocks of length <= k + p^{n-1}, output length k.
BivArray mulmod_transposed(const BivArray& l, std::size_t k, std::size_t n, word p,
                           PrimeModulus m);

// V mod (X_i^p - X_i - Y) for deg V < (c+1) p^n, 1 <= c < p.
BivArray push_down_rec(const std::vector<word>& v, std::size_t c, std::size_t n, word p,
                       PrimeModulus m);

// Transpose of push_down_rec: blocks of length (c+1) p^{n-1} (1 for n = 0) to
// a vector of (c+1) p^n dual values.
std::vector<word> push_down_rec_transposed(const BivArray& l, std::size_t c, std::size_t n,
                                           word p, PrimeModulus m);

// Change of basis C_i -> D_i.
BivariateElement push_down(const TowerElement& v);

// Transposed change of basis: values of a linear form on D_i (p blocks of
// p^{i-1} d entries) to its values on C_i.
std::vector<word> push_down_transposed(const TowerDescriptor& t, std::uint32_t level,
                                       const std::vector<std::vector<word>>& ell);

// Change of basis D_i -> C_i via trace formulas; needs the level tables.
TowerElement lift_up(const BivariateElement& w);

// U_{i} -> U_{i+1} inclusion on the univariate bases.
TowerElement embed_up(const TowerElement& v);

// Trace row and Q_i'^{-1} mod Q_i for one level: the trace of x_{i-1}^a x_i^b
// on D_i vanishes for b < p-1 and equals -Tr_{U_{i-1}}(x_{i-1}^a) at b = p-1.
struct LevelTables {
    std::vector<word> s_row; // row p-1 of S_i
    PrimePoly dqinv;
};
LevelTables precompute_level_tables(const TowerDescriptor& t, std::uint32_t level);

// Row p-1 of S_i (the only nonzero row).
std::vector<word> trace_row(const TowerDescriptor& t, std::uint32_t level);

TowerPoly to_poly(const BivariateElement& w);
BivariateElement to_bivariate(const TowerDescriptor& t, std::uint32_t level, const TowerPoly& f);

} // namespace astower
