#pragma once

#include "astower/embedding.hpp"
#include "astower/isomorphism.hpp"
#include "astower/tower.hpp"

// Slow reference implementations for testing only: multivariate-basis
// arithmetic by literal polynomial reduction against the triangular
// relations, naive Frobenius and pseudotrace, and basis bridges.
// Never linked into the core library.

namespace astower::oracle {

inline constexpr std::size_t kOracleSizeGuard = 4096;

// Element on the multivariate basis B_i, mixed-radix indexed, e_0 fastest.
struct MvElement {
    std::uint32_t level = 0;
    std::vector<word> coeffs; // length p^level * d
};

// Multivariate arithmetic context: the tower relations x_{j+1}^p = x_{j+1} +
// gamma_j with gamma_j given on B_j. Covers both the primitive tower (gamma
// from the generator schedule) and arbitrary general towers (gamma' as given).
struct MvContext {
    const TowerDescriptor* tower = nullptr;
    std::vector<std::vector<word>> gamma; // gamma[j] on B_j, one per relation

    std::size_t size(std::uint32_t level) const { return tower->level_size(level); }
};

MvContext primitive_context(const TowerDescriptor& t, std::uint32_t up_to_level);
MvContext general_context(const GeneralTower& g);

MvElement mv_zero(const MvContext& c, std::uint32_t level);
MvElement mv_scalar(const MvContext& c, std::uint32_t level, word v);
MvElement mv_from(const MvContext& c, std::uint32_t level, std::vector<word> coeffs);
MvElement mv_generator(const MvContext& c, std::uint32_t level); // top variable x_level

bool mv_is_zero(const MvElement& a);
MvElement mv_add(const MvContext& c, const MvElement& a, const MvElement& b);
MvElement mv_sub(const MvContext& c, const MvElement& a, const MvElement& b);
MvElement mv_mul(const MvContext& c, const MvElement& a, const MvElement& b);
MvElement mv_mul_scalar(const MvContext& c, const MvElement& a, word s);
MvElement mv_pow(const MvContext& c, const MvElement& a, word e);

// a^{p^n} by n-fold p-th powering.
MvElement naive_frobenius(const MvContext& c, const MvElement& a, word n);
// sum_{l<n} a^{p^l}.
MvElement naive_pseudotrace(const MvContext& c, const MvElement& a, word n);

// Trace of the multiplication-by-a endomorphism, entry by entry.
word trace_of_multiplication(const MvContext& c, const MvElement& a);

// Columns of an F_p-linear map on B_level.
struct MvMatrix {
    std::uint32_t level = 0;
    std::vector<std::vector<word>> cols;
};

// The p-th power map: column e is the naive p-th power of the e-th basis
// monomial. Applying it n times is literal n-fold naive powering, usable for
// long conjugate chains.
MvMatrix frobenius_matrix(const MvContext& c, std::uint32_t level);

// Change of basis C_level -> B_level: column a holds x_level^a on B_level.
MvMatrix power_basis_matrix(const MvContext& c, std::uint32_t level);

MvElement apply_matrix(const MvContext& c, const MvMatrix& m, const std::vector<word>& v);

// C_i -> B_i bridge for the primitive tower.
MvElement basis_convert(const MvContext& c, const TowerElement& a);
MvElement convert_bivariate(const MvContext& c, const BivariateElement& w);

// Q evaluated at the top variable of the level; zero iff the chain and the
// relations are consistent.
MvElement eval_poly_at_generator(const MvContext& c, const PrimePoly& q, std::uint32_t level);

// Re-export of the core distinct-degree test (single implementation).
using astower::irreducible;

} // namespace astower::oracle
