#pragma once

#include <set>

#include "astower/embedding.hpp"
#include "astower/tower.hpp"

namespace astower {

// v^{p^n} for n < d, or n = p^j d. Levels >= 1 need the beta tables; level 0
// uses modular-composition powering.
TowerElement frobenius(const TowerElement& v, word n);

// PTr_n(v) = sum_{l<n} v^{p^l} for 1 <= n <= d, by exponent halving.
TowerElement little_pseudotrace(const TowerElement& v, word n);

// PTr_{p^j d}(v) for j <= level(v).
TowerElement pseudotrace(const TowerElement& v, std::size_t j);

// Tr_{U_i/U_j}(v) as the sum of the p^{i-j} conjugates under x -> x^{p^{p^j d}}.
TowerElement relative_trace(const TowerElement& v, std::uint32_t j);

// Exponents n for which PTr_n(gamma) is produced while computing PTr_d by the
// halving recursion ({1, 2, 4, 5} for d = 5).
std::set<word> little_exponent_set(std::size_t d);

// Fills beta_little (one instrumented halving run on gamma_i) and beta_big
// (instrumented p-power ladder) of level i; levels below must be done.
void precompute_betas(TowerDescriptor& t, std::uint32_t level);

} // namespace astower
