#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "astower/fp_poly.hpp"

namespace astower {

// Kind of the relation X_i^p - X_i - G_{i-1} defining level i:
// linear means G_{i-1} = X_{i-1}, power means G_{i-1} = X_{i-1}^{2p-1}.
enum class GeneratorKind { linear, power };

// Generator schedule of the primitive tower: level 1 is linear, level 2 is
// linear exactly when p = 2 and d is odd, every later level is power.
GeneratorKind generator_kind(std::size_t level, word p, std::size_t d);

struct LevelData {
    PrimePoly q;              // Q_i, monic of degree p^i d
    GeneratorKind kind = GeneratorKind::linear;
    Reducer red;              // reduction mod Q_i
    std::vector<word> trace;  // Tr_{U_i/F_p}(x_i^a), a < p^i d
    PrimePoly dqinv;          // Q_i'^{-1} mod Q_i (levels >= 1)

    // Data for the extension on top of this level; filled when level i+1 is
    // built. gamma is the generator image G_i(x_i) on the basis C_i.
    std::vector<word> gamma;
    std::map<word, std::vector<word>> beta_little; // n in N(d) -> PTr_n(gamma_i)
    std::vector<std::vector<word>> beta_big;       // j <= i    -> PTr_{p^j d}(gamma_i)
};

struct TowerOptions {
    // Pseudotrace/beta tables make iterated Frobenius, pseudotraces and the
    // equation solver available but cost O(p k^2 L(k)) to build; benchmarks of
    // the embedding alone can skip them.
    bool frobenius_tables = true;
};

struct TowerDescriptor {
    PrimeModulus mod;
    std::size_t d = 0;
    TowerOptions options;
    std::vector<LevelData> levels; // levels[i] describes U_i; height k = levels.size()-1

    TowerDescriptor() = default;
    TowerDescriptor(const TowerDescriptor&) = delete;
    TowerDescriptor& operator=(const TowerDescriptor&) = delete;
    TowerDescriptor(TowerDescriptor&&) = default;
    TowerDescriptor& operator=(TowerDescriptor&&) = default;

    word p() const { return mod.p; }
    std::size_t height() const { return levels.size() - 1; }
    std::size_t level_size(std::size_t i) const; // p^i * d, overflow-checked
};

// Element of U_i on the univariate basis C_i = (1, x_i, ..., x_i^{p^i d - 1}).
struct TowerElement {
    const TowerDescriptor* tower = nullptr;
    std::uint32_t level = 0;
    std::vector<word> coeffs; // length p^level * d

    bool operator==(const TowerElement&) const = default;
};

// P(R) by Horner with term-by-term products; cost O(deg(P)^2 k l).
PrimePoly naive_compose(const PrimePoly& P, const PrimePoly& R);

// P(R) by p-adic slicing of P and Horner in R(X^{p^n}); agrees with
// naive_compose.
PrimePoly compose(const PrimePoly& P, const PrimePoly& R);

// q^star with Q^star = q^star(Y^{2p-1}) = prod_{i<2p-1} Q(x^i Y) over
// A = F_p[X]/Phi_{2p-1}; requires Q monic.
PrimePoly star_product(const PrimePoly& Q, PrimeModulus m);

// Height-0 descriptor. Shifts Q_0 to Q_0(X-1) when Tr(x_0) = 0 and
// gcd(d, p) = 1; rejects reducible Q_0 and unshiftable zero traces.
TowerDescriptor init_tower(PrimeModulus m, const PrimePoly& q0, TowerOptions opts = {});

// Adds one level: Q_{i+1} from Q_i (via the star product for power levels)
// plus all per-level precomputation.
void extend_tower(TowerDescriptor& t);

TowerDescriptor build_tower(PrimeModulus m, const PrimePoly& q0, std::size_t k,
                            TowerOptions opts = {});

// Element basics (towerops).
TowerElement zero_element(const TowerDescriptor& t, std::uint32_t level);
TowerElement one_element(const TowerDescriptor& t, std::uint32_t level);
TowerElement scalar_element(const TowerDescriptor& t, std::uint32_t level, word value);
TowerElement make_element(const TowerDescriptor& t, std::uint32_t level, std::vector<word> coeffs);
TowerElement generator_element(const TowerDescriptor& t, std::uint32_t level); // x_level

bool is_zero(const TowerElement& a);
TowerElement add(const TowerElement& a, const TowerElement& b);
TowerElement sub(const TowerElement& a, const TowerElement& b);
TowerElement neg(const TowerElement& a);
TowerElement mul(const TowerElement& a, const TowerElement& b);
TowerElement mul_scalar(const TowerElement& a, word s);
TowerElement inv(const TowerElement& a);
TowerElement pow(const TowerElement& a, word e);

// Tr_{U_i/F_p}(a), from the stored trace series.
word absolute_trace(const TowerElement& a);

// gamma_i as an element of U_i per the schedule (x_i or x_i^{2p-1}).
TowerElement gamma_element(const TowerDescriptor& t, std::uint32_t level);

} // namespace astower
