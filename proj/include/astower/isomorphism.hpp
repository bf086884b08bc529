#pragma once

#include "astower/embedding.hpp"
#include "astower/frobenius.hpp"
#include "astower/tower.hpp"
#include "astower/tower_poly.hpp"

namespace astower {

// Element of U'_i on the multivariate basis B'_i = {x'_0^{e_0} ... x'_i^{e_i}}
// (e_0 < d, e_j < p), mixed-radix indexed with e_0 fastest.
struct GeneralElement {
    const TowerDescriptor* tower = nullptr;
    std::uint32_t level = 0;
    std::vector<word> coeffs; // length p^level * d

    bool operator==(const GeneralElement&) const = default;
};

GeneralElement make_general(const TowerDescriptor& t, std::uint32_t level,
                            std::vector<word> coeffs);
GeneralElement general_zero(const TowerDescriptor& t, std::uint32_t level);
GeneralElement general_generator(const TowerDescriptor& t, std::uint32_t level); // x'_level
GeneralElement general_slice(const GeneralElement& v, std::size_t j);

// An arbitrary Artin-Schreier tower over the same U_0, described by the
// generator values gamma'_i in U'_i, plus the images s_i realizing the
// isomorphism onto the primitive tower.
struct GeneralTower {
    const TowerDescriptor* tower = nullptr;
    std::vector<GeneralElement> generators;  // gamma'_i at level i, i < k
    std::vector<TowerElement> images;        // s_i at level i, i <= k
    std::vector<BivariateElement> images_pd; // push_down(s_i), i >= 1

    std::size_t height() const { return generators.size(); }
    bool images_ready() const { return images.size() == generators.size() + 1; }
};

GeneralTower make_general_tower(const TowerDescriptor& t, std::vector<GeneralElement> generators);

// Parameterization A (degree < p over the coefficient field) with w = A(b) in
// U[X]/(X^p - X - gamma); requires b to generate and to be a root of an
// Artin-Schreier polynomial over U (true for the push-downs of the images).
// Throws if the verification A(b) = w fails.
TowerPoly find_parameterization(const TowerPoly& w, const TowerPoly& b,
                                const TowerElement& gamma);

// delta with delta^p - delta = alpha in U_0, by linear algebra over F_p;
// canonical root: constant coordinate zero.
TowerElement naive_solve(const TowerElement& alpha);

// mu with mu^{p^{p^{i-1}d}} - mu = eta, by back-substitution on the strictly
// upper-triangular system; requires push-down coordinate p-1 of eta to vanish.
TowerElement approximate_as(const TowerElement& eta);

// delta with delta^p - delta = alpha; requires Tr_{U_i/F_p}(alpha) = 0.
TowerElement solve_artin_schreier(const TowerElement& alpha);

// sigma_{s_i}(v), Horner in the bivariate basis.
TowerElement apply_isomorphism(const GeneralTower& g, const GeneralElement& v);

// sigma_{s_i}^{-1}(t), via find_parameterization against push_down(s_i).
GeneralElement apply_inverse(const GeneralTower& g, const TowerElement& v);

// Finds every image s_i (s_0 = x_0); rejects generator sequences that do not
// define a tower of fields.
void compute_images(GeneralTower& g);

} // namespace astower
