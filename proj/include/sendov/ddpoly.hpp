#pragma once

#include <span>
#include <vector>

#include "sendov/dd.hpp"
#include "sendov/poly.hpp"

namespace sendov::detail {

// Polynomial with double-double coefficients. The constructions need this:
// a double coefficient vector perturbs a multiplicity-m critical root by
// O(eps^(1/m)), which at m = 4 already exceeds the residuals the scaling
// tests measure. Coefficients here carry ~31 digits, dropping that floor to
// O(eps^(2/m)).
struct DDPoly {
    std::vector<cdd> coeffs;  // ascending degree, leading nonzero

    static DDPoly from_roots(std::span<const cdouble> roots);  // monic
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cdd eval(const cdd& z) const;
    DDPoly derivative() const;
    DDPoly antiderivative_from(double beta) const;
    std::vector<cdouble> rounded() const;
};

// Aberth-Ehrlich in double-double arithmetic, seeded by the plain-double
// solve of the rounded coefficients.
std::vector<cdouble> find_roots_dd(const DDPoly& p, int dd_sweeps = 80);

// Critical distance of the monic polynomial with the given roots, expansion
// and differentiation and root-finding all compensated. Plain expansion from
// O(1) roots leaves absolute-eps coefficient noise that splits a
// multiplicity-m critical point by O(eps^(1/m)).
double critical_distance_dd(std::span<const cdouble> poly_roots, double beta);

}  // namespace sendov::detail
