#pragma once

#include <array>
#include <utility>
#include <vector>

#include "sendov/constants.hpp"
#include "sendov/poly.hpp"

namespace sendov {

// Degree-6 near-extremal family: P' = (z-u)^4 (z-v) with u, v built from
// half-integer-power series in t = 1-beta, P the beta-anchored antiderivative.
struct Prop6Construction {
    double beta = 1.0;
    double t = 0.0;
    cdouble u, v;
    ComplexPoly pprime;
    ComplexPoly p;
    double predicted = 1.0;  // 1 - (11/30) t + (29/450) t^2

    std::array<cdouble, 5> pprime_roots() const { return {u, u, u, u, v}; }
};

Prop6Construction prop6_polynomial(double beta);  // requires 0 <= 1-beta <= 0.2

struct XSolve {
    double x = 0.0;
    std::pair<double, double> z_residuals;  // Z1(x), Z2(x)
};

// Solves the linear equation Z1 = 0 for x and reports both residuals;
// Z1 and Z2 are proportional, so Z2(x) vanishes to rounding as well.
XSolve solve_x(const SendovConstants& c);

// Real near-extremal family for every n >= 3: P' = (z-z0)^(n-2) q(z),
// q monic quadratic with conjugate roots, P the beta-anchored antiderivative
// of degree n+1.
struct Prop7Construction {
    int n = 0;
    double beta = 1.0;
    double t = 0.0;
    double b1 = 0, b2 = 0;
    double z0 = 0;
    double x = 0;
    double t1 = 0;
    std::array<double, 3> qcoeffs{};  // ascending: q(z) = q0 + q1 z + z^2
    cdouble q_root1, q_root2;
    ComplexPoly pprime;
    ComplexPoly p;
    std::pair<double, double> z_residuals;
    double predicted = 1.0;  // 1 + slope t + D t^2

    std::vector<cdouble> pprime_roots() const;
};

Prop7Construction prop7_polynomial(int n, double beta);  // n >= 3, 1-beta <= 0.2

// Lemma-12 machinery. contract_roots applies z -> z - c(z - beta) to every
// root; lemma12_image is the Mobius point (1 - beta z)/(conj(z) - beta) that
// the maximal offender lands on.
cdouble lemma12_image(cdouble z, double beta);
std::vector<cdouble> contract_roots(std::span<const cdouble> roots, double c, double beta);

// The contraction coefficient c = max (|z|^2-1)/|z-beta|^2 over roots outside
// the disk; 0 when the polynomial is already a member.
double contraction_factor(const RootedPoly& p);

// Identity on S-members; otherwise contracts every root into the closed unit
// disk. Rejects inputs whose non-designated roots come within 0.1 of beta and
// contraction factors >= 1.
RootedPoly contract_to_disk(const RootedPoly& p);

// Measurement record for a construction: critical distance before and after
// the Lemma-12 contraction, the max root modulus of p, and the factor used.
// The raw distance comes from the construction's analytic derivative roots;
// contracting scales it by exactly (1 - c) since the root map is affine.
struct ConstructionMeasurement {
    double crit_raw = 0;
    double crit_contracted = 0;
    double max_modulus = 0;
    double contraction = 0;
    bool contracted = false;
};

ConstructionMeasurement measure(const Prop6Construction& c);
ConstructionMeasurement measure(const Prop7Construction& c);

// The contracted polynomial as a RootedPoly (for membership checks).
RootedPoly contracted_member(const ComplexPoly& p, double beta);

// critical_distance on the compensated path: the polynomial with the given
// derivative roots is anchored at beta with double-double coefficients and
// its critical points re-found in double-double Aberth. A plain double
// coefficient vector moves a multiplicity-m critical root by O(eps^(1/m)),
// which drowns the scaling residuals the acceptance tests measure.
double compensated_critical_distance(std::span<const cdouble> pprime_roots, double beta);

}  // namespace sendov
