#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sendov/rational.hpp"

namespace sendov {

// The scalar constants attached to a given n >= 3: the cosine pair u1, u2 at
// the two (n+1)-th-root-of-unity angles bracketing 2pi/3, the derived D's,
// the quadratic data (slope, curvature), the Gamma pair, and the T-functional
// ratios c3, c4. c4 is absent at n = 3 where its denominator n-3 vanishes.
struct SendovConstants {
    int n = 0;
    int k = 0;
    double u1 = 0, u2 = 0;
    double d1 = 0, d2 = 0, d3 = 0, d4 = 0, d5 = 0, d6 = 0;
    double d = 0;          // d3*n + d4 + d5/n + d6/n^2
    double alpha = 2.0;    // 3/2 for n in {3,5}, else 2
    double delta = 0.0;    // 7/225 iff n == 5
    double gamma1 = 0, gamma2 = 0;
    double c3 = 0;
    std::optional<double> c4;  // absent iff n == 3
    double slope = 0;      // d1 + d2/n
    double curvature = 0;  // d + delta
};

SendovConstants compute_constants(int n);  // throws std::invalid_argument for n < 3

// The two-point functional T applied to precomputed values f(u1), f(u2).
double apply_T(double f_u1, double f_u2, const SendovConstants& c);

template <class F>
double apply_T(F&& f, const SendovConstants& c) {
    return apply_T(static_cast<double>(f(c.u1)), static_cast<double>(f(c.u2)), c);
}

// One named check per Lemma-8 part (1-7) plus the two Lemma-11 parts.
// margin is signed: how far inside the inequality the value sits (for
// equality checks, -|residual|). pass means margin >= -1e-10. Checks that do
// not apply at this n (e.g. c3 < 1/2 at n in {3,4,6}) are reported with
// applicable = false and pass = true.
struct CheckEntry {
    std::string name;
    bool pass = false;
    bool applicable = true;
    double margin = 0.0;
};

std::vector<CheckEntry> check_lemma8(const SendovConstants& c);

// Exact rational values where they exist: n in {3, 4, 5}, where u1 + u2 and
// u1*u2 are rational so d1, d2 and everything downstream are too.
struct RationalConstants {
    Rational d1, d2, slope, d, delta, curvature;
};

std::optional<RationalConstants> exact_constants(int n);

}  // namespace sendov
