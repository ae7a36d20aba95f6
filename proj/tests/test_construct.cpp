#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sendov/construct.hpp"
#include "sendov/estimate.hpp"
#include "support.hpp"

using namespace sendov;
using testsupport::Rng;
using testsupport::max_coeff_diff;

TEST_CASE("prop6 at beta = 1 collapses to (z^6 - 1)/6") {
    const auto c = prop6_polynomial(1.0);
    CHECK(std::abs(c.u) == 0.0);
    CHECK(std::abs(c.v) == 0.0);
    CHECK(c.predicted == 1.0);
    CHECK(c.p.degree() == 6);
    CHECK(std::abs(c.p.coeffs()[0] - cdouble{-1.0 / 6.0, 0}) < 1e-15);
    CHECK(std::abs(c.p.coeffs()[6] - cdouble{1.0 / 6.0, 0}) < 1e-15);
    const auto pr = c.pprime_roots();
    CHECK(compensated_critical_distance({pr.data(), pr.size()}, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("prop6 structure at beta = 0.99") {
    const auto c = prop6_polynomial(0.99);
    CHECK(c.pprime.degree() == 5);
    CHECK(c.p.degree() == 6);
    CHECK(std::abs(c.p.eval({0.99, 0})) < 1e-14);
    // |u-beta| and |v-beta| agree to the t^(5/2) scale
    const double du = std::abs(c.u - cdouble{0.99, 0});
    const double dv = std::abs(c.v - cdouble{0.99, 0});
    CHECK(std::abs(du - dv) < 1e-5);
    // measured distance lands within ~1e-4 of the prediction at t = 0.01
    const auto m = measure(c);
    CHECK(std::abs(m.crit_contracted - c.predicted) < 1e-4);
}

TEST_CASE("prop6 squared distances match the quadratic series to O(t^3)") {
    for (double t : {0.01, 0.005}) {
        const auto c = prop6_polynomial(1.0 - t);
        const double series = 1.0 - (11.0 / 15.0) * t + (79.0 / 300.0) * t * t;
        const double du2 = std::norm(c.u - cdouble{c.beta, 0});
        const double dv2 = std::norm(c.v - cdouble{c.beta, 0});
        CHECK(std::abs(du2 - series) < 2.5 * t * t * t);
        CHECK(std::abs(dv2 - series) < 2.5 * t * t * t);
    }
}

TEST_CASE("prop6 expanded coefficients match the series to O(t^{5/2})") {
    const double r15 = std::sqrt(15.0);
    for (double t : {0.01, 0.005}) {
        const auto c = prop6_polynomial(1.0 - t);
        const double s3 = std::pow(t, 1.5);
        const cdouble i{0, 1};
        const cdouble a4 = (5.0 / 2.0) * t - i * (r15 / 6.0) * s3 - (2.0 / 3.0) * t * t;
        const cdouble a3 = (2.0 / 3.0) * t - i * (2.0 * r15 / 15.0) * s3 + 3.0 * t * t;
        const cdouble a2 = i * (4.0 * r15 / 45.0) * s3 + (7.0 / 5.0) * t * t;
        const cdouble a1 = {(-1.0 / 15.0) * t * t, 0};
        const cdouble a0 = {0, 0};
        const auto& pc = c.pprime.coeffs();
        const double bound = 4.0 * std::pow(t, 2.5);
        CHECK(std::abs(pc[4] - a4) < 1e-14);  // a4 series is exact
        CHECK(std::abs(pc[3] - a3) < bound);
        CHECK(std::abs(pc[2] - a2) < bound);
        CHECK(std::abs(pc[1] - a1) < bound);
        CHECK(std::abs(pc[0] - a0) < bound);
    }
    // the a3 residual really scales like t^{5/2}: ratio across a half-step
    const auto ca = prop6_polynomial(1.0 - 0.01);
    const auto cb = prop6_polynomial(1.0 - 0.005);
    const auto series3 = [&](double t) {
        const cdouble i{0, 1};
        return cdouble{(2.0 / 3.0) * t + 3.0 * t * t, 0} -
               i * (2.0 * std::sqrt(15.0) / 15.0) * std::pow(t, 1.5);
    };
    const double ra = std::abs(ca.pprime.coeffs()[3] - series3(0.01));
    const double rb = std::abs(cb.pprime.coeffs()[3] - series3(0.005));
    CHECK(ra / rb > 4.5);
    CHECK(ra / rb < 7.0);
}

TEST_CASE("prop6 rejects out-of-range beta") {
    CHECK_THROWS_AS(prop6_polynomial(0.75), std::invalid_argument);
    CHECK_THROWS_AS(prop6_polynomial(1.25), std::invalid_argument);
    CHECK_THROWS_AS(prop6_polynomial(-0.1), std::invalid_argument);
}

namespace {
// independent evaluation of the Z_i display, used as the oracle for solve_x
double z_display(const SendovConstants& c, double u, double x) {
    const int n = c.n;
    const double b1 = 1.0 + c.d1 + c.d2 / n;
    const double b2 = (n - 1.0) * c.d2;
    const double t1 = (double(n) * n - n) * b1 * b1 / 2.0 + (n - 2.0) * b1 * b2 + b2;
    return (n * c.d - 2.0 * c.d - 2.0 * x) / n +
           (t1 + 2.0 * c.d + 2.0 * x) * (2.0 * u + 2.0) / (n - 1.0) -
           (n - 1.0) * c.d2 * b1 * (4.0 * u * u + 4.0 * u + 1.0) +
           0.5 * (c.gamma1 + c.gamma2 * u) / (1.0 - u);
}
}  // namespace

TEST_CASE("solve_x residuals") {
    for (int n = 3; n <= 12; ++n) {
        const auto c = compute_constants(n);
        const auto xs = solve_x(c);
        CAPTURE(n);
        CHECK(std::abs(xs.z_residuals.first) < 1e-13);
        CHECK(std::abs(xs.z_residuals.second) < 1e-9);
        // solving Z2 = 0 instead lands on the same x
        const double z0 = z_display(c, c.u2, 0.0);
        const double coeff = z_display(c, c.u2, 1.0) - z0;
        const double x2 = -z0 / coeff;
        CHECK(std::abs(x2 - xs.x) < 1e-9);
    }
}

TEST_CASE("prop7 at beta = 1 collapses to (z^{n+1} - 1)/(n+1)") {
    for (int n : {3, 5, 8}) {
        const auto c = prop7_polynomial(n, 1.0);
        CHECK(c.z0 == 0.0);
        CHECK(c.qcoeffs[0] == 0.0);
        CHECK(c.qcoeffs[1] == 0.0);
        CHECK(c.p.degree() == n + 1);
        CHECK(std::abs(c.p.coeffs()[0] - cdouble{-1.0 / (n + 1.0), 0}) < 1e-15);
        CHECK(std::abs(c.p.coeffs()[n + 1] - cdouble{1.0 / (n + 1.0), 0}) < 1e-15);
        CHECK(measure(c).crit_raw == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("prop7 n=5 attains D, not D + Delta") {
    const auto c = prop7_polynomial(5, 0.99);
    const double t = 0.01;
    CHECK(c.predicted ==
          doctest::Approx(1.0 - (11.0 / 30.0) * t + (1.0 / 30.0) * t * t).epsilon(1e-14));
    const auto m = measure(c);
    CHECK(std::abs(m.crit_contracted - c.predicted) < 1e-5);
}

TEST_CASE("prop7 construction fields and q-discriminant") {
    const auto cst = compute_constants(6);
    const auto c = prop7_polynomial(6, 0.99);
    const double t = 0.01;
    CHECK(c.b1 == doctest::Approx(1.0 + cst.d1 + cst.d2 / 6).epsilon(1e-15));
    CHECK(c.b2 == doctest::Approx(5.0 * cst.d2).epsilon(1e-15));
    CHECK(c.z0 == doctest::Approx(-c.b1 * t - cst.d * t * t).epsilon(1e-15));
    // q has a conjugate root pair for beta near 1
    const double disc = c.qcoeffs[1] * c.qcoeffs[1] - 4.0 * c.qcoeffs[0];
    CHECK(disc < 0.0);
    CHECK(c.q_root1 == std::conj(c.q_root2));
    CHECK(c.pprime.degree() == 6);
    CHECK(c.p.degree() == 7);
    CHECK(std::abs(c.p.eval({0.99, 0})) < 1e-14);
}

TEST_CASE("prop7 polynomials are real") {
    for (int n = 3; n <= 12; ++n)
        for (double beta : {0.999, 0.99, 0.95}) {
            CAPTURE(n);
            CAPTURE(beta);
            CHECK(prop7_polynomial(n, beta).p.is_real(1e-12));
        }
}

TEST_CASE("prop7 n=4 roots stay within O(t^3) of the disk") {
    std::vector<double> grid{0.04, 0.02, 0.01, 0.005};
    std::vector<double> overshoot;
    for (double t : grid) {
        const auto m = measure(prop7_polynomial(4, 1.0 - t));
        CHECK(m.max_modulus - 1.0 < 10.0 * t * t * t);
        overshoot.push_back(m.max_modulus - 1.0);
    }
    const double slope = scaling_exponent(grid, overshoot);
    CHECK(slope > 2.5);
    CHECK(slope < 3.5);
}

TEST_CASE("prop7 expanded coefficients match the displayed expansion") {
    for (int n : {4, 6, 8}) {
        for (double t : {0.01, 0.005}) {
            const auto c = prop7_polynomial(n, 1.0 - t);
            const auto cst = compute_constants(n);
            const auto& pc = c.pprime.coeffs();
            // z^{n-1} and z^{n-2} coefficients are exact polynomial identities
            const double an1 =
                (n * c.b1 + c.b2) * t + (n * cst.d - 2.0 * cst.d - 2.0 * c.x) * t * t;
            const double an2 = -c.b2 * t + (c.t1 + 2.0 * cst.d + 2.0 * c.x) * t * t;
            // z^{n-1} is an exact identity; z^{n-2} and z^{n-3} hold to O(t^3)
            CHECK(std::abs(pc[n - 1] - cdouble{an1, 0}) < 1e-13);
            CHECK(std::abs(pc[n - 2] - cdouble{an2, 0}) < 40.0 * t * t * t);
            // z^{n-3} matches -(n-2) b1 b2 t^2 up to O(t^3)
            const double an3 = -(n - 2.0) * c.b1 * c.b2 * t * t;
            CHECK(std::abs(pc[n - 3] - cdouble{an3, 0}) < 40.0 * t * t * t);
        }
        // and that z^{n-3} residual scales like t^3
        const auto ca = prop7_polynomial(n, 1.0 - 0.01);
        const auto cb = prop7_polynomial(n, 1.0 - 0.005);
        const double ra =
            std::abs(ca.pprime.coeffs()[n - 3] - cdouble{-(n - 2.0) * ca.b1 * ca.b2 * 1e-4, 0});
        const double rb = std::abs(
            cb.pprime.coeffs()[n - 3] - cdouble{-(n - 2.0) * cb.b1 * cb.b2 * 2.5e-5, 0});
        CHECK(ra / rb > 6.2);
        CHECK(ra / rb < 10.6);
    }
}

TEST_CASE("prop7 rejects bad inputs") {
    CHECK_THROWS_AS(prop7_polynomial(2, 0.99), std::invalid_argument);
    CHECK_THROWS_AS(prop7_polynomial(5, 0.5), std::invalid_argument);
}

TEST_CASE("contract_to_disk is the identity on members") {
    const RootedPoly p = make_rooted({{0.9, 0}, {0, 1}, {0, -1}}, {1, 0}, 0.9);
    const RootedPoly q = contract_to_disk(p);
    CHECK(q.roots == p.roots);
    CHECK(contraction_factor(p) == 0.0);
}

TEST_CASE("lemma-12 map: single offender at 1.02 with beta 0.9") {
    const double beta = 0.9;
    const cdouble z{1.02, 0};
    const double c = (std::norm(z) - 1.0) / std::norm(z - cdouble{beta, 0});
    CHECK(c == doctest::Approx(2.805556).epsilon(1e-6));
    // the extremal offender lands exactly on the Mobius image, inside the disk
    const cdouble image = lemma12_image(z, beta);
    CHECK(std::abs(image - cdouble{0.6833333333333, 0}) < 1e-12);
    const auto mapped = contract_roots(std::vector<cdouble>{{beta, 0}, z}, c, beta);
    CHECK(std::abs(mapped[1] - image) < 1e-14);
    double maxmod = 0.0;
    for (const auto& w : mapped) maxmod = std::max(maxmod, std::abs(w));
    CHECK(maxmod <= 1.0);
    // but the operation itself refuses c >= 1
    const RootedPoly rp = make_rooted({{beta, 0}, z}, {1, 0}, beta);
    CHECK_THROWS_AS(contract_to_disk(rp), std::invalid_argument);
}

TEST_CASE("contract_to_disk rejects roots near beta and keeps beta fixed") {
    RootedPoly close = make_rooted({{0.9, 0}, {0.95, 0.0}, {0, 1}}, {1, 0}, 0.9);
    CHECK_THROWS_AS(contract_to_disk(close), std::invalid_argument);

    RootedPoly p = make_rooted({{0.9, 0}, {1.000001, 0.01}, {0, -1}}, {1, 0}, 0.9);
    const RootedPoly q = contract_to_disk(p);
    CHECK(q.roots[q.beta_index] == cdouble{0.9, 0});
    CHECK(q.max_modulus() <= 1.0 + 1e-14);
    for (std::size_t i = 0; i < p.roots.size(); ++i)
        if (i != p.beta_index) CHECK(std::abs(q.roots[i]) <= std::abs(p.roots[i]));
}

TEST_CASE("contraction scales the critical distance by exactly 1 - c") {
    // well-separated roots, one outside: both sides measurable in plain double
    Rng rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<cdouble> roots{{0.6, 0}};
        for (int k = 0; k < 4; ++k) roots.push_back(0.8 * rng.disk() - cdouble{0.3, 0});
        roots.push_back({1.0 + 0.01 * (1 + trial), 0.3});
        const RootedPoly p = make_rooted(roots, {1, 0}, 0.6);
        const double c = contraction_factor(p);
        REQUIRE(c > 0.0);
        REQUIRE(c < 1.0);
        const RootedPoly q = contract_to_disk(p);
        const double before = critical_distance(p.to_poly(), 0.6);
        const double after = critical_distance(q.to_poly(), 0.6);
        CHECK(after == doctest::Approx((1.0 - c) * before).epsilon(1e-10));
    }
}

TEST_CASE("prop7 contraction shifts the distance by O(t^3)") {
    const auto c = prop7_polynomial(6, 0.99);
    const auto m = measure(c);
    CHECK(m.contracted);
    const double shift = std::abs(m.crit_contracted - m.crit_raw);
    CHECK(shift > 0.0);
    CHECK(shift < 10.0 * 0.01 * 0.01 * 0.01);
}

TEST_CASE("constructions land in S after contraction") {
    for (double beta : {0.999, 0.99, 0.95}) {
        const auto c6 = prop6_polynomial(beta);
        CHECK(in_S(contracted_member(c6.p, beta), DiskTolerance{1e-12}));
        const auto c7 = prop7_polynomial(5, beta);
        CHECK(in_S(contracted_member(c7.p, beta), DiskTolerance{1e-6}));
        CHECK(in_S(contracted_member(c7.p, beta), DiskTolerance{1e-12}));
    }
}

TEST_CASE("compensated path agrees with the analytic derivative roots") {
    const auto c = prop6_polynomial(0.99);
    const auto roots = c.pprime_roots();
    const double cd = compensated_critical_distance({roots.data(), roots.size()}, c.beta);
    const double analytic = std::min(std::abs(c.u - cdouble{0.99, 0}),
                                     std::abs(c.v - cdouble{0.99, 0}));
    CHECK(std::abs(cd - analytic) < 5e-9);
}
