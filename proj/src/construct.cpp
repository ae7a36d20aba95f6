#include "sendov/construct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sendov/ddpoly.hpp"

namespace sendov {

namespace {

void require_beta_range(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must be in [0, 1]");
    if (1.0 - beta > 0.2) throw std::invalid_argument("construction needs 1 - beta <= 0.2");
}

}  // namespace

Prop6Construction prop6_polynomial(double beta) {
    require_beta_range(beta);
    Prop6Construction out;
    out.beta = beta;
    const double t = 1.0 - beta;
    out.t = t;
    const double s = std::sqrt(t);           // principal root of t >= 0
    const double r15 = std::sqrt(15.0);
    const cdouble i{0.0, 1.0};

    out.u = -i * (r15 / 15.0) * s - (6.0 / 10.0) * t + i * (r15 / 300.0) * (s * s * s) -
            (33.0 / 600.0) * (t * t);
    out.v = i * (4.0 * r15 / 15.0) * s - (1.0 / 10.0) * t +
            i * (46.0 * r15 / 300.0) * (s * s * s) + (532.0 / 600.0) * (t * t);

    const auto roots = out.pprime_roots();
    out.pprime = ComplexPoly::from_roots(roots, {1.0, 0.0});
    out.p = out.pprime.antiderivative_from(beta);
    out.predicted = 1.0 - (11.0 / 30.0) * t + (29.0 / 450.0) * t * t;
    return out;
}

XSolve solve_x(const SendovConstants& c) {
    const int n = c.n;
    const double b1 = 1.0 + c.d1 + c.d2 / n;
    const double b2 = (n - 1.0) * c.d2;
    const double t1 = (double(n) * n - n) * b1 * b1 / 2.0 + (n - 2.0) * b1 * b2 + b2;
    const auto Z = [&](double u, double x) {
        return (n * c.d - 2.0 * c.d - 2.0 * x) / n +
               (t1 + 2.0 * c.d + 2.0 * x) * (2.0 * u + 2.0) / (n - 1.0) -
               (n - 1.0) * c.d2 * b1 * (4.0 * u * u + 4.0 * u + 1.0) +
               0.5 * (c.gamma1 + c.gamma2 * u) / (1.0 - u);
    };
    // Z1 is linear in x with coefficient -2/n + (4 u1 + 4)/(n-1), nonzero by
    // Lemma 8 part 3
    const double z_at_0 = Z(c.u1, 0.0);
    const double coeff = Z(c.u1, 1.0) - z_at_0;
    XSolve out;
    out.x = -z_at_0 / coeff;
    out.z_residuals = {Z(c.u1, out.x), Z(c.u2, out.x)};
    return out;
}

std::vector<cdouble> Prop7Construction::pprime_roots() const {
    std::vector<cdouble> r(static_cast<std::size_t>(n - 2), cdouble{z0, 0.0});
    r.push_back(q_root1);
    r.push_back(q_root2);
    return r;
}

Prop7Construction prop7_polynomial(int n, double beta) {
    if (n < 3) throw std::invalid_argument("prop7_polynomial: n must be >= 3");
    require_beta_range(beta);

    const SendovConstants c = compute_constants(n);
    const XSolve xs = solve_x(c);

    Prop7Construction out;
    out.n = n;
    out.beta = beta;
    const double t = 1.0 - beta;
    out.t = t;
    out.b1 = 1.0 + c.d1 + c.d2 / n;
    out.b2 = (n - 1.0) * c.d2;
    out.x = xs.x;
    out.z_residuals = xs.z_residuals;
    out.t1 = (double(n) * n - n) * out.b1 * out.b1 / 2.0 + (n - 2.0) * out.b1 * out.b2 + out.b2;
    out.z0 = -out.b1 * t - c.d * t * t;

    const double q1 = (out.b2 + 2.0 * out.b1) * t - 2.0 * out.x * t * t;
    const double q0 = -out.b2 * t + (out.b1 * out.b1 + out.b2 + 2.0 * c.d + 2.0 * out.x) * t * t;
    out.qcoeffs = {q0, q1, 1.0};

    const double disc = q1 * q1 - 4.0 * q0;
    if (disc <= 0.0) {
        const double re = -q1 / 2.0, im = std::sqrt(-disc) / 2.0;
        out.q_root1 = {re, im};
        out.q_root2 = {re, -im};
    } else {
        // t = 0 collapses q to z^2; keep the real pair for completeness
        out.q_root1 = {(-q1 + std::sqrt(disc)) / 2.0, 0.0};
        out.q_root2 = {(-q1 - std::sqrt(disc)) / 2.0, 0.0};
    }

    out.pprime = ComplexPoly::from_roots(out.pprime_roots(), {1.0, 0.0});
    out.p = out.pprime.antiderivative_from(beta);
    out.predicted = 1.0 + c.slope * t + c.d * t * t;
    return out;
}

cdouble lemma12_image(cdouble z, double beta) {
    return (1.0 - beta * z) / (std::conj(z) - beta);
}

std::vector<cdouble> contract_roots(std::span<const cdouble> roots, double c, double beta) {
    std::vector<cdouble> out;
    out.reserve(roots.size());
    for (const cdouble& z : roots) out.push_back(z - c * (z - cdouble{beta, 0.0}));
    return out;
}

double contraction_factor(const RootedPoly& p) {
    double c = 0.0;
    for (const cdouble& z : p.roots) {
        const double m2 = std::norm(z);
        if (m2 > 1.0) {
            const double dz = std::norm(z - cdouble{p.beta, 0.0});
            c = std::max(c, (m2 - 1.0) / dz);
        }
    }
    return c;
}

RootedPoly contract_to_disk(const RootedPoly& p) {
    if (p.beta_index >= p.roots.size() || p.roots[p.beta_index] != cdouble{p.beta, 0.0})
        throw std::invalid_argument("contract_to_disk: designated root must equal beta");
    for (std::size_t i = 0; i < p.roots.size(); ++i) {
        if (i == p.beta_index) continue;
        const cdouble z = p.roots[i];
        if (z == cdouble{p.beta, 0.0}) continue;
        if (std::abs(z - cdouble{p.beta, 0.0}) < 0.1)
            throw std::invalid_argument("contract_to_disk: root within 0.1 of beta");
    }

    const double c = contraction_factor(p);
    if (c == 0.0) return p;
    if (c >= 1.0) throw std::invalid_argument("contract_to_disk: contraction factor >= 1");

    RootedPoly out = p;
    out.roots = contract_roots(p.roots, c, p.beta);
    out.roots[p.beta_index] = {p.beta, 0.0};
    for (const cdouble& z : out.roots)
        if (std::abs(z) > 1.0 + 1e-14)
            throw std::runtime_error("contract_to_disk: root left outside after contraction");
    return out;
}

RootedPoly contracted_member(const ComplexPoly& p, double beta) {
    RootedPoly raw = make_rooted(find_roots(p), p.coeffs().back(), beta);
    return contract_to_disk(raw);
}

namespace {

// The contraction map is affine with fixed point beta, so the critical points
// of the contracted polynomial are the images of the original ones and the
// critical distance scales by exactly (1 - c).
ConstructionMeasurement measure_impl(std::span<const cdouble> pprime_roots, const ComplexPoly& p,
                                     double beta) {
    ConstructionMeasurement m;
    double raw = std::numeric_limits<double>::infinity();
    for (const cdouble& w : pprime_roots) raw = std::min(raw, std::abs(cdouble{beta, 0.0} - w));
    m.crit_raw = raw;

    RootedPoly member = make_rooted(find_roots(p), p.coeffs().back(), beta);
    m.max_modulus = member.max_modulus();
    m.contraction = contraction_factor(member);
    m.contracted = m.contraction > 0.0;
    m.crit_contracted = (1.0 - m.contraction) * raw;
    return m;
}

}  // namespace

ConstructionMeasurement measure(const Prop6Construction& c) {
    const auto roots = c.pprime_roots();
    return measure_impl(std::span<const cdouble>(roots.data(), roots.size()), c.p, c.beta);
}

ConstructionMeasurement measure(const Prop7Construction& c) {
    const auto roots = c.pprime_roots();
    return measure_impl(roots, c.p, c.beta);
}

double compensated_critical_distance(std::span<const cdouble> pprime_roots, double beta) {
    const detail::DDPoly pprime = detail::DDPoly::from_roots(pprime_roots);
    const detail::DDPoly p = pprime.antiderivative_from(beta);
    double best = std::numeric_limits<double>::infinity();
    for (const cdouble& w : detail::find_roots_dd(p.derivative()))
        best = std::min(best, std::abs(cdouble{beta, 0.0} - w));
    return best;
}

}  // namespace sendov
