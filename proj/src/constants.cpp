#include "sendov/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sendov {

SendovConstants compute_constants(int n) {
    if (n < 3) throw std::invalid_argument("compute_constants: n must be >= 3");
    SendovConstants c;
    c.n = n;
    c.k = (n + 1) / 3;  // largest integer k <= (n+1)/3

    const double m = n + 1;
    c.u1 = std::cos(2.0 * std::numbers::pi * c.k / m);
    c.u2 = std::cos(2.0 * std::numbers::pi * (c.k + 1) / m);

    const double den = 2.0 * (1.0 - c.u1) * (1.0 - c.u2);
    c.d1 = (-2.0 * c.u1 * c.u2 - 1.0) / den;
    c.d2 = -1.0 / den;

    const double d1 = c.d1, d2 = c.d2;
    c.d3 = (-1.0 - 4.0 * d1 - 3.0 * d1 * d1 + 2.0 * d2 * d2) / 2.0;
    c.d4 = (3.0 * d1 - 4.0 * d2 + 3.0 * d1 * d1 - 2.0 * d1 * d2 - 6.0 * d2 * d2) / 2.0;
    c.d5 = (2.0 + 4.0 * d1 + 5.0 * d2 + 2.0 * d1 * d1 + 4.0 * d1 * d2 + 3.0 * d2 * d2) / 2.0;
    c.d6 = (2.0 * d2 + 2.0 * d1 * d2 + 3.0 * d2 * d2) / 2.0;
    c.d = c.d3 * n + c.d4 + c.d5 / n + c.d6 / (double(n) * n);

    c.alpha = (n == 3 || n == 5) ? 1.5 : 2.0;
    c.delta = (n == 5) ? 7.0 / 225.0 : 0.0;

    c.gamma2 = 2.0 * (1.0 + d1 + d2) * (d1 - 2.0 * d2 + n * d2);
    c.gamma1 = -c.gamma2 + (-2.0 - 4.0 * d1) * n + (1.0 + 4.0 * d1 - 4.0 * d2);

    c.slope = d1 + d2 / n;
    c.curvature = c.d + c.delta;

    const auto sq = [](double u) { return 1.0 + 4.0 * u + 4.0 * u * u; };
    c.c3 = apply_T(sq(c.u1), sq(c.u2), c) / (n - 2);
    if (n >= 4) {
        const auto cub = [](double u) { return 8.0 * u * u + 8.0 * u * u * u; };
        c.c4 = apply_T(cub(c.u1), cub(c.u2), c) / (n - 3);
    }
    return c;
}

double apply_T(double f_u1, double f_u2, const SendovConstants& c) {
    const double n = c.n;
    return ((2.0 * n * c.u1 + n + 1.0) * f_u2 - (2.0 * n * c.u2 + n + 1.0) * f_u1) /
           (2.0 * (c.u1 - c.u2));
}

std::vector<CheckEntry> check_lemma8(const SendovConstants& c) {
    std::vector<CheckEntry> out;
    constexpr double kTol = 1e-10;
    const auto push = [&](std::string name, double margin, bool applicable = true) {
        out.push_back({std::move(name), !applicable || margin >= -kTol, applicable, margin});
    };
    const int n = c.n;

    // part 1: u2 < -1/2 <= u1, u1 <= 0 for n != 4, u2 > -1 for n not in {3,5}
    push("lemma8.1 u2 < -1/2", -0.5 - c.u2);
    push("lemma8.1 u1 >= -1/2", c.u1 + 0.5);
    push("lemma8.1 u1 <= 0", -c.u1, n != 4);
    push("lemma8.1 u2 > -1", c.u2 + 1.0, n != 3 && n != 5);

    // part 2
    push("lemma8.2 u1+u2 < 0", -(c.u1 + c.u2));
    push("lemma8.2 u1*u2 > -1", c.u1 * c.u2 + 1.0);

    // part 3
    push("lemma8.3 2n*u1+n+1 >= 1", 2.0 * n * c.u1 + n + 1.0 - 1.0);
    push("lemma8.3 2n*u2+n+1 < 0", -(2.0 * n * c.u2 + n + 1.0));

    // part 4
    push("lemma8.4 D1 < 0", -c.d1);
    push("lemma8.4 D2 < 0", -c.d2);

    // part 5 (limit claim): at finite n, check D1 sits above -1/3 and, once a
    // predecessor in the residue class exists, that it moved down toward it
    push("lemma8.5 D1 >= -1/3", c.d1 + 1.0 / 3.0);
    if (n >= 6) {
        const SendovConstants prev = compute_constants(n - 3);
        push("lemma8.5 D1(n) <= D1(n-3)", prev.d1 - c.d1);
    } else {
        push("lemma8.5 D1(n) <= D1(n-3)", 0.0, false);
    }

    // part 6: -1 < slope <= -3/10
    push("lemma8.6 slope > -1", c.slope + 1.0);
    push("lemma8.6 slope <= -3/10", -3.0 / 10.0 - c.slope);

    // part 7: the quadratic identity at u1 and u2
    const auto ident = [&](double u) {
        return 1.0 + (1.0 + c.d1 + c.d2) * (u - 1.0) - c.d2 * (2.0 * u * u - 2.0);
    };
    push("lemma8.7 identity at u1", -std::abs(ident(c.u1)));
    push("lemma8.7 identity at u2", -std::abs(ident(c.u2)));

    // Lemma 11
    push("lemma11.1 c3 < 1/2", 0.5 - c.c3, n != 3 && n != 4 && n != 6);
    const auto cub = [](double u) { return 8.0 * u * u + 8.0 * u * u * u; };
    push("lemma11.2 T(8u^2+8u^3) >= 0", apply_T(cub(c.u1), cub(c.u2), c));

    return out;
}

std::optional<RationalConstants> exact_constants(int n) {
    // rational only where s = u1+u2 and p = u1*u2 are rational
    Rational s, p;
    switch (n) {
        case 3: s = {-1, 1}; p = {0, 1}; break;           // u = 0, -1
        case 4: s = {-1, 2}; p = {-1, 4}; break;          // u = (-1 +- sqrt5)/4
        case 5: s = {-3, 2}; p = {1, 2}; break;           // u = -1/2, -1
        default: return std::nullopt;
    }
    RationalConstants r;
    const Rational den = (Rational(1) - s + p) * Rational(2);  // 2(1-u1)(1-u2)
    r.d1 = (Rational(-2) * p - Rational(1)) / den;
    r.d2 = Rational(-1) / den;
    const Rational d1 = r.d1, d2 = r.d2, half{1, 2};
    const Rational d3 = (Rational(-1) - Rational(4) * d1 - Rational(3) * d1 * d1 +
                         Rational(2) * d2 * d2) * half;
    const Rational d4 = (Rational(3) * d1 - Rational(4) * d2 + Rational(3) * d1 * d1 -
                         Rational(2) * d1 * d2 - Rational(6) * d2 * d2) * half;
    const Rational d5 = (Rational(2) + Rational(4) * d1 + Rational(5) * d2 +
                         Rational(2) * d1 * d1 + Rational(4) * d1 * d2 +
                         Rational(3) * d2 * d2) * half;
    const Rational d6 = (Rational(2) * d2 + Rational(2) * d1 * d2 + Rational(3) * d2 * d2) * half;
    const Rational nn{n, 1};
    r.d = d3 * nn + d4 + d5 / nn + d6 / (nn * nn);
    r.slope = d1 + d2 / nn;
    r.delta = (n == 5) ? Rational{7, 225} : Rational{0, 1};
    r.curvature = r.d + r.delta;
    return r;
}

}  // namespace sendov
