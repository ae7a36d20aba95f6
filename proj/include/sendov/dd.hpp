#pragma once

#include <cmath>
#include <complex>

namespace sendov::detail {

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms with
// FMA products). Only what the root-finder's cluster refinement needs: a
// multiple root recovered from expanded coefficients carries an O(eps^(1/m))
// error in plain doubles, which is the accuracy floor of the whole pipeline,
// so the final Aberth sweeps run in ~31 significant digits.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd sub(dd a, dd b) { return add(a, {-b.hi, -b.lo}); }

inline dd mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd div(dd a, dd b) {
    const double q1 = a.hi / b.hi;
    dd r = sub(a, mul(b, dd(q1)));
    const double q2 = r.hi / b.hi;
    r = sub(r, mul(b, dd(q2)));
    const double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    q.lo += q3;
    return quick_two_sum(q.hi, q.lo);
}

struct cdd {
    dd re, im;

    cdd() = default;
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline cdd add(cdd a, cdd b) { return {add(a.re, b.re), add(a.im, b.im)}; }
inline cdd sub(cdd a, cdd b) { return {sub(a.re, b.re), sub(a.im, b.im)}; }

inline cdd mul(cdd a, cdd b) {
    return {sub(mul(a.re, b.re), mul(a.im, b.im)),
            add(mul(a.re, b.im), mul(a.im, b.re))};
}

inline cdd div(cdd a, cdd b) {
    const dd n = add(mul(b.re, b.re), mul(b.im, b.im));
    const cdd num = mul(a, cdd{b.re, sub(dd(0.0), b.im)});
    return {div(num.re, n), div(num.im, n)};
}

inline double abs2(cdd a) {
    return add(mul(a.re, a.re), mul(a.im, a.im)).value();
}

}  // namespace sendov::detail
