#include "sendov/ddpoly.hpp"

#include <algorithm>
#include <cmath>

namespace sendov::detail {

DDPoly DDPoly::from_roots(std::span<const cdouble> roots) {
    DDPoly p;
    p.coeffs = {cdd{cdouble{1.0, 0.0}}};
    for (const cdouble& r : roots) {
        const cdd rr{r};
        p.coeffs.push_back(cdd{cdouble{0.0, 0.0}});
        for (std::size_t k = p.coeffs.size() - 1; k > 0; --k)
            p.coeffs[k] = sub(p.coeffs[k - 1], mul(rr, p.coeffs[k]));
        p.coeffs[0] = sub(cdd{cdouble{0.0, 0.0}}, mul(rr, p.coeffs[0]));
    }
    return p;
}

cdd DDPoly::eval(const cdd& z) const {
    cdd acc{cdouble{0.0, 0.0}};
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = add(mul(acc, z), coeffs[k]);
    return acc;
}

DDPoly DDPoly::derivative() const {
    DDPoly d;
    d.coeffs.resize(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        d.coeffs[k - 1] = {mul(coeffs[k].re, dd(double(k))), mul(coeffs[k].im, dd(double(k)))};
    return d;
}

DDPoly DDPoly::antiderivative_from(double beta) const {
    DDPoly a;
    a.coeffs.assign(coeffs.size() + 1, cdd{cdouble{0.0, 0.0}});
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        a.coeffs[k + 1] = {div(coeffs[k].re, dd(double(k + 1))),
                           div(coeffs[k].im, dd(double(k + 1)))};
    const cdd at_beta = a.eval(cdd{cdouble{beta, 0.0}});
    a.coeffs[0] = sub(cdd{cdouble{0.0, 0.0}}, at_beta);
    return a;
}

std::vector<cdouble> DDPoly::rounded() const {
    std::vector<cdouble> out;
    out.reserve(coeffs.size());
    for (const cdd& c : coeffs) out.push_back(c.value());
    return out;
}

std::vector<cdouble> find_roots_dd(const DDPoly& p, int dd_sweeps) {
    std::vector<cdouble> z = find_roots(ComplexPoly(p.rounded()),
                                        RootFindOptions{1e-12, 200, false});
    const std::size_t n = z.size();
    if (n < 2) return z;
    const DDPoly dp = p.derivative();
    std::vector<cdd> zd(z.begin(), z.end());
    std::vector<cdd> step(n);
    for (int sweep = 0; sweep < dd_sweeps; ++sweep) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cdd pv = p.eval(zd[i]);
            const cdd dv = dp.eval(zd[i]);
            if (dv.value() == cdouble{0.0, 0.0}) {
                step[i] = cdd{cdouble{0.0, 0.0}};
                continue;
            }
            const cdd newton = div(pv, dv);
            cdd s{cdouble{0.0, 0.0}};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const cdd diff = sub(zd[i], zd[j]);
                if (diff.value() == cdouble{0.0, 0.0}) continue;
                s = add(s, div(cdd{cdouble{1.0, 0.0}}, diff));
            }
            const cdd denom = sub(cdd{cdouble{1.0, 0.0}}, mul(newton, s));
            step[i] = std::abs(denom.value()) < 1e-30 ? newton : div(newton, denom);
        }
        for (std::size_t i = 0; i < n; ++i) {
            zd[i] = sub(zd[i], step[i]);
            max_step = std::max(max_step, std::abs(step[i].value()));
        }
        if (max_step < 1e-28) break;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = zd[i].value();
    std::sort(z.begin(), z.end(), [](cdouble a, cdouble b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return z;
}

double critical_distance_dd(std::span<const cdouble> poly_roots, double beta) {
    const DDPoly p = DDPoly::from_roots(poly_roots);
    double best = std::numeric_limits<double>::infinity();
    for (const cdouble& w : find_roots_dd(p.derivative()))
        best = std::min(best, std::abs(cdouble{beta, 0.0} - w));
    return best;
}

}  // namespace sendov::detail
