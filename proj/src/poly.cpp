#include "sendov/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "sendov/dd.hpp"
#include "json.hpp"

namespace sendov {

namespace {

constexpr double kTinyCoeff = 0.0;  // leading-coefficient trim is exact-zero only

bool near_zero(cdouble c) { return c.real() == kTinyCoeff && c.imag() == kTinyCoeff; }

}  // namespace

ComplexPoly::ComplexPoly(std::vector<cdouble> ascending_coeffs) : coeffs_(std::move(ascending_coeffs)) {
    while (coeffs_.size() > 1 && near_zero(coeffs_.back())) coeffs_.pop_back();
    if (coeffs_.empty() || near_zero(coeffs_.back()))
        throw std::invalid_argument("ComplexPoly: leading coefficient must be nonzero");
}

ComplexPoly ComplexPoly::from_roots(std::span<const cdouble> roots, cdouble leading) {
    if (leading == cdouble{0.0, 0.0})
        throw std::invalid_argument("from_roots: leading coefficient must be nonzero");
    std::vector<cdouble> c{leading};
    for (const cdouble& r : roots) {
        c.push_back({0.0, 0.0});
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return ComplexPoly(std::move(c));
}

cdouble ComplexPoly::eval(cdouble z) const {
    cdouble acc{0.0, 0.0};
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
}

double ComplexPoly::eval_scale(cdouble z) const {
    const double az = std::abs(z);
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * az + std::abs(coeffs_[k]);
    return acc;
}

ComplexPoly ComplexPoly::derivative() const {
    if (degree() < 1) throw std::invalid_argument("derivative: degree must be >= 1");
    std::vector<cdouble> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = double(k) * coeffs_[k];
    return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::antiderivative_from(double beta) const {
    std::vector<cdouble> a(coeffs_.size() + 1, cdouble{0.0, 0.0});
    for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / double(k + 1);
    ComplexPoly p(std::move(a));
    const cdouble at_beta = p.eval({beta, 0.0});
    p.coeffs_[0] = -at_beta;
    return p;
}

bool ComplexPoly::is_real(double tol) const {
    double scale = 0.0;
    for (const cdouble& c : coeffs_) scale = std::max(scale, std::abs(c));
    for (const cdouble& c : coeffs_)
        if (std::abs(c.imag()) > tol * std::max(1.0, scale)) return false;
    return true;
}

ComplexPoly RootedPoly::to_poly() const { return ComplexPoly::from_roots(roots, leading); }

double RootedPoly::max_modulus() const {
    double m = 0.0;
    for (const cdouble& r : roots) m = std::max(m, std::abs(r));
    return m;
}

RootedPoly make_rooted(std::vector<cdouble> roots, cdouble leading, double beta) {
    if (roots.empty()) throw std::invalid_argument("make_rooted: empty root list");
    std::size_t best = 0;
    double bd = std::abs(roots[0] - cdouble{beta, 0.0});
    for (std::size_t i = 1; i < roots.size(); ++i) {
        const double d = std::abs(roots[i] - cdouble{beta, 0.0});
        if (d < bd) { bd = d; best = i; }
    }
    if (bd > 0.05)
        throw std::invalid_argument("make_rooted: no root near beta (closest at distance " +
                                    std::to_string(bd) + ")");
    roots[best] = {beta, 0.0};
    return RootedPoly{std::move(roots), leading, beta, best};
}

bool in_S(const RootedPoly& p, DiskTolerance dtol) {
    if (p.beta_index >= p.roots.size()) return false;
    if (p.roots[p.beta_index] != cdouble{p.beta, 0.0}) return false;
    for (const cdouble& r : p.roots)
        if (std::abs(r) > 1.0 + dtol.eps) return false;
    return true;
}

namespace {

using detail::cdd;
using detail::dd;

// One Aberth-Ehrlich sweep in double-double arithmetic; coefficients are
// promoted exactly. Used to collapse multiple-root clusters below the plain
// double noise floor.
void aberth_sweep_dd(const std::vector<cdouble>& coeffs, const std::vector<cdouble>& dcoeffs,
                     std::vector<cdd>& z) {
    const std::size_t n = z.size();
    std::vector<cdd> step(n);
    for (std::size_t i = 0; i < n; ++i) {
        cdd p{cdouble{0.0, 0.0}};
        for (std::size_t k = coeffs.size(); k-- > 0;) p = add(mul(p, z[i]), cdd{coeffs[k]});
        cdd dp{cdouble{0.0, 0.0}};
        for (std::size_t k = dcoeffs.size(); k-- > 0;) dp = add(mul(dp, z[i]), cdd{dcoeffs[k]});
        if (dp.value() == cdouble{0.0, 0.0}) { step[i] = cdd{cdouble{0.0, 0.0}}; continue; }
        const cdd newton = div(p, dp);
        cdd s{cdouble{0.0, 0.0}};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const cdd diff = sub(z[i], z[j]);
            if (diff.value() == cdouble{0.0, 0.0}) continue;
            s = add(s, div(cdd{cdouble{1.0, 0.0}}, diff));
        }
        const cdd denom = sub(cdd{cdouble{1.0, 0.0}}, mul(newton, s));
        step[i] = std::abs(denom.value()) < 1e-30 ? newton : div(newton, denom);
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = sub(z[i], step[i]);
}

bool has_cluster(const std::vector<cdouble>& z) {
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            const double sep = std::abs(z[i] - z[j]);
            const double scale = std::max(1.0, std::max(std::abs(z[i]), std::abs(z[j])));
            if (sep < 5e-3 * scale) return true;
        }
    return false;
}

}  // namespace

std::vector<cdouble> find_roots(const ComplexPoly& p, const RootFindOptions& opt) {
    if (p.degree() < 1) throw std::invalid_argument("find_roots: degree must be >= 1");

    // exact zero roots come off by deflation
    std::vector<cdouble> work = p.coeffs();
    std::vector<cdouble> roots;
    while (work.size() > 1 && work.front() == cdouble{0.0, 0.0}) {
        roots.push_back({0.0, 0.0});
        work.erase(work.begin());
    }
    const int n = static_cast<int>(work.size()) - 1;
    if (n == 0) {
        std::sort(roots.begin(), roots.end(), [](cdouble a, cdouble b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        return roots;
    }

    // monic normalization
    const cdouble lead = work.back();
    for (cdouble& c : work) c /= lead;

    std::vector<cdouble> z(n);
    if (n == 1) {
        z[0] = -work[0];
    } else {
        // perturbed-circle start: radius from |c0|^(1/n), angles offset by a
        // fixed irrational rotation so symmetric polynomials don't stall
        double r0 = std::pow(std::abs(work[0]), 1.0 / n);
        r0 = std::clamp(r0, 1e-3, 1e3);
        constexpr double kOffset = 0.61803398874989484;  // radians
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * std::numbers::pi * i / n + kOffset;
            z[i] = r0 * cdouble{std::cos(th), std::sin(th)};
        }

        const ComplexPoly monic{std::vector<cdouble>(work)};
        const ComplexPoly dmonic = monic.derivative();
        std::vector<bool> done(n, false);
        for (int iter = 0; iter < opt.max_iter; ++iter) {
            bool all_done = true;
            for (int i = 0; i < n; ++i) {
                if (done[i]) continue;
                const cdouble pv = monic.eval(z[i]);
                if (std::abs(pv) <= opt.tol * monic.eval_scale(z[i])) { done[i] = true; continue; }
                all_done = false;
                const cdouble dv = dmonic.eval(z[i]);
                cdouble newton;
                if (dv == cdouble{0.0, 0.0}) {
                    newton = {opt.tol + 1e-8, opt.tol};  // nudge off the stationary point
                } else {
                    newton = pv / dv;
                }
                cdouble s{0.0, 0.0};
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const cdouble diff = z[i] - z[j];
                    if (diff == cdouble{0.0, 0.0}) continue;
                    s += 1.0 / diff;
                }
                const cdouble denom = 1.0 - newton * s;
                z[i] -= (std::abs(denom) < 1e-12) ? newton : newton / denom;
            }
            if (all_done) break;
        }

        bool ok = true;
        for (int i = 0; i < n; ++i)
            if (std::abs(monic.eval(z[i])) > opt.tol * monic.eval_scale(z[i])) { ok = false; break; }
        if (!ok) {
            std::vector<cdouble> best = roots;
            best.insert(best.end(), z.begin(), z.end());
            throw RootFinderError("find_roots: no convergence after " +
                                      std::to_string(opt.max_iter) + " iterations",
                                  std::move(best));
        }

        if (opt.refine_clusters && has_cluster(z)) {
            // the cluster centroid error of an m-fold root is ~eps^(1/m);
            // 60 dd sweeps contract it linearly at rate (m-1)/m
            std::vector<cdd> zd(z.begin(), z.end());
            const std::vector<cdouble>& dc = dmonic.coeffs();
            for (int sweep = 0; sweep < 60; ++sweep) aberth_sweep_dd(work, dc, zd);
            for (int i = 0; i < n; ++i) z[i] = zd[i].value();
        }
    }

    roots.insert(roots.end(), z.begin(), z.end());
    std::sort(roots.begin(), roots.end(), [](cdouble a, cdouble b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

double critical_distance(const ComplexPoly& p, double beta, const RootFindOptions& opt) {
    if (p.degree() < 2) throw std::invalid_argument("critical_distance: degree must be >= 2");
    const cdouble at_beta = p.eval({beta, 0.0});
    if (std::abs(at_beta) > 1e-8 * std::max(1.0, p.eval_scale({beta, 0.0})))
        std::fprintf(stderr, "sendov: warning: critical_distance called with |P(beta)| = %.3e\n",
                     std::abs(at_beta));
    const std::vector<cdouble> crit = find_roots(p.derivative(), opt);
    double best = std::numeric_limits<double>::infinity();
    for (const cdouble& w : crit) best = std::min(best, std::abs(cdouble{beta, 0.0} - w));
    return best;
}

std::string poly_to_json(const ComplexPoly& p) {
    nlohmann::json j;
    j["coeffs"] = nlohmann::json::array();
    for (const cdouble& c : p.coeffs()) j["coeffs"].push_back({c.real(), c.imag()});
    return j.dump();
}

ComplexPoly poly_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<cdouble> coeffs;
    for (const auto& pair : j.at("coeffs"))
        coeffs.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    return ComplexPoly(std::move(coeffs));
}

}  // namespace sendov
