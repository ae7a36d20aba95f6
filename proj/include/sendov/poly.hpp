#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sendov {

using cdouble = std::complex<double>;

// Dense complex polynomial, coefficients in ascending degree order.
// The leading coefficient is nonzero by construction (trailing zero
// coefficients are trimmed; an all-zero list is rejected).
class ComplexPoly {
  public:
    ComplexPoly() : coeffs_{cdouble{1.0, 0.0}} {}  // the constant polynomial 1
    explicit ComplexPoly(std::vector<cdouble> ascending_coeffs);

    static ComplexPoly from_roots(std::span<const cdouble> roots, cdouble leading);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cdouble>& coeffs() const { return coeffs_; }

    cdouble eval(cdouble z) const;
    // Sum of |c_k| |z|^k; the natural scale for backward-error tests.
    double eval_scale(cdouble z) const;

    ComplexPoly derivative() const;
    // Antiderivative P with P' = *this and P(beta) = 0.
    ComplexPoly antiderivative_from(double beta) const;

    bool is_real(double tol = 1e-12) const;

  private:
    std::vector<cdouble> coeffs_;
};

// Root-list representation with a designated root pinned at beta.
struct RootedPoly {
    std::vector<cdouble> roots;
    cdouble leading{1.0, 0.0};
    double beta = 1.0;
    std::size_t beta_index = 0;

    ComplexPoly to_poly() const;
    double max_modulus() const;
};

// Designates the root nearest to beta and snaps it to exactly beta.
RootedPoly make_rooted(std::vector<cdouble> roots, cdouble leading, double beta);

struct DiskTolerance {
    double eps = 0.0;
};

// True iff every root has |z| <= 1 + dtol.eps and the designated root is beta.
bool in_S(const RootedPoly& p, DiskTolerance dtol = {});

struct RootFindOptions {
    double tol = 1e-12;          // relative backward error target
    int max_iter = 200;
    bool refine_clusters = true; // double-double polish when roots nearly collide
};

// Thrown when the Aberth iteration fails the backward-error test after
// max_iter sweeps; carries the best iterates found.
class RootFinderError : public std::runtime_error {
  public:
    RootFinderError(std::string what, std::vector<cdouble> best)
        : std::runtime_error(std::move(what)), best_iterates(std::move(best)) {}
    std::vector<cdouble> best_iterates;
};

// All deg(p) roots (with multiplicity) by simultaneous Aberth-Ehrlich
// iteration from a deterministic perturbed-circle start, sorted by
// (real, imaginary).
std::vector<cdouble> find_roots(const ComplexPoly& p, const RootFindOptions& opt = {});
inline std::vector<cdouble> find_roots(const ComplexPoly& p, double tol, int max_iter) {
    return find_roots(p, RootFindOptions{tol, max_iter, true});
}

// Distance from beta to the nearest root of P'. Warns on stderr if P(beta)
// is not numerically zero.
double critical_distance(const ComplexPoly& p, double beta, const RootFindOptions& opt = {});

// JSON wire format: {"coeffs": [[re, im], ...]} ascending degree.
std::string poly_to_json(const ComplexPoly& p);
ComplexPoly poly_from_json(const std::string& text);

}  // namespace sendov
