#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sendov/poly.hpp"

namespace sendov {

struct RadiusEstimate {
    int n = 0;
    double beta = 0;
    double value = 0;
    std::vector<cdouble> best_roots;  // all n roots, beta included
    int starts = 0;
    std::uint64_t seed = 0;
    bool converged = false;
};

// Closed forms where they exist: n in {2,3} for any beta, beta = 0, beta = 1.
std::optional<double> exact_radius(int n, double beta);

// 1 + slope t + curvature t^2 with constants at n_plus_1 - 1; requires
// n_plus_1 >= 4.
double quadratic_approx(int n_plus_1, double beta);

struct EstimateOptions {
    int starts = 64;
    std::uint64_t seed = 0;
    bool real_only = false;
    int threads = 1;  // 0 = hardware concurrency
};

// Maximizes critical_distance(from_roots(roots, 1), beta) over n-1 free roots
// in the closed unit disk, beta fixed as the n-th root. Multistart projected
// Nelder-Mead over the roots, plus a search stage over the critical points
// themselves (smooth where root space has coalescence cusps) whose result is
// projected back to feasible roots and re-measured. Deterministic in
// (n, beta, starts, seed, real_only), independent of thread count.
RadiusEstimate estimate_radius(int n, double beta, const EstimateOptions& opt = {});

struct ExpansionFit {
    int n = 0;
    double c0 = 0, c1 = 0, c2 = 0;
    double rms_residual = 0;
    std::vector<double> t_grid;
};

// Least-squares fit value ~ c0 + c1 t + c2 t^2, t = 1 - beta. Requires at
// least 4 samples with distinct beta, all with t <= 0.1.
ExpansionFit fit_expansion(int n, std::span<const std::pair<double, double>> samples);

// Log-log slope of residual vs t. Nonpositive residuals are filtered out
// (count reported through dropped if given); fewer than 3 usable points is an
// error.
double scaling_exponent(std::span<const double> t_grid, std::span<const double> residuals,
                        int* dropped = nullptr);

}  // namespace sendov
