#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "sendov/poly.hpp"

namespace testsupport {

using sendov::cdouble;

// deterministic generator for seeded test inputs
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed * 0x9E3779B97F4A7C15ull + 0x1234567ull) {}
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double u01() { return double(next() >> 11) * (1.0 / 9007199254740992.0); }
    cdouble disk() {
        const double r = std::sqrt(u01());
        const double th = 2.0 * 3.14159265358979323846 * u01();
        return {r * std::cos(th), r * std::sin(th)};
    }
};

// max distance under greedy globally-closest pairing; adequate for
// well-separated recovery checks
inline double matched_max_distance(std::vector<cdouble> a, std::vector<cdouble> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    while (!a.empty()) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) {
                const double d = std::abs(a[i] - b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        worst = std::max(worst, best);
        a.erase(a.begin() + bi);
        b.erase(b.begin() + bj);
    }
    return worst;
}

inline double max_coeff_diff(const sendov::ComplexPoly& p, const sendov::ComplexPoly& q) {
    if (p.degree() != q.degree()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        worst = std::max(worst, std::abs(p.coeffs()[k] - q.coeffs()[k]));
    return worst;
}

}  // namespace testsupport
