// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are fixed here, not tuned at runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sendov/constants.hpp"
#include "sendov/construct.hpp"
#include "sendov/estimate.hpp"
#include "sendov/poly.hpp"
#include "support.hpp"

using namespace sendov;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

double now_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- criterion 1: constants table -----------------------------------------

Outcome criterion1() {
    Outcome out;
    struct Row {
        int n;
        double u1, u2, d1, d2, slope;
        bool has_d;
        bool has_slope;
    };
    const Row rows[] = {
        {3, 0.0, -1.0, -0.25, -0.25, -0.3333, true, true},
        {4, 0.3090, -0.8090, -0.2, -0.4, -0.3, true, true},
        {5, -0.5, -1.0, -0.3333, -0.1667, -0.3667, true, true},
        {6, -0.2225, -0.9010, -0.3014, 0, 0, true, false},
        {7, 0.0, -0.7071, -0.2929, -0.2929, -0.3347, true, true},
        {9, -0.3090, -0.8090, 0, 0, 0, false, false},
        {10, -0.1423, -0.6549, -0.3138, 0, 0, true, false},
    };
    for (const Row& r : rows) {
        const SendovConstants c = compute_constants(r.n);
        const std::string tag = "n=" + std::to_string(r.n);
        out.require(std::abs(c.u1 - r.u1) < 5.1e-5, tag + " u1");
        out.require(std::abs(c.u2 - r.u2) < 5.1e-5, tag + " u2");
        if (r.has_d) out.require(std::abs(c.d1 - r.d1) < 5.1e-5, tag + " D1");
        if (r.has_slope) {
            out.require(std::abs(c.d2 - r.d2) < 5.1e-5, tag + " D2");
            out.require(std::abs(c.slope - r.slope) < 5.1e-5, tag + " slope");
        }
    }
    // exact rationals in rational mode
    const auto r3 = exact_constants(3), r4 = exact_constants(4), r5 = exact_constants(5);
    out.require(r3 && r3->d1 == Rational{-1, 4} && r3->d2 == Rational{-1, 4} &&
                    r3->slope == Rational{-1, 3},
                "rational n=3");
    out.require(r4 && r4->d1 == Rational{-1, 5} && r4->d2 == Rational{-2, 5} &&
                    r4->slope == Rational{-3, 10},
                "rational n=4");
    out.require(r5 && r5->d1 == Rational{-1, 3} && r5->d2 == Rational{-1, 6} &&
                    r5->slope == Rational{-11, 30},
                "rational n=5");
    return out;
}

// ---- criterion 2: invariant suite ------------------------------------------

Outcome criterion2() {
    Outcome out;
    for (int n = 3; n <= 200; ++n) {
        const SendovConstants c = compute_constants(n);
        for (const CheckEntry& e : check_lemma8(c)) {
            if (!e.applicable) continue;
            if (e.margin < -1e-10)
                out.require(false, "n=" + std::to_string(n) + " " + e.name);
        }
        const double nn = n;
        const double res[5] = {
            std::abs(apply_T([](double) { return 1.0; }, c) - nn),
            std::abs(apply_T([](double u) { return 2.0 + 2.0 * u; }, c) - (nn - 1.0)),
            std::abs(apply_T([](double u) { return 1.0 / (1.0 - u); }, c) -
                     (nn + nn * c.d1 + c.d2)),
            std::abs(apply_T([](double u) { return u / (1.0 - u); }, c) - (nn * c.d1 + c.d2)),
            std::abs(apply_T([](double u) { return 1.0 + 4.0 * u + 4.0 * u * u; }, c) +
                     (nn + 1.0 + c.d1 + 3.0 * nn * c.d1 + 3.0 * c.d2) / c.d2),
        };
        for (int i = 0; i < 5; ++i)
            if (res[i] >= 1e-10)
                out.require(false,
                            "T identity " + std::to_string(i) + " at n=" + std::to_string(n));
    }
    return out;
}

// ---- criterion 3: prop6 scaling ---------------------------------------------

Outcome criterion3() {
    Outcome out;
    const std::vector<double> grid{0.04, 0.02, 0.01, 0.005};
    std::vector<double> residuals;
    for (double t : grid) {
        const auto c = prop6_polynomial(1.0 - t);
        const auto roots = c.pprime_roots();
        const double raw =
            compensated_critical_distance({roots.data(), roots.size()}, c.beta);
        const auto m = measure(c);
        residuals.push_back(std::abs((1.0 - m.contraction) * raw - c.predicted));
        const auto member = contracted_member(c.p, c.beta);
        out.require(in_S(member, DiskTolerance{1e-12}), "membership at t=" + fmt(t));
    }
    const double slope = scaling_exponent(grid, residuals);
    out.detail = "slope=" + fmt(slope);
    out.require(slope >= 2.2, "slope " + fmt(slope) + " < 2.2");
    return out;
}

// ---- criterion 4: prop7 scaling ---------------------------------------------

Outcome criterion4() {
    Outcome out;
    const std::vector<double> grid{0.04, 0.02, 0.01, 0.005};
    std::string slopes;
    for (int n : {3, 4, 6, 7, 8}) {
        std::vector<double> residuals;
        for (double t : grid) {
            const auto c = prop7_polynomial(n, 1.0 - t);
            out.require(std::abs(c.z_residuals.second) < 1e-9,
                        "Z2 at n=" + std::to_string(n) + " t=" + fmt(t));
            const auto m = measure(c);
            residuals.push_back(std::abs(m.crit_contracted - c.predicted));
            out.require(in_S(contracted_member(c.p, c.beta), DiskTolerance{1e-12}),
                        "membership n=" + std::to_string(n) + " t=" + fmt(t));
        }
        const double slope = scaling_exponent(grid, residuals);
        const double target = compute_constants(n).alpha + 1.0;
        slopes += (slopes.empty() ? "" : ",") + std::to_string(n) + ":" + fmt(slope);
        out.require(slope >= target - 0.3,
                    "slope " + fmt(slope) + " < " + fmt(target - 0.3) +
                        " at n=" + std::to_string(n));
    }
    out.detail = "slopes " + slopes;
    return out;
}

// ---- criterion 5: oracle equivalence ----------------------------------------

Outcome criterion5() {
    Outcome out;
    EstimateOptions opt;
    opt.starts = 64;
    opt.seed = 0;
    opt.threads = 0;  // all cores
    double worst2 = 0, worst3 = 0, worst0 = 0;
    for (double beta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double est = estimate_radius(2, beta, opt).value;
        const double err = std::abs(est - *exact_radius(2, beta));
        worst2 = std::max(worst2, err);
        out.require(err < 1e-6, "n=2 beta=" + fmt(beta) + " err=" + fmt(err));
    }
    for (double beta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double est = estimate_radius(3, beta, opt).value;
        const double err = std::abs(est - *exact_radius(3, beta));
        worst3 = std::max(worst3, err);
        out.require(err < 1e-4, "n=3 beta=" + fmt(beta) + " err=" + fmt(err));
    }
    for (int n : {4, 5, 6}) {
        const double est = estimate_radius(n, 0.0, opt).value;
        const double err = std::abs(est - std::pow(1.0 / n, 1.0 / (n - 1.0)));
        worst0 = std::max(worst0, err);
        out.require(err < 1e-4, "n=" + std::to_string(n) + " beta=0 err=" + fmt(err));
    }
    out.detail = "max err: n2=" + fmt(worst2) + " n3=" + fmt(worst3) + " r_n(0)=" + fmt(worst0);
    return out;
}

// ---- criterion 6: corollary 4 ------------------------------------------------

Outcome criterion6() {
    Outcome out;
    const double beta = 0.99;
    const double r4hat = measure(prop7_polynomial(3, beta)).crit_contracted;
    const double r6hat = measure(prop7_polynomial(5, beta)).crit_contracted;
    const double gap = r4hat - r6hat;
    const double nominal = (11.0 / 30.0 - 1.0 / 3.0) * 0.01;
    out.require(gap > 0.0, "constructed r6 >= r4");
    out.require(gap >= 0.5 * nominal && gap <= 2.0 * nominal,
                "gap " + fmt(gap) + " outside [" + fmt(0.5 * nominal) + ", " +
                    fmt(2.0 * nominal) + "]");
    EstimateOptions opt;
    opt.starts = 48;
    opt.seed = 0;
    opt.threads = 0;
    const double est4 = estimate_radius(4, beta, opt).value;
    const double est6 = estimate_radius(6, beta, opt).value;
    out.require(est6 < est4, "optimizer ordering violated: est6=" + fmt(est6) +
                                 " est4=" + fmt(est4));
    out.detail = "gap=" + fmt(gap) + " (nominal " + fmt(nominal) + "), est4-est6=" +
                 fmt(est4 - est6);
    return out;
}

// ---- criterion 7: corollaries 2 and 3 ----------------------------------------

Outcome criterion7() {
    Outcome out;
    const auto r4 = exact_constants(4);
    out.require(r4 && r4->slope == Rational{-3, 10}, "slope(4) != -3/10 exactly");
    for (int n = 3; n <= 200; ++n) {
        const double slope = compute_constants(n).slope;
        if (n == 4) {
            out.require(std::abs(slope + 0.3) < 1e-14, "slope(4) numeric");
        } else {
            out.require(slope < -0.3 - 1e-3, "slope not strictly below -3/10 at n=" +
                                                 std::to_string(n));
        }
    }
    for (int n = 150; n <= 200; ++n)
        out.require(std::abs(compute_constants(n).slope + 1.0 / 3.0) < 0.01,
                    "|slope+1/3| >= 0.01 at n=" + std::to_string(n));
    return out;
}

// ---- criterion 8: root-finder robustness --------------------------------------

Outcome criterion8() {
    Outcome out;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        testsupport::Rng rng(seed);
        const int deg = 3 + int(rng.next() % 10);
        std::vector<cdouble> roots(deg);
        for (auto& z : roots) z = rng.disk();
        const auto found = find_roots(ComplexPoly::from_roots(roots, {1, 0}));
        const double err = testsupport::matched_max_distance(found, roots);
        worst = std::max(worst, err);
        if (err >= 1e-8) out.require(false, "seed " + std::to_string(seed) + " err " + fmt(err));
    }
    // analytic cases
    std::vector<cdouble> z6(7, {0, 0});
    z6[0] = {-1, 0};
    z6[6] = {1, 0};
    std::vector<cdouble> expect;
    for (int k = 0; k < 6; ++k) {
        const double a = 2.0 * 3.14159265358979323846 * k / 6.0;
        expect.push_back({std::cos(a), std::sin(a)});
    }
    out.require(testsupport::matched_max_distance(find_roots(ComplexPoly(z6)), expect) < 1e-10,
                "z^6-1 roots");
    const ComplexPoly quad(std::vector<cdouble>{{-1, 0}, {0, 0}, {3, 0}});
    const double r = std::sqrt(1.0 / 3.0);
    out.require(testsupport::matched_max_distance(find_roots(quad), {{-r, 0}, {r, 0}}) < 1e-10,
                "3z^2-1 roots");
    out.detail = "worst random round-trip " + fmt(worst);
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 constants table (4 decimals + exact rationals)", 1.0, criterion1},
        {"2 invariant suite (lemma 8/11 + T identities, n<=200)", 5.0, criterion2},
        {"3 prop6 residual scaling + membership", 10.0, criterion3},
        {"4 prop7 residual scaling + Z2 + membership", 60.0, criterion4},
        {"5 optimizer matches closed forms", 120.0, criterion5},
        {"6 corollary 4: r6 < r4 near beta=1", 60.0, criterion6},
        {"7 corollaries 2/3: slope bounds", 1.0, criterion7},
        {"8 root-finder robustness", 5.0, criterion8},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const double t0 = now_s();
        Outcome out = c.run();
        const double dt = now_s() - t0;
        if (dt > c.budget_s) {
            out.pass = false;
            out.detail += (out.detail.empty() ? "" : "; ") + std::string("over time budget ") +
                          fmt(c.budget_s) + "s";
        }
        std::printf("%s criterion %s [%.2fs]%s%s\n", out.pass ? "PASS" : "FAIL", c.name, dt,
                    out.detail.empty() ? "" : " -- ", out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
