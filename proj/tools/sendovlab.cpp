// sendovlab: constants tables, invariant suites, near-extremal constructions,
// and optimizer sweeps for the Sendov radius near beta = 1.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sendov/constants.hpp"
#include "sendov/construct.hpp"
#include "sendov/estimate.hpp"
#include "sendov/poly.hpp"

using nlohmann::json;
using namespace sendov;

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kNoConverge = 3 };

std::string fmt_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// CSV/JSON print with 12 significant digits, text with 6
std::string fmt12(double v) { return fmt_sig(v, 12); }
std::string fmt6(double v) { return fmt_sig(v, 6); }

// JSON numbers rounded to the 12-digit wire precision so output is
// byte-stable across platforms
double wire(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

json complex_json(cdouble z) { return json::array({wire(z.real()), wire(z.imag())}); }

json poly_json(const ComplexPoly& p) {
    json coeffs = json::array();
    for (const cdouble& c : p.coeffs()) coeffs.push_back(complex_json(c));
    return json{{"coeffs", coeffs}};
}

struct Output {
    std::string path;  // empty = stdout
    void write(const std::string& text) const {
        if (path.empty()) {
            std::fputs(text.c_str(), stdout);
            return;
        }
        std::ofstream f(path, std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << text;
    }
};

int env_threads() {
    const char* v = std::getenv("SENDOVLAB_THREADS");
    int t = v ? std::atoi(v) : 0;
    if (t <= 0) t = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return t;
}

std::pair<int, int> parse_range(const std::string& s) {
    const auto pos = s.find("..");
    if (pos == std::string::npos) {
        const int n = std::stoi(s);
        return {n, n};
    }
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

int cmd_constants(const std::string& nrange, const std::string& format, const Output& out) {
    const auto [lo, hi] = parse_range(nrange);
    if (lo < 3 || hi < lo) {
        std::fprintf(stderr, "constants: need n >= 3\n");
        return kUsage;
    }
    std::ostringstream os;
    if (format == "csv") {
        os << "n,u1,u2,d1,d2,slope,d,delta,alpha,gamma1,gamma2,c3,c4\n";
        for (int n = lo; n <= hi; ++n) {
            const SendovConstants c = compute_constants(n);
            os << n << ',' << fmt12(c.u1) << ',' << fmt12(c.u2) << ',' << fmt12(c.d1) << ','
               << fmt12(c.d2) << ',' << fmt12(c.slope) << ',' << fmt12(c.d) << ','
               << fmt12(c.delta) << ',' << fmt12(c.alpha) << ',' << fmt12(c.gamma1) << ','
               << fmt12(c.gamma2) << ',' << fmt12(c.c3) << ','
               << (c.c4 ? fmt12(*c.c4) : std::string{}) << '\n';
        }
    } else if (format == "json") {
        json rows = json::array();
        for (int n = lo; n <= hi; ++n) {
            const SendovConstants c = compute_constants(n);
            json row{{"n", n},          {"u1", wire(c.u1)},         {"u2", wire(c.u2)},
                     {"d1", wire(c.d1)}, {"d2", wire(c.d2)},        {"slope", wire(c.slope)},
                     {"d", wire(c.d)},   {"delta", wire(c.delta)},  {"alpha", wire(c.alpha)},
                     {"gamma1", wire(c.gamma1)}, {"gamma2", wire(c.gamma2)},
                     {"c3", wire(c.c3)}, {"curvature", wire(c.curvature)}};
            if (c.c4) row["c4"] = wire(*c.c4);
            rows.push_back(row);
        }
        os << rows.dump(2) << '\n';
    } else {
        os << "   n        u1        u2        d1        d2     slope         d     delta  alpha\n";
        for (int n = lo; n <= hi; ++n) {
            const SendovConstants c = compute_constants(n);
            char line[256];
            std::snprintf(line, sizeof line, "%4d %9s %9s %9s %9s %9s %9s %9s %6s\n", n,
                          fmt6(c.u1).c_str(), fmt6(c.u2).c_str(), fmt6(c.d1).c_str(),
                          fmt6(c.d2).c_str(), fmt6(c.slope).c_str(), fmt6(c.d).c_str(),
                          fmt6(c.delta).c_str(), fmt6(c.alpha).c_str());
            os << line;
        }
    }
    out.write(os.str());
    return kOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct SuiteReport {
    struct Item {
        std::string name;
        bool pass;
        double value;
    };
    std::vector<Item> items;
    bool all_pass() const {
        return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
    }
    void add(std::string name, bool pass, double value) {
        items.push_back({std::move(name), pass, value});
    }
};

void emit_report(const SuiteReport& rep, const std::string& format, const Output& out) {
    std::ostringstream os;
    if (format == "json") {
        json rows = json::array();
        for (const auto& it : rep.items)
            rows.push_back({{"check", it.name}, {"pass", it.pass}, {"value", wire(it.value)}});
        os << json{{"pass", rep.all_pass()}, {"checks", rows}}.dump(2) << '\n';
    } else if (format == "csv") {
        os << "check,pass,value\n";
        for (const auto& it : rep.items)
            os << it.name << ',' << (it.pass ? "true" : "false") << ',' << fmt12(it.value) << '\n';
    } else {
        for (const auto& it : rep.items)
            os << (it.pass ? "PASS " : "FAIL ") << it.name << "  (" << fmt6(it.value) << ")\n";
        os << (rep.all_pass() ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
    }
    out.write(os.str());
}

SuiteReport suite_lemma8(int max_n) {
    SuiteReport rep;
    double worst = 1e300;
    std::string worst_name = "none";
    int failures = 0;
    for (int n = 3; n <= max_n; ++n) {
        for (const CheckEntry& e : check_lemma8(compute_constants(n))) {
            if (!e.applicable) continue;
            if (!e.pass) {
                ++failures;
                rep.add("n=" + std::to_string(n) + " " + e.name, false, e.margin);
            }
            if (e.margin < worst) {
                worst = e.margin;
                worst_name = "n=" + std::to_string(n) + " " + e.name;
            }
        }
    }
    rep.add("lemma8+11 all n in 3.." + std::to_string(max_n) + " (worst: " + worst_name + ")",
            failures == 0, worst);
    return rep;
}

SuiteReport suite_t_identities(int max_n) {
    SuiteReport rep;
    double worst = 0.0;
    int worst_n = 3;
    for (int n = 3; n <= max_n; ++n) {
        const SendovConstants c = compute_constants(n);
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
        for (double r : res)
            if (r > worst) {
                worst = r;
                worst_n = n;
            }
    }
    rep.add("T identities, max residual over n in 3.." + std::to_string(max_n) +
                " (worst at n=" + std::to_string(worst_n) + ")",
            worst < 1e-10, worst);
    return rep;
}

SuiteReport suite_corollaries(int max_n, double beta) {
    SuiteReport rep;
    // Corollary 2: slope <= -3/10, equality only at n = 4
    double worst = -1e300;
    for (int n = 3; n <= max_n; ++n) {
        if (n == 4) continue;
        const double slope = compute_constants(n).slope;
        worst = std::max(worst, slope + 0.3);  // < 0 wanted
    }
    rep.add("corollary2: slope < -3/10 for n != 4", worst < -1e-3, worst);
    const auto r4 = exact_constants(4);
    rep.add("corollary2: slope(4) == -3/10 exactly",
            r4 && r4->slope == Rational{-3, 10}, r4 ? r4->slope.to_double() : 0.0);
    // Corollary 3: limit accuracy and in-class decrease
    double worst_tail = 0.0;
    for (int n = 150; n <= std::max(200, max_n); ++n)
        worst_tail = std::max(worst_tail, std::abs(compute_constants(n).slope + 1.0 / 3.0));
    rep.add("corollary3: |slope+1/3| < 0.01 for n in 150..", worst_tail < 0.01, worst_tail);
    bool monotone = true;
    double worst_step = -1e300;
    for (int n = 14; n <= max_n; ++n) {
        const double cur = std::abs(compute_constants(n).slope + 1.0 / 3.0);
        const double prev = std::abs(compute_constants(n - 3).slope + 1.0 / 3.0);
        worst_step = std::max(worst_step, cur - prev);
        monotone = monotone && cur < prev;
    }
    rep.add("corollary3: |slope+1/3| decreasing in residue class from n=14", monotone, worst_step);
    // Corollary 4 at the requested beta: contracted construction bounds
    const double t = 1.0 - beta;
    const auto m4 = measure(prop7_polynomial(3, beta));
    const auto m6 = measure(prop7_polynomial(5, beta));
    const double gap = m4.crit_contracted - m6.crit_contracted;
    rep.add("corollary4: constructed r6 < r4 at beta=" + fmt6(beta), gap > 0.0, gap);
    if (t <= 0.02) {
        const double nominal = (11.0 / 30.0 - 1.0 / 3.0) * t;
        rep.add("corollary4: gap within factor 2 of (1/30)t",
                gap >= 0.5 * nominal && gap <= 2.0 * nominal, gap / nominal);
    }
    return rep;
}

SuiteReport suite_scaling(const std::string& family) {
    SuiteReport rep;
    const std::vector<double> grid{0.04, 0.02, 0.01, 0.005};
    if (family == "prop6" || family == "both") {
        std::vector<double> res;
        for (double t : grid) {
            const auto c6 = prop6_polynomial(1.0 - t);
            const auto roots = c6.pprime_roots();
            const double cd =
                compensated_critical_distance({roots.data(), roots.size()}, c6.beta);
            const auto m = measure(c6);
            res.push_back(std::abs((1.0 - m.contraction) * cd - c6.predicted));
        }
        const double slope = scaling_exponent(grid, res);
        rep.add("prop6 residual exponent (target 2.5)", slope >= 2.2, slope);
    }
    if (family == "prop7" || family == "both") {
        for (int n : {3, 4, 6, 7, 8}) {
            std::vector<double> res;
            for (double t : grid) {
                const auto c7 = prop7_polynomial(n, 1.0 - t);
                res.push_back(std::abs(measure(c7).crit_contracted - c7.predicted));
            }
            const double slope = scaling_exponent(grid, res);
            const double target = compute_constants(n).alpha + 1.0;
            rep.add("prop7 n=" + std::to_string(n) + " residual exponent (target " +
                        fmt6(target) + ")",
                    slope >= target - 0.3, slope);
        }
    }
    return rep;
}

int cmd_verify(const std::string& suite, int max_n, double beta, const std::string& family,
               const std::string& format, const Output& out) {
    SuiteReport rep;
    if (suite == "lemma8") {
        rep = suite_lemma8(max_n);
    } else if (suite == "t-identities") {
        rep = suite_t_identities(max_n);
    } else if (suite == "corollaries") {
        rep = suite_corollaries(max_n, beta);
    } else if (suite == "scaling") {
        rep = suite_scaling(family);
    } else {
        std::fprintf(stderr, "verify: unknown suite '%s'\n", suite.c_str());
        return kUsage;
    }
    emit_report(rep, format, out);
    return rep.all_pass() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

json measurement_json(const ConstructionMeasurement& m) {
    return json{{"crit_raw", wire(m.crit_raw)},
                {"crit_contracted", wire(m.crit_contracted)},
                {"max_modulus", wire(m.max_modulus)},
                {"contraction", wire(m.contraction)},
                {"contracted", m.contracted}};
}

int cmd_construct(const std::string& family, int n, double beta, const std::string& format,
                  const Output& out) {
    json rec;
    if (family == "prop6") {
        const auto c = prop6_polynomial(beta);
        const auto m = measure(c);
        const auto member = contracted_member(c.p, c.beta);
        rec = json{{"family", "prop6"},
                   {"beta", wire(c.beta)},
                   {"t", wire(c.t)},
                   {"u", complex_json(c.u)},
                   {"v", complex_json(c.v)},
                   {"pprime", poly_json(c.pprime)},
                   {"p", poly_json(c.p)},
                   {"predicted", wire(c.predicted)},
                   {"measurement", measurement_json(m)},
                   {"in_S_after_contraction", in_S(member, DiskTolerance{1e-12})}};
    } else if (family == "prop7") {
        if (n < 3) {
            std::fprintf(stderr, "construct: prop7 needs --n >= 3\n");
            return kUsage;
        }
        const auto c = prop7_polynomial(n, beta);
        const auto m = measure(c);
        const auto member = contracted_member(c.p, c.beta);
        rec = json{{"family", "prop7"},
                   {"n", c.n},
                   {"beta", wire(c.beta)},
                   {"t", wire(c.t)},
                   {"b1", wire(c.b1)},
                   {"b2", wire(c.b2)},
                   {"z0", wire(c.z0)},
                   {"x", wire(c.x)},
                   {"t1", wire(c.t1)},
                   {"qcoeffs", json::array({wire(c.qcoeffs[0]), wire(c.qcoeffs[1]),
                                            wire(c.qcoeffs[2])})},
                   {"z_residuals", json::array({wire(c.z_residuals.first),
                                                wire(c.z_residuals.second)})},
                   {"pprime", poly_json(c.pprime)},
                   {"p", poly_json(c.p)},
                   {"predicted", wire(c.predicted)},
                   {"measurement", measurement_json(m)},
                   {"in_S_after_contraction", in_S(member, DiskTolerance{1e-12})}};
    } else {
        std::fprintf(stderr, "construct: unknown family '%s'\n", family.c_str());
        return kUsage;
    }
    std::ostringstream os;
    if (format == "text") {
        os << "family " << rec["family"].get<std::string>() << "  beta "
           << fmt6(rec["beta"].get<double>()) << "\npredicted "
           << fmt6(rec["predicted"].get<double>()) << "\nmeasured (contracted) "
           << fmt6(rec["measurement"]["crit_contracted"].get<double>()) << "\n";
    } else {
        os << rec.dump(2) << '\n';
    }
    out.write(os.str());
    return kOk;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

json estimate_json(const RadiusEstimate& est) {
    json roots = json::array();
    for (const cdouble& r : est.best_roots) roots.push_back(complex_json(r));
    return json{{"n", est.n},         {"beta", wire(est.beta)},
                {"value", wire(est.value)}, {"best_roots", roots},
                {"starts", est.starts},     {"seed", est.seed},
                {"converged", est.converged}};
}

int cmd_estimate(int n, double beta, int starts, std::uint64_t seed, bool real_only,
                 const std::string& format, const Output& out) {
    EstimateOptions opt;
    opt.starts = starts;
    opt.seed = seed;
    opt.real_only = real_only;
    opt.threads = env_threads();
    const RadiusEstimate est = estimate_radius(n, beta, opt);
    std::ostringstream os;
    if (format == "text") {
        os << "r_" << n << "(" << fmt6(beta) << ") >= " << fmt6(est.value)
           << (est.converged ? "" : "  (not converged)") << '\n';
    } else {
        os << estimate_json(est).dump(2) << '\n';
    }
    out.write(os.str());
    return est.converged ? kOk : kNoConverge;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepRow {
    int n = 0;
    double beta = 0;
    double value = 0;
    std::string method;
    int starts = 0;
    std::uint64_t seed = 0;
    bool converged = true;

    std::string csv() const {
        std::ostringstream os;
        os << n << ',' << fmt12(beta) << ',' << fmt12(value) << ',' << method << ',' << starts
           << ',' << seed << ',' << (converged ? "true" : "false");
        return os.str();
    }
};

int cmd_sweep(const std::string& nrange, const std::string& tgrid_s, const std::string& method,
              int starts, std::uint64_t seed, const std::string& out_path) {
    const auto [lo, hi] = parse_range(nrange);
    std::vector<double> tgrid = parse_grid(tgrid_s);
    if (tgrid.empty()) {
        std::fprintf(stderr, "sweep: empty t-grid\n");
        return kUsage;
    }
    for (double t : tgrid)
        if (!(t > 0.0 && t <= 0.2)) {
            std::fprintf(stderr, "sweep: t values must lie in (0, 0.2]\n");
            return kUsage;
        }
    const bool do_construct = method == "construct" || method == "both";
    const bool do_estimate = method == "estimate" || method == "both";
    if (!do_construct && !do_estimate) {
        std::fprintf(stderr, "sweep: unknown method '%s'\n", method.c_str());
        return kUsage;
    }
    if (lo < (do_construct ? 4 : 2) || hi < lo) {
        std::fprintf(stderr, "sweep: need n >= %d\n", do_construct ? 4 : 2);
        return kUsage;
    }
    if (out_path.empty()) {
        std::fprintf(stderr, "sweep: --out is required\n");
        return kUsage;
    }

    std::sort(tgrid.begin(), tgrid.end());

    // resume: previously completed (n, beta, method) cells are skipped
    std::map<std::string, bool> done;
    const bool existed = std::filesystem::exists(out_path);
    if (existed) {
        std::ifstream in(out_path);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string nf, bf, vf, mf;
            std::getline(ss, nf, ',');
            std::getline(ss, bf, ',');
            std::getline(ss, vf, ',');
            std::getline(ss, mf, ',');
            if (!nf.empty()) done[nf + "|" + bf + "|" + mf] = true;
        }
    }

    struct Cell {
        int n;
        double t;
        std::string method;
    };
    std::vector<Cell> cells;
    for (int n = lo; n <= hi; ++n)
        for (double t : tgrid) {
            if (do_construct) cells.push_back({n, t, "construct"});
            if (do_estimate) cells.push_back({n, t, "estimate"});
        }
    // row order is the (n, t, method) sort key, never completion order
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.t != b.t) return a.t < b.t;
        return a.method < b.method;
    });

    std::vector<int> todo;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const std::string key = std::to_string(c.n) + "|" + fmt12(1.0 - c.t) + "|" + c.method;
        if (!done.count(key)) todo.push_back(static_cast<int>(i));
    }

    std::ofstream outf(out_path, std::ios::app);
    if (!outf) {
        std::fprintf(stderr, "sweep: cannot open %s\n", out_path.c_str());
        return kUsage;
    }
    if (!existed) {
        outf << "n,beta,value,method,starts,seed,converged\n";
        outf.flush();
    }

    // cells run concurrently; rows flush in order as the prefix completes
    std::vector<SweepRow> rows(todo.size());
    std::vector<char> ready(todo.size(), 0);
    std::mutex mu;
    std::size_t flushed = 0;
    bool all_converged = true;
    auto flush_ready = [&] {
        while (flushed < todo.size() && ready[flushed]) {
            outf << rows[flushed].csv() << '\n';
            outf.flush();
            ++flushed;
        }
    };
    const int threads = std::min(env_threads(), std::max<int>(1, int(todo.size())));
    std::vector<std::thread> pool;
    std::size_t next = 0;
    for (int tix = 0; tix < threads; ++tix) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t mine;
                {
                    std::lock_guard lk(mu);
                    if (next >= todo.size()) return;
                    mine = next++;
                }
                const Cell& c = cells[todo[mine]];
                const double beta = 1.0 - c.t;
                SweepRow row{c.n, beta, 0.0, c.method, 0, 0, true};
                if (c.method == "construct") {
                    row.value = measure(prop7_polynomial(c.n - 1, beta)).crit_contracted;
                } else {
                    EstimateOptions opt;
                    opt.starts = starts;
                    opt.seed = seed;
                    opt.threads = 1;
                    const RadiusEstimate est = estimate_radius(c.n, beta, opt);
                    row.value = est.value;
                    row.starts = est.starts;
                    row.seed = est.seed;
                    row.converged = est.converged;
                }
                std::lock_guard lk(mu);
                rows[mine] = std::move(row);
                ready[mine] = 1;
                all_converged = all_converged && rows[mine].converged;
                flush_ready();
            }
        });
    }
    for (auto& th : pool) th.join();
    {
        std::lock_guard lk(mu);
        flush_ready();
    }
    return all_converged ? kOk : kNoConverge;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

int cmd_fit(const std::string& in_path, int n, const std::string& method,
            const std::string& format, const Output& out) {
    std::ifstream in(in_path);
    if (!in) {
        std::fprintf(stderr, "fit: cannot open %s\n", in_path.c_str());
        return kUsage;
    }
    std::vector<std::pair<double, double>> samples;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string nf, bf, vf, mf;
        std::getline(ss, nf, ',');
        std::getline(ss, bf, ',');
        std::getline(ss, vf, ',');
        std::getline(ss, mf, ',');
        if (nf.empty()) continue;
        if (std::stoi(nf) != n || mf != method) continue;
        samples.emplace_back(std::stod(bf), std::stod(vf));
    }
    const ExpansionFit fit = fit_expansion(n, samples);
    std::ostringstream os;
    if (format == "text") {
        os << "n " << n << ": c0 " << fmt6(fit.c0) << ", c1 " << fmt6(fit.c1) << ", c2 "
           << fmt6(fit.c2) << ", rms " << fmt6(fit.rms_residual) << '\n';
    } else {
        json tg = json::array();
        for (double t : fit.t_grid) tg.push_back(wire(t));
        os << json{{"n", fit.n},
                   {"c0", wire(fit.c0)},
                   {"c1", wire(fit.c1)},
                   {"c2", wire(fit.c2)},
                   {"rms_residual", wire(fit.rms_residual)},
                   {"t_grid", tg}}
                  .dump(2)
           << '\n';
    }
    out.write(os.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sendovlab: numerical laboratory for the Sendov radius near beta = 1"};
    app.require_subcommand(1);

    std::string nrange = "3..7", format = "text", out_path, suite = "lemma8";
    std::string family = "both", tgrid = "0.04,0.02,0.01,0.005", in_path, method = "construct";
    int n = 0, max_n = 200, starts = 64;
    double beta = 0.99;
    std::uint64_t seed = 0;
    bool real_only = false;

    auto* c_constants = app.add_subcommand("constants", "constants table per n");
    c_constants->add_option("--n", nrange, "n or n-range, e.g. 3..7");
    c_constants->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "text"}));
    c_constants->add_option("--out", out_path);

    auto* c_verify = app.add_subcommand("verify", "run an invariant suite");
    c_verify->add_option("--suite", suite, "lemma8 | t-identities | corollaries | scaling")
        ->required();
    c_verify->add_option("--max-n", max_n);
    c_verify->add_option("--beta", beta);
    c_verify->add_option("--family", family)->check(CLI::IsMember({"prop6", "prop7", "both"}));
    c_verify->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "text"}));
    c_verify->add_option("--out", out_path);

    auto* c_construct = app.add_subcommand("construct", "build a near-extremal polynomial");
    c_construct->add_option("--family", family)
        ->check(CLI::IsMember({"prop6", "prop7"}))
        ->required();
    c_construct->add_option("--n", n, "constants index (prop7)");
    c_construct->add_option("--beta", beta)->required();
    c_construct->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    c_construct->add_option("--out", out_path);

    auto* c_estimate = app.add_subcommand("estimate", "optimize r_n(beta) lower bound");
    c_estimate->add_option("--n", n)->required();
    c_estimate->add_option("--beta", beta)->required();
    c_estimate->add_option("--starts", starts);
    c_estimate->add_option("--seed", seed);
    c_estimate->add_flag("--real-only", real_only);
    c_estimate->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    c_estimate->add_option("--out", out_path);

    auto* c_sweep = app.add_subcommand("sweep", "construct/estimate over an (n, t) grid");
    c_sweep->add_option("--n", nrange)->required();
    c_sweep->add_option("--t-grid", tgrid)->required();
    c_sweep->add_option("--method", method)
        ->check(CLI::IsMember({"construct", "estimate", "both"}));
    c_sweep->add_option("--starts", starts);
    c_sweep->add_option("--seed", seed);
    c_sweep->add_option("--out", out_path)->required();

    auto* c_fit = app.add_subcommand("fit", "fit c0 + c1 t + c2 t^2 to sweep rows");
    c_fit->add_option("--in", in_path)->required();
    c_fit->add_option("--n", n)->required();
    c_fit->add_option("--method", method);
    c_fit->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    c_fit->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    const Output out{out_path};
    try {
        if (c_constants->parsed()) return cmd_constants(nrange, format, out);
        if (c_verify->parsed()) return cmd_verify(suite, max_n, beta, family, format, out);
        if (c_construct->parsed()) return cmd_construct(family, n, beta, format, out);
        if (c_estimate->parsed())
            return cmd_estimate(n, beta, starts, seed, real_only, format, out);
        if (c_sweep->parsed()) return cmd_sweep(nrange, tgrid, method, starts, seed, out_path);
        if (c_fit->parsed()) return cmd_fit(in_path, n, method, format, out);
    } catch (const RootFinderError& e) {
        std::fprintf(stderr, "numeric non-convergence: %s\n", e.what());
        return kNoConverge;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kCheckFailed;
    }
    return kUsage;
}
