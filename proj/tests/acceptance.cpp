// Acceptance runner: prints one PASS/FAIL line per criterion and exits with
// the number of failed criteria.

#include "corpus.hpp"
#include "oracles.hpp"

#include "nlspec/diagnostics.hpp"
#include "nlspec/nehari.hpp"
#include "nlspec/radial.hpp"
#include "nlspec/run.hpp"
#include "nlspec/semi_eigen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace nlspec;

namespace {

constexpr double pi = oracle::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Log {
public:
    void fail(const std::string& what) {
        if (failures_++ < 3) {
            notes_ += (notes_.empty() ? "" : "; ") + what;
        }
    }
    void check(bool ok, const std::string& what) {
        if (!ok) {
            fail(what);
        }
    }
    Outcome outcome(const std::string& summary) const {
        std::string d = summary;
        if (failures_) {
            d += "; " + std::to_string(failures_) + " failure(s): " + notes_;
        }
        return {failures_ == 0, d};
    }

private:
    int failures_ = 0;
    std::string notes_;
};

std::string num(double x, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

int hardware_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double pucci_closed_form(int n, int sign) {
    int p, m;
    oracle::piece_counts(n, sign, p, m);
    return oracle::pucci_piecewise_sine(1.0, 2.0, p, m, 1.0);
}

Outcome linear_interval() {
    Log log;
    const auto t0 = std::chrono::steady_clock::now();
    NehariOptions opts;
    opts.threads = hardware_threads();
    const auto sp = spectrum(OperatorSpec::linear(), 4, 0.0, 1.0, opts);
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    for (const auto& pair : sp.pairs) {
        const double k = pair.n + 1.0;
        const double e = rel(pair.lambda, k * k * pi * pi);
        worst = std::max(worst, e);
        log.check(e <= 1e-7, "n=" + std::to_string(pair.n) + " rel " + num(e));
    }
    log.check(sp.pairs.size() == 10, "expected 10 pairs");
    log.check(elapsed <= 5.0, "runtime " + num(elapsed) + " s");
    return log.outcome("n=0..4 both signs, max rel err " + num(worst) + ", " + num(elapsed) + " s");
}

Outcome pucci_closed_forms() {
    Log log;
    const auto t0 = std::chrono::steady_clock::now();
    NehariOptions opts;
    opts.threads = hardware_threads();
    const auto sp = spectrum(OperatorSpec::pucci_plus(1.0, 2.0), 4, 0.0, 1.0, opts);
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    for (const auto& pair : sp.pairs) {
        const double e = rel(pair.lambda, pucci_closed_form(pair.n, pair.sign));
        worst = std::max(worst, e);
        log.check(e <= 1e-6, "n=" + std::to_string(pair.n) + " sign " + std::to_string(pair.sign) +
                                 " rel " + num(e));
    }
    const double s2 = std::sqrt(2.0);
    const double node = sp.find(1, -1).nodes.t.at(0);
    const double node_err = std::abs(node - s2 / (1.0 + s2));
    log.check(node_err <= 1e-6, "node t1 off by " + num(node_err));
    log.check(rel(sp.find(0, 1).lambda, pi * pi) <= 1e-6, "lambda0+");
    log.check(rel(sp.find(0, -1).lambda, 2 * pi * pi) <= 1e-6, "lambda0-");
    log.check(elapsed <= 30.0, "runtime " + num(elapsed) + " s");
    return log.outcome("n=0..4 both signs, max rel err " + num(worst) + ", node err " +
                       num(node_err) + ", " + num(elapsed) + " s");
}

Outcome cross_method() {
    Log log;
    double worst_lambda = 0.0;
    double worst_u = 0.0;
    const auto cases = corpus::random_cases(20, 20240601);
    for (const auto& c : cases) {
        for (int sign : {1, -1}) {
            try {
                const auto s = semi_eigenvalue(c.spec, c.a, c.b, sign);
                const auto k = inverse_iteration(c.spec, c.a, c.b, sign);
                const double e = rel(k.lambda, s.lambda);
                const double d = corpus::sup_distance(s.eigenfunction, k.eigenfunction, c.a, c.b);
                worst_lambda = std::max(worst_lambda, e);
                worst_u = std::max(worst_u, d);
                log.check(e <= 1e-6, c.label + " lambda rel " + num(e));
                log.check(d <= 1e-5, c.label + " eigenfunction " + num(d));
            } catch (const std::exception& ex) {
                log.fail(c.label + ": " + ex.what());
            }
        }
    }
    return log.outcome(std::to_string(cases.size()) + " specs x 2 signs, max rel lambda " +
                       num(worst_lambda) + ", max sup diff " + num(worst_u));
}

Outcome radial_linear() {
    Log log;
    NehariOptions opts;
    opts.threads = hardware_threads();
    const auto sp = radial_spectrum(OperatorSpec::linear(1.0, 1.0, 0.0, 0.0, 3), 1.0, 4, opts);
    double worst = 0.0;
    for (const auto& pair : sp.pairs) {
        const double k = pair.n + 1.0;
        const double e = rel(pair.lambda, k * k * pi * pi);
        worst = std::max(worst, e);
        log.check(e <= 1e-5, "N=3 n=" + std::to_string(pair.n) + " rel " + num(e));
        for (std::size_t j = 0; j < pair.nodes.n(); ++j) {
            const double want = (j + 1.0) / k;
            const double ne = rel(pair.nodes.t[j], want);
            worst = std::max(worst, ne);
            log.check(ne <= 1e-5, "N=3 node rel " + num(ne));
        }
    }

    oracle::Grid g;
    g.dim = 2;
    g.neumann_left = true;
    const double fd_lap = oracle::fd_eigen_richardson({{1.0, 1.0, 0.0, 0.0}}, true, g);
    const double lap2 =
        radial_semi_eigenvalue(OperatorSpec::linear(1.0, 1.0, 0.0, 0.0, 2), 0.0, 1.0, 1).lambda;
    const double e_lap = rel(lap2, fd_lap);
    log.check(e_lap <= 1e-4, "N=2 Laplacian vs finite differences " + num(e_lap));

    const double fd_pucci = oracle::fd_eigen_richardson(oracle::pucci_family(1.0, 2.0), true, g);
    const double pucci2 = radial_semi_eigenvalue(OperatorSpec::pucci_plus(1.0, 2.0, 2), 0.0, 1.0, 1).lambda;
    const double e_pucci = rel(pucci2, fd_pucci);
    log.check(e_pucci <= 1e-4, "N=2 Pucci vs finite differences " + num(e_pucci));
    return log.outcome("N=3 n=0..4 max rel err " + num(worst) + "; N=2 Laplacian " +
                       num(lap2, 10) + " vs FD " + num(fd_lap, 10) + " (rel " + num(e_lap) +
                       "); N=2 Pucci rel " + num(e_pucci));
}

Outcome radial_pucci() {
    Log log;
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0, 2);
    double lam[2] = {0.0, 0.0};
    double worst = 0.0;
    for (int sign : {1, -1}) {
        const auto direct = radial_semi_eigenvalue(spec, 0.0, 1.0, sign);
        const auto eps = radial_eigen_eps_family(spec, 1.0, sign);
        const double e = rel(eps.lambda, direct.lambda);
        worst = std::max(worst, e);
        log.check(e <= 1e-5, "sign " + std::to_string(sign) + " direct vs eps " + num(e));
        lam[sign > 0 ? 0 : 1] = direct.lambda;

        const double l05 = radial_semi_eigenvalue(spec, 0.0, 0.5, sign).lambda;
        const double l2 = radial_semi_eigenvalue(spec, 0.0, 2.0, sign).lambda;
        log.check(l2 < direct.lambda && direct.lambda < l05, "radius ordering");
        const double l8 = radial_semi_eigenvalue(spec, 0.0, 1.0 / 8.0, sign).lambda;
        log.check(l8 > 8.0 * direct.lambda, "R/8 blow-up");
    }
    log.check(lam[0] <= lam[1], "lambda+ <= lambda-");
    return log.outcome("lambda+ = " + num(lam[0], 10) + ", lambda- = " + num(lam[1], 10) +
                       ", direct vs eps max rel " + num(worst));
}

Outcome monotonicity() {
    Log log;
    std::vector<corpus::Case> cases = corpus::catalog_cases();
    for (auto& c : corpus::random_cases(5, 7)) {
        cases.push_back(c);
    }
    int pairs_checked = 0;
    int spectra_checked = 0;
    NehariOptions opts;
    opts.threads = hardware_threads();
    for (const auto& c : cases) {
        // 11 nested intervals give 10 strictly nested pairs.
        const auto table = monotonicity_table(c.spec, c.a, c.b, 11);
        for (std::size_t k = 1; k < table.rows.size(); ++k) {
            const auto& outer = table.rows[k - 1];
            const auto& inner = table.rows[k];
            log.check(inner.lambda_plus > outer.lambda_plus && inner.lambda_minus > outer.lambda_minus,
                      c.label + " nested pair " + std::to_string(k));
            ++pairs_checked;
        }
        try {
            const auto sp = spectrum(c.spec, 4, c.a, c.b, opts);
            for (int sign : {1, -1}) {
                for (int n = 1; n <= 4; ++n) {
                    log.check(sp.find(n, sign).lambda > sp.find(n - 1, sign).lambda,
                              c.label + " n=" + std::to_string(n));
                }
            }
            ++spectra_checked;
        } catch (const std::exception& ex) {
            log.fail(c.label + ": " + ex.what());
        }
    }
    return log.outcome(std::to_string(pairs_checked) + " nested pairs (x2 signs) over " +
                       std::to_string(cases.size()) + " specs; " + std::to_string(spectra_checked) +
                       " spectra n=0..4 increasing");
}

Outcome completeness() {
    Log log;
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0);
    NehariOptions opts;
    opts.threads = hardware_threads();
    const auto sp = spectrum(spec, 3, 0.0, 1.0, opts);
    double top = 0.0;
    for (const auto& pair : sp.pairs) {
        top = std::max(top, pair.lambda);
    }
    const int points = 10000;
    const double h = top * 1.02 / points;
    int found = 0;
    int stray = 0;
    for (int sign : {1, -1}) {
        std::vector<int> counts(points + 1);
        std::vector<std::thread> workers;
        const int nt = hardware_threads();
        for (int w = 0; w < nt; ++w) {
            workers.emplace_back([&, w] {
                for (int k = w; k <= points; k += nt) {
                    const double lambda = k * h;
                    // Zeros in (0, 1] of the shot from the left end.
                    const auto traj = shoot_lambda(spec, 0.0, 1.0, sign, lambda).trajectory;
                    counts[k] = static_cast<int>(
                        std::floor(winding_angle(traj, sign, lambda) / pi + 1e-12));
                }
            });
        }
        for (auto& t : workers) {
            t.join();
        }
        std::vector<bool> matched(4, false);
        for (int k = 1; k <= points; ++k) {
            if (counts[k] == counts[k - 1]) {
                continue;
            }
            // A zero reached t = 1 somewhere in ((k - 1) h, k h]: it must be a
            // known eigenvalue with counts[k - 1] interior zeros.
            const int n = counts[k - 1];
            bool known = false;
            if (n >= 0 && n <= 3 && counts[k] == n + 1) {
                const double lam = sp.find(n, sign).lambda;
                known = lam > (k - 1) * h - 1e-9 && lam <= k * h + 1e-9;
                if (known) {
                    matched[n] = true;
                }
            }
            if (!known) {
                ++stray;
                log.fail("sign " + std::to_string(sign) + " transition near lambda " + num(k * h, 8));
            }
        }
        for (int n = 0; n <= 3; ++n) {
            log.check(matched[n], "lambda_" + std::to_string(n) + " sign " + std::to_string(sign) +
                                      " not detected by the scan");
            found += matched[n];
        }
    }
    return log.outcome(std::to_string(points) + " grid points up to " + num(top * 1.02, 6) +
                       " per sign; " + std::to_string(found) + "/8 eigenvalues located, " +
                       std::to_string(stray) + " stray boundary hits");
}

Outcome abp_audit() {
    Log log;
    int solves = 0;
    double min_margin = INFINITY;
    for (const auto& c : corpus::catalog_cases()) {
        for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{-0.5, 1.5}}) {
            try {
                const auto res = run_abp_audit(c.spec, a, b);
                solves += static_cast<int>(res.doc["solves"].size());
                log.check(res.doc["all_pass"].get<bool>(), c.label + " corpus solve failed ABP");
                log.check(res.doc["violation_control"]["detected"].get<bool>(),
                          c.label + " violation control not detected");
                log.check(res.doc["blowup_consistent"].get<bool>(), c.label + " blow-up inequality");
                double smallest_len = INFINITY;
                for (const auto& row : res.doc["blowup"]) {
                    smallest_len = std::min(smallest_len, row["length"].get<double>());
                    min_margin = std::min(min_margin, row["margin"].get<double>());
                }
                log.check(smallest_len <= 1e-3 * (1 + 1e-9), c.label + " shortest length " + num(smallest_len));
            } catch (const std::exception& ex) {
                log.fail(c.label + ": " + ex.what());
            }
        }
    }
    for (const auto& spec : {OperatorSpec::pucci_plus(1.0, 2.0, 2), OperatorSpec::pucci_minus(1.0, 2.0, 3),
                             OperatorSpec::linear(1.0, 1.0, 0.0, 0.0, 3)}) {
        for (double f : {-1.0, 1.0}) {
            RadialProblem prob{spec, constant_source(f), 1.0, choose_kappa(spec), {}};
            const auto rep = radial_dirichlet(prob);
            const auto cert = abp_check(rep.solution, prob.f, spec, Geometry::ball(1.0, spec.dim));
            log.check(cert.pass, "radial solve N=" + std::to_string(spec.dim));
            const double factor = f < 0.0 ? 2.0 * cert.bound_plus / cert.sup_u_plus
                                           : 2.0 * cert.bound_minus / cert.sup_u_minus;
            const auto control = abp_check(rep.solution.scaled(std::max(100.0, factor)), prob.f, spec,
                                           Geometry::ball(1.0, spec.dim));
            log.check(!control.pass, "radial violation control");
            ++solves;
        }
    }
    return log.outcome(std::to_string(solves) + " solves certified, controls detected, min blow-up margin " +
                       num(min_margin));
}

Outcome regularity() {
    Log log;
    double worst_jump = 0.0;
    double worst_res = 0.0;
    double worst_gap = 0.0;
    NehariOptions opts;
    opts.threads = hardware_threads();
    auto audit = [&](const Spectrum& sp, const std::string& label) {
        for (const auto& pair : sp.pairs) {
            worst_jump = std::max(worst_jump, pair.max_jump);
            worst_res = std::max(worst_res, pair.residual / pair.lambda);
            log.check(pair.max_jump <= 1e-7, label + " jump " + num(pair.max_jump));
            log.check(pair.residual <= 1e-7 * pair.lambda, label + " residual " + num(pair.residual));
        }
    };
    for (const auto& c : corpus::catalog_cases()) {
        audit(spectrum(c.spec, 4, c.a, c.b, opts), c.label);
    }
    for (const auto& spec : {OperatorSpec::linear(1.0, 1.0, 0.0, 0.0, 3), OperatorSpec::pucci_plus(1.0, 2.0, 2)}) {
        const auto sp = radial_spectrum(spec, 1.0, 3, opts);
        audit(sp, "radial " + std::string(to_string(spec.kind)));
        for (const auto& pair : sp.pairs) {
            const double gap = origin_regularity_gap(pair.global, 10.0 * kRadialStartFraction);
            worst_gap = std::max(worst_gap, gap);
            log.check(gap <= 1e-5, "origin gap " + num(gap));
        }
        RadialProblem prob{spec, constant_source(-1.0), 1.0, choose_kappa(spec), {}};
        const double gap = origin_regularity_gap(radial_dirichlet(prob).solution, 10.0 * kRadialStartFraction);
        worst_gap = std::max(worst_gap, gap);
        log.check(gap <= 1e-5, "radial Dirichlet origin gap " + num(gap));
    }
    return log.outcome("max jump/sup|u'| " + num(worst_jump) + ", max residual/lambda " + num(worst_res) +
                       ", max origin gap " + num(worst_gap));
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"linear interval spectrum", linear_interval},
        {"Pucci closed-form spectrum", pucci_closed_forms},
        {"shooting vs inverse iteration", cross_method},
        {"radial linear spectrum", radial_linear},
        {"radial Pucci consistency", radial_pucci},
        {"monotonicity suite", monotonicity},
        {"completeness probe", completeness},
        {"ABP audit", abp_audit},
        {"regularity checks", regularity},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome out;
        try {
            out = criteria[k].second();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        failed += !out.pass;
        std::printf("[%s] criterion %zu: %s: %s\n", out.pass ? "PASS" : "FAIL", k + 1,
                    criteria[k].first, out.detail.c_str());
        std::fflush(stdout);
    }
    return failed;
}
