#include "nlspec/semi_eigen.hpp"

#include "nlspec/bvp.hpp"
#include "nlspec/diagnostics.hpp"
#include "nlspec/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <memory>
#include <random>
#include <sstream>

namespace nlspec {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

void check_interval(double t1, double t2, int sign) {
    if (!(t2 > t1)) {
        throw ConfigError("interval: need t1 < t2");
    }
    if (sign != 1 && sign != -1) {
        throw ConfigError("sign: must be +1 or -1");
    }
}

Trajectory normalized(const Trajectory& traj) {
    const double sup = traj.sup_abs();
    if (!(sup > 0.0)) {
        throw SolverError("eigenfunction vanished identically");
    }
    return traj.scaled(1.0 / sup);
}

// The shot is homogeneous in its slope, so the absolute tolerance follows it.
IvpConfig shot_config(const SemiEigenOptions& opts) {
    IvpConfig cfg = opts.ivp;
    cfg.abs_tol *= opts.slope_scale;
    return cfg;
}

} // namespace

std::string_view to_string(EigenMethod method) {
    return method == EigenMethod::shoot ? "shoot" : "inverse_iteration";
}

ShotOutcome shoot_lambda(const OperatorSpec& spec, double t1, double t2, int sign, double lambda,
                         const SemiEigenOptions& opts) {
    check_interval(t1, t2, sign);
    Trajectory traj = integrate(spec, zero_source(), -lambda, t1, t2, 0.0, sign * opts.slope_scale,
                                shot_config(opts));
    auto zero = first_zero(traj, t1, opts.ivp.event_tol);
    return {zero, std::move(traj)};
}

double winding_angle(const Trajectory& traj, int sign, double lambda) {
    const double s = std::sqrt(1.0 + std::abs(lambda));
    const auto& u = traj.u_nodes();
    const auto& p = traj.p_nodes();
    double theta = std::atan2(s * sign * u.front(), sign * p.front());
    double prev = theta;
    for (std::size_t k = 1; k < u.size(); ++k) {
        const double cur = std::atan2(s * sign * u[k], sign * p[k]);
        double step = cur - prev;
        step = std::remainder(step, 2.0 * kPi);
        theta += step;
        prev = cur;
    }
    return theta;
}

LambdaSearchResult find_first_zero_lambda(const LambdaShooter& shooter, int sign,
                                          double lambda_floor, double lambda_start,
                                          int max_expansions) {
    LambdaSearchResult out;
    auto phase = [&](double lambda) {
        ++out.shots;
        return winding_angle(shooter(lambda), sign, lambda) - kPi;
    };

    double lo = lambda_floor;
    double g_lo = phase(lo);
    int expansions = 0;
    while (g_lo >= 0.0) {
        if (++expansions > max_expansions) {
            throw SolverError("semi-eigenvalue: no lower lambda bracket");
        }
        lo = lo - std::max(1.0, std::abs(lo));
        g_lo = phase(lo);
    }
    double hi = std::max(lambda_start, lo + 1.0);
    double g_hi = phase(hi);
    expansions = 0;
    while (g_hi <= 0.0) {
        if (++expansions > max_expansions) {
            std::ostringstream msg;
            msg << "semi-eigenvalue: no upper lambda bracket below " << hi;
            throw SolverError(msg.str());
        }
        lo = hi;
        g_lo = g_hi;
        hi = 2.0 * std::abs(hi) + 1.0;
        g_hi = phase(hi);
    }

    std::uintmax_t max_iter = 200;
    auto tol = [](double x, double y) {
        return std::abs(x - y) <= 1e-13 * (1.0 + std::max(std::abs(x), std::abs(y)));
    };
    auto [a, b] = boost::math::tools::toms748_solve(phase, lo, hi, g_lo, g_hi, tol, max_iter);
    if (max_iter >= 200) {
        throw SolverError("semi-eigenvalue: lambda search did not converge");
    }
    out.lambda = 0.5 * (a + b);
    out.trajectory = shooter(out.lambda);
    ++out.shots;
    return out;
}

double eigen_residual(const OperatorSpec& spec, double lambda, const Trajectory& u, double t1,
                      double t2, int probes) {
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> pick(t1, t2);
    double worst = 0.0;
    for (int k = 0; k < probes; ++k) {
        const double t = pick(rng);
        worst = std::max(worst, equation_residual(spec, zero_source(), -lambda, u, t));
    }
    return worst;
}

SemiEigenResult semi_eigenvalue(const OperatorSpec& spec, double t1, double t2, int sign,
                                const SemiEigenOptions& opts) {
    check_interval(t1, t2, sign);
    spec.validate();
    if (is_concave(spec)) {
        SemiEigenResult res = semi_eigenvalue(flip(spec), t1, t2, -sign, opts);
        res.sign = sign;
        res.eigenfunction = res.eigenfunction.scaled(-1.0);
        res.residual = eigen_residual(spec, res.lambda, res.eigenfunction, t1, t2);
        return res;
    }
    const double length = t2 - t1;
    auto shooter = [&](double lambda) {
        return integrate(spec, zero_source(), -lambda, t1, t2, 0.0, sign * opts.slope_scale,
                         shot_config(opts));
    };
    const double floor = -choose_kappa(spec);
    const double start = kPi * kPi * spec.lambda_max / (length * length);
    LambdaSearchResult found =
        find_first_zero_lambda(shooter, sign, floor, start, opts.max_expansions);

    SemiEigenResult res;
    res.lambda = found.lambda;
    res.sign = sign;
    res.t1 = t1;
    res.t2 = t2;
    res.eigenfunction = normalized(found.trajectory);
    res.method = EigenMethod::shoot;
    res.iterations = found.shots;
    res.residual = eigen_residual(spec, res.lambda, res.eigenfunction, t1, t2);
    return res;
}

SemiEigenResult krein_rutman(const ShiftedSolver& solver, double kappa, double t1, double t2,
                             int max_iterations) {
    for (int attempt = 0;; ++attempt) {
        try {
            auto v = std::make_shared<const Trajectory>(
                normalized(solver(constant_source(-1.0), kappa)));
            double mu_prev = 0.0;
            for (int it = 1; it <= max_iterations; ++it) {
                Source rhs = [v](double t) { return -v->value(t); };
                Trajectory w = solver(rhs, kappa);
                const double sup = w.sup_abs();
                if (!(sup > 0.0)) {
                    throw SolverError("inverse iteration: iterate vanished");
                }
                const double mu = 1.0 / sup;
                v = std::make_shared<const Trajectory>(w.scaled(mu));
                if (it > 1 && std::abs(mu - mu_prev) < 1e-10 * mu) {
                    SemiEigenResult res;
                    res.lambda = mu - kappa;
                    res.sign = 1;
                    res.t1 = t1;
                    res.t2 = t2;
                    res.eigenfunction = *v;
                    res.method = EigenMethod::inverse_iteration;
                    res.iterations = it;
                    return res;
                }
                mu_prev = mu;
            }
            throw SolverError("inverse iteration: no convergence within the iteration budget");
        } catch (const SolverError& e) {
            if (attempt >= 3 || std::string_view(e.what()).find("bracket") == std::string_view::npos) {
                throw;
            }
            kappa *= 2.0;
        }
    }
}

SemiEigenResult inverse_iteration(const OperatorSpec& spec, double t1, double t2, int sign,
                                  const SemiEigenOptions& opts) {
    check_interval(t1, t2, sign);
    spec.validate();
    if (sign < 0) {
        SemiEigenResult res = inverse_iteration(flip(spec), t1, t2, 1, opts);
        res.sign = -1;
        res.eigenfunction = res.eigenfunction.scaled(-1.0);
        res.residual = eigen_residual(spec, res.lambda, res.eigenfunction, t1, t2);
        return res;
    }
    auto solver = [&](const Source& f, double kappa) {
        BvpProblem prob;
        prob.spec = spec;
        prob.f = f;
        prob.a = t1;
        prob.b = t2;
        prob.kappa = kappa;
        prob.ivp = opts.ivp;
        return solve_dirichlet(prob).trajectory;
    };
    SemiEigenResult res = krein_rutman(solver, choose_kappa(spec), t1, t2, opts.max_iterations);
    res.residual = eigen_residual(spec, res.lambda, res.eigenfunction, t1, t2);
    return res;
}

MonotonicityTable monotonicity_table(const OperatorSpec& spec, double a, double b, int steps,
                                     double eps, const SemiEigenOptions& opts) {
    if (steps < 2) {
        throw ConfigError("shrink_steps: must be >= 2");
    }
    if (eps <= 0.0) {
        eps = (b - a) / (2.0 * (steps + 1));
    }
    if (!(a + (steps - 1) * eps < b - (steps - 1) * eps)) {
        throw ConfigError("shrink: intervals collapse before the last step");
    }
    MonotonicityTable table;
    for (int k = 0; k < steps; ++k) {
        MonotonicityRow row;
        row.t1 = a + k * eps;
        row.t2 = b - k * eps;
        row.lambda_plus = semi_eigenvalue(spec, row.t1, row.t2, 1, opts).lambda;
        row.lambda_minus = semi_eigenvalue(spec, row.t1, row.t2, -1, opts).lambda;
        const double length = row.t2 - row.t1;
        row.blowup_bound = 1.0 / (abp_constant(spec.lambda_min, spec.gamma, length, 1) * length) -
                           choose_kappa(spec);
        if (!table.rows.empty()) {
            const auto& prev = table.rows.back();
            table.strictly_increasing = table.strictly_increasing &&
                                        row.lambda_plus > prev.lambda_plus &&
                                        row.lambda_minus > prev.lambda_minus;
        }
        table.blowup_consistent = table.blowup_consistent && row.lambda_plus >= row.blowup_bound &&
                                  row.lambda_minus >= row.blowup_bound;
        table.rows.push_back(row);
    }
    return table;
}

} // namespace nlspec
