#include "nlspec/bvp.hpp"

#include "nlspec/error.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace nlspec {

namespace {

constexpr int kMaxExpansions = 60;
constexpr double kShootTol = 1e-10;

void check_problem(const BvpProblem& prob) {
    prob.spec.validate();
    prob.ivp.validate();
    if (!(prob.b > prob.a)) {
        throw ConfigError("interval: need a < b");
    }
    if (!prob.f) {
        throw ConfigError("f: right-hand side missing");
    }
    if (!(prob.seed > 0.0)) {
        throw ConfigError("seed: must be positive");
    }
}

} // namespace

ShootingSolution shoot_increasing(const std::function<Shot(double)>& shoot, double seed,
                                  const char* what) {
    ShootingSolution sol;
    Shot best{std::numeric_limits<double>::infinity(), {}};
    double best_d = 0.0;
    auto g = [&](double d) {
        Shot s = shoot(d);
        ++sol.shots;
        const double value = s.end_value;
        const bool within = std::abs(value) <= kShootTol * (1.0 + s.trajectory.sup_abs());
        if (std::abs(value) < std::abs(best.end_value)) {
            best_d = d;
            best = std::move(s);
        }
        // An exact zero tells the bracketing solver to stop here.
        return within ? 0.0 : value;
    };

    const double g0 = g(0.0);
    if (g0 == 0.0) {
        sol.parameter = best_d;
        sol.trajectory = std::move(best.trajectory);
        return sol;
    }
    // g is increasing: move away from 0 in the direction that changes its sign.
    const double dir = g0 > 0.0 ? -1.0 : 1.0;
    double inner = 0.0;
    double g_inner = g0;
    double outer = dir * seed;
    double g_outer = g(outer);
    int expansions = 0;
    while (g_outer != 0.0 && (g_outer > 0.0) == (g0 > 0.0)) {
        if (++expansions > kMaxExpansions) {
            std::ostringstream msg;
            msg << what << ": no shooting bracket after " << kMaxExpansions
                << " expansions (structural hypotheses violated?)";
            throw SolverError(msg.str());
        }
        inner = outer;
        g_inner = g_outer;
        outer *= 4.0;
        g_outer = g(outer);
    }
    if (g_outer != 0.0) {
        double lo = inner;
        double hi = outer;
        double glo = g_inner;
        double ghi = g_outer;
        if (lo > hi) {
            std::swap(lo, hi);
            std::swap(glo, ghi);
        }
        std::uintmax_t max_iter = 200;
        auto tol = [](double x, double y) {
            return std::abs(x - y) <= 1e-15 * std::max(1.0, std::max(std::abs(x), std::abs(y)));
        };
        boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, max_iter);
    }
    sol.parameter = best_d;
    sol.trajectory = std::move(best.trajectory);
    const double target = 1e3 * kShootTol * (1.0 + sol.trajectory.sup_abs());
    if (!(std::abs(best.end_value) <= target)) {
        std::ostringstream msg;
        msg << what << ": shooting stalled with |u(b)| = " << std::abs(best.end_value);
        throw SolverError(msg.str());
    }
    return sol;
}

double choose_kappa(const OperatorSpec& spec) { return spec.delta + 1.0; }

ShootingSolution solve_dirichlet(const BvpProblem& prob) {
    check_problem(prob);
    const Source q = prob.f;
    auto shoot = [&](double d) {
        Trajectory tr = integrate(prob.spec, q, prob.kappa, prob.a, prob.b, 0.0, d, prob.ivp);
        const double end = tr.u_nodes().back();
        return Shot{end, std::move(tr)};
    };
    return shoot_increasing(shoot, prob.seed, "solve_dirichlet");
}

ShootingSolution solve_neumann_dirichlet(const BvpProblem& prob) {
    check_problem(prob);
    if (!(prob.clamp >= prob.a && prob.clamp < prob.b)) {
        throw ConfigError("clamp: need a <= c < b");
    }
    const Source q = prob.f;
    auto shoot = [&](double d) {
        Trajectory right =
            integrate(prob.spec, q, prob.kappa, prob.clamp, prob.b, d, 0.0, prob.ivp);
        const double end = right.u_nodes().back();
        if (prob.clamp > prob.a) {
            Trajectory left =
                integrate(prob.spec, q, prob.kappa, prob.clamp, prob.a, d, 0.0, prob.ivp);
            right = left.joined(right);
        }
        return Shot{end, std::move(right)};
    };
    return shoot_increasing(shoot, prob.seed, "solve_neumann_dirichlet");
}

ShootingSolution solve(const BvpProblem& prob) {
    return prob.bc == BoundaryKind::dirichlet_dirichlet ? solve_dirichlet(prob)
                                                        : solve_neumann_dirichlet(prob);
}

} // namespace nlspec
