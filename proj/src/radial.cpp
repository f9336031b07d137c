#include "nlspec/radial.hpp"

#include "nlspec/error.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>

namespace nlspec {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr int kFirstLevel = 3;
constexpr int kLastLevel = 10;

void check_radius(double R) {
    if (!(R > 0.0)) {
        throw ConfigError("R: must be positive");
    }
}

Trajectory with_origin(const Trajectory& tail, double u0, double ell0) {
    std::vector<double> t{0.0};
    std::vector<double> u{u0};
    std::vector<double> p{0.0};
    std::vector<double> m{ell0};
    t.insert(t.end(), tail.nodes().begin(), tail.nodes().end());
    u.insert(u.end(), tail.u_nodes().begin(), tail.u_nodes().end());
    p.insert(p.end(), tail.p_nodes().begin(), tail.p_nodes().end());
    m.insert(m.end(), tail.m_nodes().begin(), tail.m_nodes().end());
    Trajectory out(std::move(t), std::move(u), std::move(p), std::move(m));
    out.stats = tail.stats;
    return out;
}

std::vector<double> eps_levels(double R) {
    std::vector<double> out;
    for (int k = kFirstLevel; k <= kLastLevel; ++k) {
        out.push_back(std::ldexp(R, -k));
    }
    return out;
}

Trajectory normalized(const Trajectory& traj) {
    const double sup = traj.sup_abs();
    if (!(sup > 0.0)) {
        throw SolverError("eigenfunction vanished identically");
    }
    return traj.scaled(1.0 / sup);
}

} // namespace

Trajectory radial_integrate_from_origin(const OperatorSpec& spec, const Source& q, double kappa,
                                        double u0, double R, const IvpConfig& cfg,
                                        bool stop_at_first_zero) {
    check_radius(R);
    if (spec.dim == 1) {
        return integrate(spec, q, kappa, 0.0, R, u0, 0.0, cfg, stop_at_first_zero);
    }
    const double ell0 = invert_origin(spec, 0.0, u0, q(0.0) + kappa * u0);
    const double rs = kRadialStartFraction * R;
    const double us = u0 + 0.5 * ell0 * rs * rs;
    const double ps = ell0 * rs;
    Trajectory tail = integrate(spec, q, kappa, rs, R, us, ps, cfg, stop_at_first_zero);
    return with_origin(tail, u0, ell0);
}

Trajectory radial_solve_mixed_eps(const RadialProblem& prob, double eps) {
    if (!(eps > 0.0 && eps < prob.R)) {
        throw ConfigError("eps: need 0 < eps < R");
    }
    BvpProblem bvp;
    bvp.spec = prob.spec;
    bvp.f = prob.f;
    bvp.a = eps;
    bvp.b = prob.R;
    bvp.kappa = prob.kappa;
    bvp.bc = BoundaryKind::neumann_dirichlet;
    bvp.clamp = eps;
    bvp.ivp = prob.ivp;
    return solve_neumann_dirichlet(bvp).trajectory;
}

ShootingSolution radial_dirichlet_direct(const RadialProblem& prob) {
    prob.spec.validate();
    check_radius(prob.R);
    if (!prob.f) {
        throw ConfigError("f: right-hand side missing");
    }
    auto shoot = [&](double u0) {
        Trajectory tr = radial_integrate_from_origin(prob.spec, prob.f, prob.kappa, u0, prob.R,
                                                     prob.ivp);
        const double end = tr.u_nodes().back();
        return Shot{end, std::move(tr)};
    };
    return shoot_increasing(shoot, 1.0, "radial_dirichlet");
}

std::pair<double, double> extrapolate_to_zero(const std::vector<double>& xs,
                                              const std::vector<double>& values) {
    if (xs.empty() || xs.size() != values.size()) {
        throw ConfigError("extrapolation: need matching non-empty samples");
    }
    // Neville's table evaluated at x = 0; row k holds order-k estimates.
    std::vector<double> p = values;
    double previous = p.back();
    double estimate = p.back();
    const std::size_t n = xs.size();
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i + k < n; ++i) {
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
        previous = estimate;
        estimate = p[n - 1 - k];
    }
    return {estimate, std::abs(estimate - previous)};
}

RadialSolveReport radial_dirichlet(const RadialProblem& prob) {
    RadialSolveReport rep;
    ShootingSolution direct = radial_dirichlet_direct(prob);
    rep.solution = std::move(direct.trajectory);
    rep.u0_direct = rep.solution.u_nodes().front();
    rep.shots = direct.shots;

    std::vector<double> xs;
    std::vector<double> values;
    for (double eps : eps_levels(prob.R)) {
        Trajectory tr = radial_solve_mixed_eps(prob, eps);
        const double value = tr.u_nodes().front();
        rep.eps_family.push_back({eps, value});
        xs.push_back(eps);
        values.push_back(value);
    }
    std::tie(rep.u0_extrapolated, rep.extrapolation_error) = extrapolate_to_zero(xs, values);
    rep.discrepancy = std::abs(rep.u0_direct - rep.u0_extrapolated);
    rep.agree = rep.discrepancy <= 1e-5 * rep.solution.sup_abs() + 1e-300;
    return rep;
}

SemiEigenResult radial_semi_eigenvalue(const OperatorSpec& spec, double r1, double r2, int sign,
                                       const SemiEigenOptions& opts) {
    if (!(r1 >= 0.0 && r2 > r1)) {
        throw ConfigError("interval: need 0 <= r1 < r2");
    }
    if (r1 > 0.0) {
        return semi_eigenvalue(spec, r1, r2, sign, opts);
    }
    if (sign != 1 && sign != -1) {
        throw ConfigError("sign: must be +1 or -1");
    }
    spec.validate();
    if (is_concave(spec)) {
        SemiEigenResult res = radial_semi_eigenvalue(flip(spec), r1, r2, -sign, opts);
        res.sign = sign;
        res.eigenfunction = res.eigenfunction.scaled(-1.0);
        res.residual = eigen_residual(spec, res.lambda, res.eigenfunction, r1, r2);
        return res;
    }
    auto shooter = [&](double lambda) {
        return radial_integrate_from_origin(spec, zero_source(), -lambda, sign, r2, opts.ivp);
    };
    const double floor = -choose_kappa(spec);
    const double start = kPi * kPi * spec.lambda_max / (r2 * r2);
    LambdaSearchResult found =
        find_first_zero_lambda(shooter, sign, floor, start, opts.max_expansions);
    SemiEigenResult res;
    res.lambda = found.lambda;
    res.sign = sign;
    res.t1 = 0.0;
    res.t2 = r2;
    res.eigenfunction = normalized(found.trajectory);
    res.method = EigenMethod::shoot;
    res.iterations = found.shots;
    res.residual = eigen_residual(spec, res.lambda, res.eigenfunction, 0.0, r2);
    return res;
}

RadialEigenEpsReport radial_eigen_eps_family(const OperatorSpec& spec, double R, int sign,
                                             const SemiEigenOptions& opts) {
    check_radius(R);
    spec.validate();
    if (is_concave(spec)) {
        return radial_eigen_eps_family(flip(spec), R, -sign, opts);
    }
    RadialEigenEpsReport rep;
    std::vector<double> xs;
    std::vector<double> values;
    for (double eps : eps_levels(R)) {
        auto shooter = [&](double lambda) {
            return integrate(spec, zero_source(), -lambda, eps, R, sign, 0.0, opts.ivp);
        };
        const double start = kPi * kPi * spec.lambda_max / (R * R);
        const double lambda = find_first_zero_lambda(shooter, sign, -choose_kappa(spec), start,
                                                     opts.max_expansions)
                                  .lambda;
        rep.family.push_back({eps, lambda});
        xs.push_back(eps);
        values.push_back(lambda);
    }
    std::tie(rep.lambda, rep.extrapolation_error) = extrapolate_to_zero(xs, values);
    return rep;
}

SemiEigenResult radial_inverse_iteration(const OperatorSpec& spec, double R, int sign,
                                         const SemiEigenOptions& opts) {
    check_radius(R);
    spec.validate();
    if (sign < 0) {
        SemiEigenResult res = radial_inverse_iteration(flip(spec), R, 1, opts);
        res.sign = -1;
        res.eigenfunction = res.eigenfunction.scaled(-1.0);
        res.residual = eigen_residual(spec, res.lambda, res.eigenfunction, 0.0, R);
        return res;
    }
    auto solver = [&](const Source& f, double kappa) {
        RadialProblem prob{spec, f, R, kappa, opts.ivp};
        return radial_dirichlet_direct(prob).trajectory;
    };
    SemiEigenResult res = krein_rutman(solver, choose_kappa(spec), 0.0, R, opts.max_iterations);
    res.residual = eigen_residual(spec, res.lambda, res.eigenfunction, 0.0, R);
    return res;
}

PieceSolver radial_pieces(const OperatorSpec& spec, const SemiEigenOptions& opts) {
    return [spec, opts](double r1, double r2, int sign) {
        return radial_semi_eigenvalue(spec, r1, r2, sign, opts);
    };
}

Spectrum radial_spectrum(const OperatorSpec& spec, double R, int n_max,
                         const NehariOptions& opts) {
    check_radius(R);
    spec.validate();
    PieceCache cache(radial_pieces(spec, opts.eigen));
    return spectrum(cache, spec, n_max, 0.0, R, opts);
}

double origin_regularity_gap(const Trajectory& traj, double r_max) {
    if (traj.empty() || traj.start() != 0.0) {
        throw ConfigError("origin regularity: trajectory must start at r = 0");
    }
    const double ell0 = traj.m_nodes().front();
    double gap = 0.0;
    const auto& r = traj.nodes();
    const auto& p = traj.p_nodes();
    for (std::size_t k = 1; k < r.size() && r[k] <= r_max; ++k) {
        gap = std::max(gap, std::abs(p[k] / r[k] - ell0));
    }
    return gap;
}

} // namespace nlspec
