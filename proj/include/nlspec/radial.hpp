#pragma once

// Radial problems on the ball B_R in dimension N:
//
//   Fr(u'', u'/r, u', u, r) - kappa u = f(r),   u'(0) = 0,   u(R) = 0.
//
// The origin is handled by a second-order Taylor start, using that a radial
// C^2 function has u''(0) = lim u'(r)/r. Annuli (r1 > 0) are regular ODE
// problems and go through the interval solvers unchanged.

#include "nlspec/bvp.hpp"
#include "nlspec/nehari.hpp"
#include "nlspec/operator.hpp"
#include "nlspec/semi_eigen.hpp"

#include <vector>

namespace nlspec {

struct RadialProblem {
    OperatorSpec spec;
    Source f;
    double R = 1.0;
    double kappa = 1.0;
    IvpConfig ivp{};
};

/// r_start / R for the Taylor start.
inline constexpr double kRadialStartFraction = 1e-6;

/// Integrates Fr = q + kappa u from the origin with u(0) = u0, u'(0) = 0 up to
/// R. The returned trajectory starts with the node r = 0 carrying
/// (u0, 0, l0), l0 = invert_origin(0, u0, q(0) + kappa u0).
/// For dim = 1 the integration starts at r = 0 directly.
Trajectory radial_integrate_from_origin(const OperatorSpec& spec, const Source& q, double kappa,
                                        double u0, double R, const IvpConfig& cfg = {},
                                        bool stop_at_first_zero = false);

/// Mixed problem u'(eps) = u(R) = 0 on the annulus (eps, R).
Trajectory radial_solve_mixed_eps(const RadialProblem& prob, double eps);

struct EpsSample {
    double eps = 0.0;
    double value = 0.0;  // u_eps(eps), resp. lambda_eps
};

struct RadialSolveReport {
    /// Direct origin shooting, with the r = 0 node.
    Trajectory solution;
    double u0_direct = 0.0;
    std::vector<EpsSample> eps_family;
    /// Polynomial extrapolation of the eps-family to eps = 0.
    double u0_extrapolated = 0.0;
    /// Difference of the last two extrapolation orders.
    double extrapolation_error = 0.0;
    /// |u0_direct - u0_extrapolated|.
    double discrepancy = 0.0;
    /// discrepancy <= 1e-5 sup |u|.
    bool agree = true;
    int shots = 0;
};

/// Ball Dirichlet problem solved by origin shooting on u(0) and by the
/// eps-family eps_k = R 2^-k, k = 3..10, then cross-checked.
RadialSolveReport radial_dirichlet(const RadialProblem& prob);

/// Origin shooting only.
ShootingSolution radial_dirichlet_direct(const RadialProblem& prob);

/// Neville extrapolation to x = 0 of the values at abscissae xs; returns the
/// estimate and the difference to the previous order.
std::pair<double, double> extrapolate_to_zero(const std::vector<double>& xs,
                                              const std::vector<double>& values);

/// First one-signed eigenpair on the ball (r1 = 0, origin shooting with
/// u(0) = sign) or on the annulus (r1, r2).
SemiEigenResult radial_semi_eigenvalue(const OperatorSpec& spec, double r1, double r2, int sign,
                                       const SemiEigenOptions& opts = {});

struct RadialEigenEpsReport {
    std::vector<EpsSample> family;
    double lambda = 0.0;
    double extrapolation_error = 0.0;
};

/// Ball semi-eigenvalue as the eps -> 0 limit of the mixed problems on
/// (eps, R), eps_k = R 2^-k, k = 3..10.
RadialEigenEpsReport radial_eigen_eps_family(const OperatorSpec& spec, double R, int sign,
                                             const SemiEigenOptions& opts = {});

/// Krein-Rutman iteration on the ball built on origin shooting.
SemiEigenResult radial_inverse_iteration(const OperatorSpec& spec, double R, int sign,
                                         const SemiEigenOptions& opts = {});

/// Piece solver for the node machinery: the piece (0, r1) uses the origin
/// start, the others are annuli.
PieceSolver radial_pieces(const OperatorSpec& spec, const SemiEigenOptions& opts = {});

Spectrum radial_spectrum(const OperatorSpec& spec, double R, int n_max,
                         const NehariOptions& opts = {});

/// max |u'(r)/r - u''(0)| over the nodes with r <= r_max.
double origin_regularity_gap(const Trajectory& traj, double r_max);

} // namespace nlspec
