#pragma once

// First positive / negative semi-eigenvalues on an interval.
//
// Sign convention: Fr(u'', u'/t, u', u, t) = -lambda u, so the Laplacian on
// (0, 1) has lambda = pi^2. The opposite convention F = lambda u maps to
// -lambda.

#include "nlspec/ivp.hpp"
#include "nlspec/operator.hpp"
#include "nlspec/trajectory.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace nlspec {

enum class EigenMethod { shoot, inverse_iteration };

std::string_view to_string(EigenMethod method);

struct SemiEigenResult {
    double lambda = 0.0;
    int sign = 1;
    double t1 = 0.0;
    double t2 = 1.0;
    /// Normalized to sup |u| = 1, with sign * u > 0 inside.
    Trajectory eigenfunction;
    EigenMethod method = EigenMethod::shoot;
    int iterations = 0;
    /// max |Fr(u'', u'/t, u', u, t) + lambda u| over 64 interior probes.
    double residual = 0.0;
};

struct SemiEigenOptions {
    IvpConfig ivp{};
    /// |u'(t1)| of the shot; the eigenvalue does not depend on it.
    double slope_scale = 1.0;
    int max_expansions = 60;
    int max_iterations = 500;
};

struct ShotOutcome {
    std::optional<double> first_zero;
    Trajectory trajectory;
};

/// Integrates Fr = -lambda u from u(t1) = 0, u'(t1) = sign * slope_scale up to
/// t2 and reports the first interior zero, if any.
ShotOutcome shoot_lambda(const OperatorSpec& spec, double t1, double t2, int sign, double lambda,
                         const SemiEigenOptions& opts = {});

/// Continuous winding angle of (s * sign * u, sign * u') accumulated along a
/// shot, s = sqrt(1 + |lambda|). A shot whose first zero lands exactly on its
/// right end has angle pi; fewer turns mean lambda is too small.
double winding_angle(const Trajectory& traj, int sign, double lambda);

/// Trajectory of Fr = -lambda u from a fixed start (Dirichlet, Neumann or
/// origin data) up to the right end of the interval.
using LambdaShooter = std::function<Trajectory(double lambda)>;

struct LambdaSearchResult {
    double lambda = 0.0;
    Trajectory trajectory;
    int shots = 0;
};

/// Brackets and solves winding_angle(shooter(lambda)) = pi. The lower end
/// starts at lambda_floor and moves down while the shot already turns too far;
/// the upper end starts at lambda_start and doubles (at most max_expansions
/// times) until the shot has crossed zero.
LambdaSearchResult find_first_zero_lambda(const LambdaShooter& shooter, int sign,
                                          double lambda_floor, double lambda_start,
                                          int max_expansions = 60);

/// lambda-shooting route.
SemiEigenResult semi_eigenvalue(const OperatorSpec& spec, double t1, double t2, int sign,
                                const SemiEigenOptions& opts = {});

/// Solves Fr - kappa u = f with homogeneous data on the fixed geometry.
using ShiftedSolver = std::function<Trajectory(const Source& f, double kappa)>;

/// Krein-Rutman power iteration v <- L(v) / |L(v)|, where L(g) solves
/// Fr - kappa u = -g, for the positive eigenfunction. Stops when consecutive
/// mu = 1 / |L(v)| agree to 1e-10 relative; lambda = mu - kappa. If the solver
/// fails to bracket, kappa is doubled and the iteration restarts (at most three
/// times).
SemiEigenResult krein_rutman(const ShiftedSolver& solver, double kappa, double t1, double t2,
                             int max_iterations = 500);

/// Krein-Rutman route on an interval; negative eigenpairs come from the
/// flipped operator.
SemiEigenResult inverse_iteration(const OperatorSpec& spec, double t1, double t2, int sign,
                                  const SemiEigenOptions& opts = {});

/// max |Fr + lambda u| at 64 seeded interior probes.
double eigen_residual(const OperatorSpec& spec, double lambda, const Trajectory& u, double t1,
                      double t2, int probes = 64);

struct MonotonicityRow {
    double t1 = 0.0;
    double t2 = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    /// Lower bound on lambda from sup u <= B (lambda + kappa) |u|_L1.
    double blowup_bound = 0.0;
};

struct MonotonicityTable {
    std::vector<MonotonicityRow> rows;
    bool strictly_increasing = true;
    bool blowup_consistent = true;
};

/// lambda+/- on (a + k eps, b - k eps), k = 0 .. steps - 1. eps <= 0 picks
/// (b - a) / (2 (steps + 1)).
MonotonicityTable monotonicity_table(const OperatorSpec& spec, double a, double b, int steps,
                                     double eps = 0.0, const SemiEigenOptions& opts = {});

} // namespace nlspec
