#pragma once

// Initial value problems for Fr(u'', u'/t, u', u, t) = q(t) + kappa u,
// integrated as the first-order system (u, p)' = (p, G(p/t, p, u, q + kappa u, t))
// with G = invert_m. For dim = 1 the curvature quotient is not formed.

#include "nlspec/operator.hpp"
#include "nlspec/sampled.hpp"
#include "nlspec/trajectory.hpp"

#include <optional>

namespace nlspec {

struct IvpConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Largest step as a fraction of |t1 - t0|.
    double max_step = 0.05;
    double event_tol = 1e-12;
    long max_steps = 2'000'000;

    void validate() const;
};

/// u'' at (t, u, p) for the shifted equation.
double second_derivative(const OperatorSpec& spec, const Source& q, double kappa, double t,
                         double u, double p);

/// Integrates from (t0, u0, p0) to t1; t1 < t0 integrates backward and still
/// returns increasing nodes. With stop_at_first_zero the integration ends on
/// the first accepted step across which u changes sign.
/// Throws IntegrationError on step-size underflow or step budget exhaustion.
Trajectory integrate(const OperatorSpec& spec, const Source& q, double kappa, double t0, double t1,
                     double u0, double p0, const IvpConfig& cfg = {},
                     bool stop_at_first_zero = false);

/// Smallest t > from where u changes sign, refined on the dense output by
/// bisection to tol and one secant polish.
std::optional<double> first_zero(const Trajectory& traj, double from, double tol = 1e-12);

/// |Fr(u'', u'/t, u', u, t) - kappa u - q(t)| with u'' taken from the
/// interpolant's second derivative.
double equation_residual(const OperatorSpec& spec, const Source& q, double kappa,
                         const Trajectory& traj, double t);

/// Source that is identically zero.
Source zero_source();
Source constant_source(double value);

} // namespace nlspec
