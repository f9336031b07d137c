#pragma once

// Quantitative maximum principle (ABP) bounds used as post-hoc certificates:
//
//   sup u+ <= B |f-|,   sup u- <= B |f+|
//
// for solutions of Fr - kappa u = f with kappa >= delta and zero boundary
// data, where |.| is the L1 norm on an interval or the L^N norm with the
// radial weight r^(N-1) on a ball.

#include "nlspec/operator.hpp"
#include "nlspec/sampled.hpp"
#include "nlspec/trajectory.hpp"

#include <string>
#include <string_view>

namespace nlspec {

/// B from the logarithmic inequality chain with the choice k lambda^N = |f|^N:
///
///   ln(1 + l0^N / k) <= (2^N N / lambda^N)(|f|^N / k + (gamma R)^N / N)
///                     = 2^N N + 2^N (gamma R / lambda)^N =: E
///   sup u = R l0 <= (R / lambda) (e^E - 1)^(1/N) |f|
///
/// R is the ball radius, or the interval length when N = 1.
/// Returns +infinity when e^E overflows.
double abp_constant(double lambda_min, double gamma, double length_or_radius, int dim);

enum class NormKind { l1_interval, ln_ball };

std::string_view to_string(NormKind kind);

struct Geometry {
    NormKind kind = NormKind::l1_interval;
    double a = 0.0;
    double b = 1.0;  // interval end, or the ball radius R (a = 0)
    int dim = 1;

    static Geometry interval(double a, double b) { return {NormKind::l1_interval, a, b, 1}; }
    static Geometry ball(double radius, int dim) { return {NormKind::ln_ball, 0.0, radius, dim}; }
    double extent() const { return b - a; }
};

struct AbpReport {
    double sup_u_plus = 0.0;
    double sup_u_minus = 0.0;
    double f_minus_norm = 0.0;
    double f_plus_norm = 0.0;
    double bound_plus = 0.0;   // B |f-|
    double bound_minus = 0.0;  // B |f+|
    double B = 0.0;
    NormKind norm_kind = NormKind::l1_interval;
    bool vacuous = false;
    bool pass = true;
};

/// |g+| or |g-| over the geometry by the trapezoid rule on `nodes`, refined
/// once by midpoints; a relative discrepancy above 1% triggers a 16x denser
/// uniform resample.
double one_sided_norm(const Source& g, bool positive_part, const Geometry& geom,
                      const std::vector<double>& nodes);

/// pass <=> sup u+- <= bound (1 + 1e-9) + 1e-7 (1 + sup |u|); the floor matches the
/// residual at which a Dirichlet shot is accepted.
AbpReport abp_check(const Trajectory& traj, const Source& f, const OperatorSpec& spec,
                    const Geometry& geom);

/// (lambda + kappa) B L >= 1 must hold for the first eigenvalue on an interval
/// of length L; returns the left-hand side.
double blowup_margin(const OperatorSpec& spec, double lambda, double length);

} // namespace nlspec
