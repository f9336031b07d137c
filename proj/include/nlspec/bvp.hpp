#pragma once

// Shooting solvers for the shifted problem Fr(u'', u'/t, u', u, t) - kappa u = f(t)
// with either u(a) = u(b) = 0 or u'(c) = u(b) = 0.

#include "nlspec/ivp.hpp"
#include "nlspec/operator.hpp"
#include "nlspec/sampled.hpp"
#include "nlspec/trajectory.hpp"

#include <functional>

namespace nlspec {

enum class BoundaryKind { dirichlet_dirichlet, neumann_dirichlet };

struct BvpProblem {
    OperatorSpec spec;
    Source f;
    double a = 0.0;
    double b = 1.0;
    double kappa = 1.0;
    BoundaryKind bc = BoundaryKind::dirichlet_dirichlet;
    /// Clamp point c of the Neumann condition, a <= c < b.
    double clamp = 0.0;
    IvpConfig ivp{};
    /// Magnitude of the first trial shooting parameter.
    double seed = 1.0;
};

struct ShootingSolution {
    Trajectory trajectory;
    /// Initial slope u'(a) (Dirichlet) or initial value u(c) (mixed).
    double parameter = 0.0;
    int shots = 0;
};

struct Shot {
    /// u at the far end of the shot.
    double end_value = 0.0;
    Trajectory trajectory;
};

/// Solves shoot(d).end_value = 0 for a map that increases in d: bracket
/// expansion from d = 0 (|d| = seed * 4^k, at most 60 expansions), then
/// bracketed root finding until |end_value| <= 1e-10 (1 + sup |u|).
ShootingSolution shoot_increasing(const std::function<Shot(double)>& shoot, double seed,
                                  const char* what);

/// delta + 1: makes Fr - kappa u strictly decreasing in u.
double choose_kappa(const OperatorSpec& spec);

/// Shooting on u'(a) = d, resp. u(c) = d. Throws SolverError if no bracket is
/// found.
ShootingSolution solve_dirichlet(const BvpProblem& prob);
ShootingSolution solve_neumann_dirichlet(const BvpProblem& prob);

/// Dispatches on prob.bc.
ShootingSolution solve(const BvpProblem& prob);

} // namespace nlspec
