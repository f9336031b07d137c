#pragma once

// Sign-changing eigenpairs by matching semi-eigenvalues across interior nodes.
//
// Pieces j = 0..n live on (t_j, t_{j+1}) with t_0 = a, t_{n+1} = b and carry
// the sign s_j = sign * (-1)^j. The node map is
//
//   V_i(t) = lambda^{s_{i-1}}(t_{i-1}, t_i) - lambda^{s_i}(t_i, t_{i+1}),   i = 1..n
//
// (sign = -1 gives the map whose first piece is negative, sign = +1 its
// mirrored variant). Shrinking the left piece raises its eigenvalue, so V_i
// decreases in t_i and blows up at both faces of the simplex.

#include "nlspec/operator.hpp"
#include "nlspec/semi_eigen.hpp"
#include "nlspec/trajectory.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace nlspec {

struct NodeVector {
    double a = 0.0;
    double b = 1.0;
    std::vector<double> t;

    std::size_t n() const noexcept { return t.size(); }
    /// Endpoint j of the pieces: a, t_1, ..., t_n, b.
    double edge(std::size_t j) const;
    /// Throws ConfigError unless a < t_1 < ... < t_n < b with gaps > 1e-8 (b - a).
    void validate() const;
};

struct EigenPair {
    int n = 0;
    int sign = 1;
    double lambda = 0.0;
    NodeVector nodes;
    std::vector<SemiEigenResult> pieces;
    /// alpha_i = u'_left(t_i) / u'_right(t_i) for the unit-sup pieces.
    std::vector<double> alphas;
    /// Glued eigenfunction, sup |u| = 1.
    Trajectory global;
    /// max |u'(t_i-) - u'(t_i+)| / sup |u'| over the nodes.
    double max_jump = 0.0;
    /// max_j |lambda_j - lambda| / lambda over the pieces.
    double lambda_spread = 0.0;
    /// max |Fr + lambda u| of the glued function at 64 interior probes.
    double residual = 0.0;
    int zero_count = 0;
};

/// One-signed eigenpair of a piece; t1 may be 0 for the origin piece of a ball.
using PieceSolver = std::function<SemiEigenResult(double t1, double t2, int sign)>;

/// Memoizes piece solves by (t1, t2, sign) with endpoints rounded to 1e-12.
/// Safe for concurrent use.
class PieceCache {
public:
    explicit PieceCache(PieceSolver solver);

    const SemiEigenResult& get(double t1, double t2, int sign);
    double lambda(double t1, double t2, int sign) { return get(t1, t2, sign).lambda; }
    std::size_t size() const;

private:
    using Key = std::tuple<long long, long long, int>;
    PieceSolver solver_;
    mutable std::mutex mutex_;
    std::map<Key, std::shared_ptr<const SemiEigenResult>> entries_;
};

struct NehariOptions {
    SemiEigenOptions eigen{};
    int max_newton = 50;
    int max_sweeps = 200;
    /// Converged when |V| <= tol * (1 + max piece lambda).
    double tol = 1e-10;
    /// Worker threads used across (n, sign) tasks by spectrum().
    int threads = 1;
};

/// Shooting-based piece solver for the operator, flipping concave operators.
PieceSolver interval_pieces(const OperatorSpec& spec, const SemiEigenOptions& opts = {});

std::vector<double> v_map(PieceCache& cache, const NodeVector& nodes, int sign);
std::vector<double> v_map(const OperatorSpec& spec, const NodeVector& nodes, int sign,
                          const SemiEigenOptions& opts = {});

struct NodeSolveReport {
    NodeVector nodes;
    double residual = 0.0;  // |V| at the returned nodes
    int newton_iterations = 0;
    int sweeps = 0;
    bool used_fallback = false;
};

/// Damped Newton on V with a finite-difference Jacobian, projected into the
/// simplex; falls back to cyclic one-dimensional root finding on each t_i.
/// Initial piece lengths are proportional to 1 / sqrt(lambda^{s_j}(a, b)).
NodeSolveReport solve_nodes(PieceCache& cache, int n, int sign, double a, double b,
                            const NehariOptions& opts = {});
NodeSolveReport solve_nodes(const OperatorSpec& spec, int n, int sign, double a, double b,
                            const NehariOptions& opts = {});

/// Glues the unit-sup pieces on solved nodes into one eigenfunction.
/// `residual_spec` is the operator whose equation the glued function must
/// satisfy.
EigenPair assemble(PieceCache& cache, const NodeVector& nodes, int sign,
                   const OperatorSpec& residual_spec);
EigenPair assemble(const OperatorSpec& spec, const NodeVector& nodes, int sign,
                   const SemiEigenOptions& opts = {});

struct Spectrum {
    /// Ordered by n, then sign (+1 before -1).
    std::vector<EigenPair> pairs;
    /// lambda_{n+1}^s > lambda_n^s for both signs.
    bool increasing = true;

    const EigenPair& find(int n, int sign) const;
};

/// Pairs n = 0..n_max for both signs on (a, b) using an arbitrary piece
/// solver (interval or radial). `residual_spec` is used for the residuals.
Spectrum spectrum(PieceCache& cache, const OperatorSpec& residual_spec, int n_max, double a,
                  double b, const NehariOptions& opts = {});
Spectrum spectrum(const OperatorSpec& spec, int n_max, double a, double b,
                  const NehariOptions& opts = {});

/// Interior sign changes of a trajectory, scanned on nodes and a fine grid.
int count_sign_changes(const Trajectory& traj, double tol = 1e-9);

} // namespace nlspec
