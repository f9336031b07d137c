#pragma once

// Operator catalog for radially invariant, positively 1-homogeneous,
// uniformly elliptic second-order operators, written in the radial form
//
//     Fr(m, l, p, u, r),   m = u''(r), l = u'(r)/r, p = u'(r).
//
// With N the spatial dimension and x+ = max(x, 0), x- = max(-x, 0):
//
//   pucci_plus   L(m+ + (N-1) l+) - l(m- + (N-1) l-) + c(r) p + d(r) u
//   pucci_minus  l(m+ + (N-1) l+) - L(m- + (N-1) l-) + c(r) p + d(r) u
//   linear       a(r) m + (N-1) b(r) l + c(r) p + d(r) u
//   bellman_max  max_k of linear_k
//   bellman_min  min_k of linear_k
//
// (lowercase l = lambda_min, L = lambda_max). For N = 1 the curvature
// quotient l never contributes. The coefficient table of a linear operator
// carries a (radial diffusion), b (tangential diffusion), c (drift) and
// d (zero-order coefficient); Pucci kinds only read c and d.

#include "nlspec/sampled.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nlspec {

enum class OperatorKind { pucci_plus, pucci_minus, linear, bellman_max, bellman_min };

std::string_view to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(std::string_view name);

struct LinearCoeffs {
    SampledFunction a{1.0};
    SampledFunction b{1.0};
    SampledFunction c{0.0};
    SampledFunction d{0.0};
};

struct OperatorSpec {
    OperatorKind kind = OperatorKind::pucci_plus;
    double lambda_min = 1.0;
    double lambda_max = 1.0;
    double gamma = 0.0;
    double delta = 0.0;
    int dim = 1;
    /// linear: exactly one table; bellman: one per member; pucci: zero or one
    /// (only c and d are read).
    std::vector<LinearCoeffs> coeffs;

    static OperatorSpec pucci_plus(double lambda_min, double lambda_max, int dim = 1);
    static OperatorSpec pucci_minus(double lambda_min, double lambda_max, int dim = 1);
    /// Constant-coefficient linear operator; gamma/delta/ellipticity derived
    /// from the coefficients.
    static OperatorSpec linear(double a = 1.0, double b = 1.0, double c = 0.0, double d = 0.0,
                               int dim = 1);
    static OperatorSpec bellman(bool take_max, std::vector<LinearCoeffs> members, int dim = 1);

    /// Ellipticity and Lipschitz constants are admissible and the coefficient
    /// tables match the kind. Throws ConfigError otherwise.
    void validate() const;
};

struct EvalPoint {
    double m = 0.0;
    double ell = 0.0;
    double p = 0.0;
    double u = 0.0;
    double r = 0.0;
};

/// Fr(m, l, p, u, r). Throws DomainError on non-finite input, or on r < 0
/// when dim > 1 (for dim = 1, r is any abscissa).
double evaluate(const OperatorSpec& spec, const EvalPoint& pt);

/// The unique m with evaluate(spec, {m, ell, p, u, r}) == q.
double invert_m(const OperatorSpec& spec, double ell, double p, double u, double q, double r);

/// The unique l with evaluate(spec, {l, l, p, u, 0}) == q: at the origin all
/// principal curvatures coincide. Requires dim >= 2.
double invert_origin(const OperatorSpec& spec, double p, double u, double q);

/// Generic inversion of a nondecreasing scalar map by geometric bracket
/// expansion (width 1, factor 4, at most 200 expansions) and bisection.
/// Independent of the closed forms used by invert_m.
double invert_m_bracketed(const OperatorSpec& spec, double ell, double p, double u, double q,
                          double r);

/// -F(-m, -l, -p, -u, r). Closed within the catalog.
OperatorSpec flip(const OperatorSpec& spec);

/// Which linear piece of F is active at pt: the sign pattern of (m, l) for
/// Pucci kinds, the member attaining the max / min (lowest index on ties) for
/// Bellman kinds, 0 for linear operators. Solutions have a kink in u'' where
/// this index changes.
int active_branch(const OperatorSpec& spec, const EvalPoint& pt);

/// Catalog kinds that are concave in (m, l, p, u); eigen solvers run these
/// through flip().
bool is_concave(const OperatorSpec& spec);

struct HypothesisCheck {
    std::string name;
    bool pass = true;
    double worst = 0.0;
    std::string note;
};

struct StructureReport {
    std::vector<HypothesisCheck> checks;  // F1, F2, F3, F4 in that order
    bool concave = false;

    /// F1, F2, F4 hold and either F3 holds or the operator is concave (and
    /// therefore solved through its flip).
    bool usable() const;
    const HypothesisCheck& get(std::string_view name) const;
};

inline constexpr std::uint64_t kDefaultStructureSeed = 20090617ULL;

StructureReport check_structure(const OperatorSpec& spec, int samples = 2000,
                                std::uint64_t seed = kDefaultStructureSeed);

/// Operator definition files (YAML subset, see docs/operator-format.md).
OperatorSpec parse_operator(std::string_view text);
OperatorSpec load_operator(const std::string& path);
std::string format_operator(const OperatorSpec& spec);

} // namespace nlspec
