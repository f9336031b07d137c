#include "nlspec/operator.hpp"

#include "nlspec/error.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace nlspec {

namespace {

double pos(double x) { return x > 0.0 ? x : 0.0; }
double neg(double x) { return x < 0.0 ? -x : 0.0; }

double tangential(const OperatorSpec& spec) { return static_cast<double>(spec.dim - 1); }

void require_finite(const OperatorSpec& spec, const EvalPoint& pt) {
    if (!std::isfinite(pt.m) || !std::isfinite(pt.ell) || !std::isfinite(pt.p) ||
        !std::isfinite(pt.u) || !std::isfinite(pt.r)) {
        throw DomainError("operator evaluated at a non-finite point");
    }
    if (spec.dim > 1 && pt.r < 0.0) {
        throw DomainError("operator evaluated at negative radius");
    }
}

const LinearCoeffs& lower_order_table(const OperatorSpec& spec) {
    static const LinearCoeffs zero{1.0, 1.0, 0.0, 0.0};
    return spec.coeffs.empty() ? zero : spec.coeffs.front();
}

// Terms of a linear member that do not involve m.
double linear_rest(const LinearCoeffs& c, double n1, const EvalPoint& pt) {
    double rest = c.c(pt.r) * pt.p + c.d(pt.r) * pt.u;
    if (n1 > 0.0) {
        rest += n1 * c.b(pt.r) * pt.ell;
    }
    return rest;
}

double linear_eval(const LinearCoeffs& c, double n1, const EvalPoint& pt) {
    return c.a(pt.r) * pt.m + linear_rest(c, n1, pt);
}

double pucci_rest(const OperatorSpec& spec, const EvalPoint& pt, bool plus) {
    const LinearCoeffs& lo = lower_order_table(spec);
    const double up = plus ? spec.lambda_max : spec.lambda_min;
    const double dn = plus ? spec.lambda_min : spec.lambda_max;
    double rest = lo.c(pt.r) * pt.p + lo.d(pt.r) * pt.u;
    const double n1 = tangential(spec);
    if (n1 > 0.0) {
        rest += n1 * (up * pos(pt.ell) - dn * neg(pt.ell));
    }
    return rest;
}

// Pucci sandwich operators on (dm, dl), radial form.
double pucci_upper(const OperatorSpec& spec, double dm, double dl) {
    const double n1 = tangential(spec);
    return spec.lambda_max * (pos(dm) + n1 * pos(dl)) - spec.lambda_min * (neg(dm) + n1 * neg(dl));
}

double pucci_lower(const OperatorSpec& spec, double dm, double dl) {
    const double n1 = tangential(spec);
    return spec.lambda_min * (pos(dm) + n1 * pos(dl)) - spec.lambda_max * (neg(dm) + n1 * neg(dl));
}

EvalPoint scaled(const EvalPoint& x, double s) {
    return {s * x.m, s * x.ell, s * x.p, s * x.u, x.r};
}

EvalPoint difference(const EvalPoint& x, const EvalPoint& y) {
    return {x.m - y.m, x.ell - y.ell, x.p - y.p, x.u - y.u, x.r};
}

std::pair<double, double> coefficient_range(const OperatorSpec& spec) {
    double lo = 0.0;
    double hi = 1.0;
    bool any = false;
    for (const auto& c : spec.coeffs) {
        for (const SampledFunction* f : {&c.a, &c.b, &c.c, &c.d}) {
            if (f->is_constant()) {
                continue;
            }
            lo = any ? std::min(lo, f->lo()) : f->lo();
            hi = any ? std::max(hi, f->hi()) : f->hi();
            any = true;
        }
    }
    return {std::max(lo, 0.0), hi};
}

} // namespace

std::string_view to_string(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::pucci_plus: return "pucci_plus";
    case OperatorKind::pucci_minus: return "pucci_minus";
    case OperatorKind::linear: return "linear";
    case OperatorKind::bellman_max: return "bellman_max";
    case OperatorKind::bellman_min: return "bellman_min";
    }
    return "unknown";
}

OperatorKind operator_kind_from_string(std::string_view name) {
    if (name == "pucci_plus" || name == "pucci+" || name == "pucci-plus") {
        return OperatorKind::pucci_plus;
    }
    if (name == "pucci_minus" || name == "pucci-" || name == "pucci-minus") {
        return OperatorKind::pucci_minus;
    }
    if (name == "linear") {
        return OperatorKind::linear;
    }
    if (name == "bellman_max" || name == "bellman-max") {
        return OperatorKind::bellman_max;
    }
    if (name == "bellman_min" || name == "bellman-min") {
        return OperatorKind::bellman_min;
    }
    throw ConfigError("kind: unknown operator kind '" + std::string(name) + "'");
}

OperatorSpec OperatorSpec::pucci_plus(double lambda_min, double lambda_max, int dim) {
    OperatorSpec s;
    s.kind = OperatorKind::pucci_plus;
    s.lambda_min = lambda_min;
    s.lambda_max = lambda_max;
    s.dim = dim;
    return s;
}

OperatorSpec OperatorSpec::pucci_minus(double lambda_min, double lambda_max, int dim) {
    OperatorSpec s = pucci_plus(lambda_min, lambda_max, dim);
    s.kind = OperatorKind::pucci_minus;
    return s;
}

OperatorSpec OperatorSpec::linear(double a, double b, double c, double d, int dim) {
    OperatorSpec s;
    s.kind = OperatorKind::linear;
    s.dim = dim;
    s.coeffs.push_back(LinearCoeffs{a, b, c, d});
    s.lambda_min = dim > 1 ? std::min(a, b) : a;
    s.lambda_max = dim > 1 ? std::max(a, b) : a;
    s.gamma = std::abs(c);
    s.delta = std::abs(d);
    return s;
}

OperatorSpec OperatorSpec::bellman(bool take_max, std::vector<LinearCoeffs> members, int dim) {
    OperatorSpec s;
    s.kind = take_max ? OperatorKind::bellman_max : OperatorKind::bellman_min;
    s.dim = dim;
    s.coeffs = std::move(members);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double g = 0.0;
    double dl = 0.0;
    for (const auto& c : s.coeffs) {
        lo = std::min(lo, c.a.min_value());
        hi = std::max(hi, c.a.max_value());
        if (dim > 1) {
            lo = std::min(lo, c.b.min_value());
            hi = std::max(hi, c.b.max_value());
        }
        g = std::max(g, c.c.max_abs());
        dl = std::max(dl, c.d.max_abs());
    }
    s.lambda_min = lo;
    s.lambda_max = hi;
    s.gamma = g;
    s.delta = dl;
    return s;
}

void OperatorSpec::validate() const {
    if (!(lambda_min > 0.0)) {
        throw ConfigError("lambda_min: must be positive (uniform ellipticity)");
    }
    if (!(lambda_max >= lambda_min)) {
        throw ConfigError("lambda_max: must be >= lambda_min");
    }
    if (!(gamma >= 0.0)) {
        throw ConfigError("gamma: must be nonnegative");
    }
    if (!(delta >= 0.0)) {
        throw ConfigError("delta: must be nonnegative");
    }
    if (dim < 1) {
        throw ConfigError("dim: must be >= 1");
    }
    switch (kind) {
    case OperatorKind::pucci_plus:
    case OperatorKind::pucci_minus:
        if (coeffs.size() > 1) {
            throw ConfigError("coeffs: Pucci operators take at most one lower-order table");
        }
        break;
    case OperatorKind::linear:
        if (coeffs.size() != 1) {
            throw ConfigError("coeffs: linear operators take exactly one table");
        }
        break;
    case OperatorKind::bellman_max:
    case OperatorKind::bellman_min:
        if (coeffs.empty()) {
            throw ConfigError("coeffs: Bellman operators need at least one member");
        }
        break;
    }
    const double slack = 1e-12 * (1.0 + lambda_max);
    const bool diffusive = kind != OperatorKind::pucci_plus && kind != OperatorKind::pucci_minus;
    for (const auto& c : coeffs) {
        if (diffusive) {
            if (c.a.min_value() < lambda_min - slack || c.a.max_value() > lambda_max + slack) {
                throw ConfigError("coeffs.a: outside [lambda_min, lambda_max]");
            }
            if (dim > 1 &&
                (c.b.min_value() < lambda_min - slack || c.b.max_value() > lambda_max + slack)) {
                throw ConfigError("coeffs.b: outside [lambda_min, lambda_max]");
            }
        }
        if (c.c.max_abs() > gamma * (1.0 + 1e-12) + 1e-14) {
            throw ConfigError("coeffs.c: drift exceeds gamma");
        }
        if (c.d.max_abs() > delta * (1.0 + 1e-12) + 1e-14) {
            throw ConfigError("coeffs.d: zero-order coefficient exceeds delta");
        }
    }
}

double evaluate(const OperatorSpec& spec, const EvalPoint& pt) {
    require_finite(spec, pt);
    const double n1 = tangential(spec);
    switch (spec.kind) {
    case OperatorKind::pucci_plus:
        return spec.lambda_max * pos(pt.m) - spec.lambda_min * neg(pt.m) + pucci_rest(spec, pt, true);
    case OperatorKind::pucci_minus:
        return spec.lambda_min * pos(pt.m) - spec.lambda_max * neg(pt.m) + pucci_rest(spec, pt, false);
    case OperatorKind::linear:
        return linear_eval(spec.coeffs.front(), n1, pt);
    case OperatorKind::bellman_max: {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& c : spec.coeffs) {
            best = std::max(best, linear_eval(c, n1, pt));
        }
        return best;
    }
    case OperatorKind::bellman_min: {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : spec.coeffs) {
            best = std::min(best, linear_eval(c, n1, pt));
        }
        return best;
    }
    }
    throw DomainError("unknown operator kind");
}

double invert_m(const OperatorSpec& spec, double ell, double p, double u, double q, double r) {
    const EvalPoint pt{0.0, ell, p, u, r};
    require_finite(spec, pt);
    if (!std::isfinite(q)) {
        throw DomainError("invert_m: non-finite target value");
    }
    const double n1 = tangential(spec);
    switch (spec.kind) {
    case OperatorKind::pucci_plus: {
        const double s = q - pucci_rest(spec, pt, true);
        return s > 0.0 ? s / spec.lambda_max : s / spec.lambda_min;
    }
    case OperatorKind::pucci_minus: {
        const double s = q - pucci_rest(spec, pt, false);
        return s > 0.0 ? s / spec.lambda_min : s / spec.lambda_max;
    }
    case OperatorKind::linear: {
        const auto& c = spec.coeffs.front();
        return (q - linear_rest(c, n1, pt)) / c.a(r);
    }
    // Each member is increasing and affine in m, so the level set of the
    // upper (lower) envelope is the smallest (largest) member root.
    case OperatorKind::bellman_max: {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& c : spec.coeffs) {
            m = std::min(m, (q - linear_rest(c, n1, pt)) / c.a(r));
        }
        return m;
    }
    case OperatorKind::bellman_min: {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& c : spec.coeffs) {
            m = std::max(m, (q - linear_rest(c, n1, pt)) / c.a(r));
        }
        return m;
    }
    }
    throw DomainError("unknown operator kind");
}

double invert_origin(const OperatorSpec& spec, double p, double u, double q) {
    if (spec.dim < 2) {
        throw DomainError("invert_origin requires dim >= 2");
    }
    if (!std::isfinite(p) || !std::isfinite(u) || !std::isfinite(q)) {
        throw DomainError("invert_origin: non-finite argument");
    }
    const double n = static_cast<double>(spec.dim);
    const double n1 = n - 1.0;
    switch (spec.kind) {
    case OperatorKind::pucci_plus:
    case OperatorKind::pucci_minus: {
        const LinearCoeffs& lo = lower_order_table(spec);
        const double s = q - lo.c(0.0) * p - lo.d(0.0) * u;
        const bool plus = spec.kind == OperatorKind::pucci_plus;
        const double up = plus ? spec.lambda_max : spec.lambda_min;
        const double dn = plus ? spec.lambda_min : spec.lambda_max;
        return s > 0.0 ? s / (n * up) : s / (n * dn);
    }
    case OperatorKind::linear: {
        const auto& c = spec.coeffs.front();
        return (q - c.c(0.0) * p - c.d(0.0) * u) / (c.a(0.0) + n1 * c.b(0.0));
    }
    case OperatorKind::bellman_max:
    case OperatorKind::bellman_min: {
        const bool take_max = spec.kind == OperatorKind::bellman_max;
        double ell = take_max ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
        for (const auto& c : spec.coeffs) {
            const double root =
                (q - c.c(0.0) * p - c.d(0.0) * u) / (c.a(0.0) + n1 * c.b(0.0));
            ell = take_max ? std::min(ell, root) : std::max(ell, root);
        }
        return ell;
    }
    }
    throw DomainError("unknown operator kind");
}

double invert_m_bracketed(const OperatorSpec& spec, double ell, double p, double u, double q,
                          double r) {
    auto g = [&](double m) { return evaluate(spec, {m, ell, p, u, r}) - q; };
    double lo = -1.0;
    double hi = 1.0;
    int expansions = 0;
    while (g(lo) > 0.0) {
        lo *= 4.0;
        if (++expansions > 200) {
            throw SolverError("invert_m: no lower bracket; operator is not onto (F2 violated?)");
        }
    }
    expansions = 0;
    while (g(hi) < 0.0) {
        hi *= 4.0;
        if (++expansions > 200) {
            throw SolverError("invert_m: no upper bracket; operator is not onto (F2 violated?)");
        }
    }
    for (int it = 0; it < 400 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() *
                                                 std::max(std::abs(lo), std::abs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

OperatorSpec flip(const OperatorSpec& spec) {
    OperatorSpec out = spec;
    switch (spec.kind) {
    case OperatorKind::pucci_plus: out.kind = OperatorKind::pucci_minus; break;
    case OperatorKind::pucci_minus: out.kind = OperatorKind::pucci_plus; break;
    case OperatorKind::linear: break;
    case OperatorKind::bellman_max: out.kind = OperatorKind::bellman_min; break;
    case OperatorKind::bellman_min: out.kind = OperatorKind::bellman_max; break;
    }
    return out;
}

int active_branch(const OperatorSpec& spec, const EvalPoint& pt) {
    const double n1 = tangential(spec);
    switch (spec.kind) {
    case OperatorKind::pucci_plus:
    case OperatorKind::pucci_minus:
        return (pt.m > 0.0 ? 1 : 0) + (n1 > 0.0 && pt.ell > 0.0 ? 2 : 0);
    case OperatorKind::linear:
        return 0;
    case OperatorKind::bellman_max:
    case OperatorKind::bellman_min: {
        const bool take_max = spec.kind == OperatorKind::bellman_max;
        int best = 0;
        double best_val = linear_eval(spec.coeffs.front(), n1, pt);
        for (std::size_t k = 1; k < spec.coeffs.size(); ++k) {
            const double v = linear_eval(spec.coeffs[k], n1, pt);
            if (take_max ? v > best_val : v < best_val) {
                best = static_cast<int>(k);
                best_val = v;
            }
        }
        return best;
    }
    }
    return 0;
}

bool is_concave(const OperatorSpec& spec) {
    return spec.kind == OperatorKind::pucci_minus ||
           (spec.kind == OperatorKind::bellman_min && spec.coeffs.size() > 1);
}

bool StructureReport::usable() const {
    return get("F1").pass && get("F2").pass && get("F4").pass && (get("F3").pass || concave);
}

const HypothesisCheck& StructureReport::get(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw ConfigError("structure report has no entry " + std::string(name));
}

namespace {

struct Sampler {
    std::mt19937_64 rng;
    double r_lo;
    double r_hi;

    EvalPoint point(double r) {
        std::uniform_real_distribution<double> v(-10.0, 10.0);
        return {v(rng), v(rng), v(rng), v(rng), r};
    }
    double radius() { return std::uniform_real_distribution<double>(r_lo, r_hi)(rng); }
};

double f3_violation(const OperatorSpec& spec, Sampler& s, int samples) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double r = s.radius();
        const EvalPoint x = s.point(r);
        const EvalPoint y = s.point(r);
        const double diff = evaluate(spec, x) - evaluate(spec, y);
        const double lower = -evaluate(spec, difference(y, x));
        const double upper = evaluate(spec, difference(x, y));
        const double scale = 1.0 + std::abs(diff);
        worst = std::max({worst, (lower - diff) / scale, (diff - upper) / scale});
    }
    return worst;
}

} // namespace

StructureReport check_structure(const OperatorSpec& spec, int samples, std::uint64_t seed) {
    if (samples < 1) {
        throw ConfigError("samples: must be >= 1");
    }
    constexpr double tol = 1e-10;
    const auto [r_lo, r_hi] = coefficient_range(spec);
    Sampler s{std::mt19937_64(seed), r_lo, r_hi};
    StructureReport report;

    HypothesisCheck f1{"F1", true, 0.0, "F(s x) = s F(x), s in [0, 10]"};
    for (int k = 0; k < samples; ++k) {
        const EvalPoint x = s.point(s.radius());
        const double sc = std::uniform_real_distribution<double>(0.0, 10.0)(s.rng);
        const double lhs = evaluate(spec, scaled(x, sc));
        const double rhs = sc * evaluate(spec, x);
        f1.worst = std::max(f1.worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    f1.pass = f1.worst <= tol;
    report.checks.push_back(f1);

    HypothesisCheck f2{"F2", true, 0.0, "Pucci sandwich with declared constants"};
    if (!(spec.lambda_min > 0.0) || !(spec.lambda_max >= spec.lambda_min) || !(spec.gamma >= 0.0) ||
        !(spec.delta >= 0.0)) {
        f2.pass = false;
        f2.worst = std::numeric_limits<double>::infinity();
        f2.note = "degenerate constants: need 0 < lambda_min <= lambda_max, gamma, delta >= 0";
    }
    for (int k = 0; k < samples; ++k) {
        const double r = s.radius();
        const EvalPoint x = s.point(r);
        const EvalPoint y = s.point(r);
        const double diff = evaluate(spec, x) - evaluate(spec, y);
        const EvalPoint d = difference(x, y);
        const double lipschitz = spec.gamma * std::abs(d.p) + spec.delta * std::abs(d.u);
        const double lower = pucci_lower(spec, d.m, d.ell) - lipschitz;
        const double upper = pucci_upper(spec, d.m, d.ell) + lipschitz;
        const double scale = 1.0 + std::abs(diff);
        const double v = std::max((lower - diff) / scale, (diff - upper) / scale);
        if (v > f2.worst) {
            f2.worst = v;
        }
    }
    if (f2.worst > tol) {
        f2.pass = false;
    }
    report.checks.push_back(f2);

    HypothesisCheck f3{"F3", true, 0.0, "-F(y - x) <= F(x) - F(y) <= F(x - y)"};
    f3.worst = std::max(0.0, f3_violation(spec, s, samples));
    f3.pass = f3.worst <= tol;
    if (!f3.pass) {
        Sampler again{std::mt19937_64(seed ^ 0x9e3779b97f4a7c15ULL), r_lo, r_hi};
        report.concave = f3_violation(flip(spec), again, samples) <= tol;
        f3.note = report.concave ? "concave: eigen solvers use the flipped operator"
                                 : "neither convex nor concave";
    }
    report.checks.push_back(f3);

    report.checks.push_back(
        HypothesisCheck{"F4", true, 0.0, "radial form: x enters through r only"});
    return report;
}

// ---------------------------------------------------------------------------
// Operator files

namespace {

SampledFunction read_coefficient(const YAML::Node& node, const std::string& field, double lo,
                                 double hi) {
    if (node.IsScalar()) {
        return SampledFunction(node.as<double>());
    }
    if (node.IsSequence()) {
        auto values = node.as<std::vector<double>>();
        if (values.size() == 1) {
            return SampledFunction(values.front());
        }
        return SampledFunction(lo, hi, std::move(values));
    }
    throw ConfigError(field + ": expected a number or an inline array");
}

template <typename T>
T required(const YAML::Node& root, const char* key) {
    if (!root[key]) {
        throw ConfigError(std::string(key) + ": missing");
    }
    try {
        return root[key].as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(std::string(key) + ": wrong type");
    }
}

void emit_coefficient(std::ostream& os, const char* name, const SampledFunction& f) {
    os << name << ": [";
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        os << (i ? ", " : "") << f.values()[i];
    }
    os << "]";
}

} // namespace

OperatorSpec parse_operator(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("operator file: ") + e.what());
    }
    if (!root.IsMap()) {
        throw ConfigError("operator file: expected key-value pairs");
    }
    OperatorSpec spec;
    spec.kind = operator_kind_from_string(required<std::string>(root, "kind"));
    spec.dim = root["dim"] ? required<int>(root, "dim") : 1;

    double lo = 0.0;
    double hi = 1.0;
    if (root["domain"]) {
        const auto dom = required<std::vector<double>>(root, "domain");
        if (dom.size() != 2 || !(dom[1] > dom[0])) {
            throw ConfigError("domain: expected [lo, hi] with lo < hi");
        }
        lo = dom[0];
        hi = dom[1];
    }
    if (root["coeffs"]) {
        const YAML::Node list = root["coeffs"];
        if (!list.IsSequence()) {
            throw ConfigError("coeffs: expected a list of coefficient tables");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            const YAML::Node t = list[i];
            const std::string prefix = "coeffs[" + std::to_string(i) + "].";
            LinearCoeffs c;
            if (t["a"]) c.a = read_coefficient(t["a"], prefix + "a", lo, hi);
            if (t["b"]) c.b = read_coefficient(t["b"], prefix + "b", lo, hi);
            if (t["c"]) c.c = read_coefficient(t["c"], prefix + "c", lo, hi);
            if (t["d"]) c.d = read_coefficient(t["d"], prefix + "d", lo, hi);
            spec.coeffs.push_back(std::move(c));
        }
    }

    // Constants default to the tightest values implied by the coefficients.
    OperatorSpec derived = spec;
    switch (spec.kind) {
    case OperatorKind::linear:
        if (spec.coeffs.size() != 1) {
            throw ConfigError("coeffs: linear operators take exactly one table");
        }
        [[fallthrough]];
    case OperatorKind::bellman_max:
    case OperatorKind::bellman_min:
        if (spec.coeffs.empty()) {
            throw ConfigError("coeffs: missing");
        }
        derived = OperatorSpec::bellman(spec.kind != OperatorKind::bellman_min, spec.coeffs,
                                        spec.dim);
        break;
    case OperatorKind::pucci_plus:
    case OperatorKind::pucci_minus:
        derived.lambda_min = derived.lambda_max = 1.0;
        if (!spec.coeffs.empty()) {
            derived.gamma = spec.coeffs.front().c.max_abs();
            derived.delta = spec.coeffs.front().d.max_abs();
        }
        break;
    }
    spec.lambda_min = root["lambda_min"] ? required<double>(root, "lambda_min") : derived.lambda_min;
    spec.lambda_max = root["lambda_max"] ? required<double>(root, "lambda_max") : derived.lambda_max;
    spec.gamma = root["gamma"] ? required<double>(root, "gamma") : derived.gamma;
    spec.delta = root["delta"] ? required<double>(root, "delta") : derived.delta;
    return spec;
}

OperatorSpec load_operator(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("op-file: cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_operator(buf.str());
}

std::string format_operator(const OperatorSpec& spec) {
    std::ostringstream os;
    os.precision(17);
    os << "kind: " << to_string(spec.kind) << "\n"
       << "lambda_min: " << spec.lambda_min << "\n"
       << "lambda_max: " << spec.lambda_max << "\n"
       << "gamma: " << spec.gamma << "\n"
       << "delta: " << spec.delta << "\n"
       << "dim: " << spec.dim << "\n";
    double lo = 0.0;
    double hi = 1.0;
    bool have_range = false;
    for (const auto& c : spec.coeffs) {
        for (const SampledFunction* f : {&c.a, &c.b, &c.c, &c.d}) {
            if (!f->is_constant()) {
                if (have_range && (f->lo() != lo || f->hi() != hi)) {
                    throw ConfigError("coeffs: tables with different sample ranges cannot be written");
                }
                lo = f->lo();
                hi = f->hi();
                have_range = true;
            }
        }
    }
    if (have_range) {
        os << "domain: [" << lo << ", " << hi << "]\n";
    }
    if (!spec.coeffs.empty()) {
        os << "coeffs:\n";
        for (const auto& c : spec.coeffs) {
            os << "  - {";
            emit_coefficient(os, "a", c.a);
            os << ", ";
            emit_coefficient(os, "b", c.b);
            os << ", ";
            emit_coefficient(os, "c", c.c);
            os << ", ";
            emit_coefficient(os, "d", c.d);
            os << "}\n";
        }
    }
    return os.str();
}

} // namespace nlspec
