#pragma once

// Randomized operator corpus shared by the property tests and the acceptance
// runner.

#include "nlspec/operator.hpp"
#include "nlspec/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace corpus {

struct Case {
    nlspec::OperatorSpec spec;
    double a = 0.0;
    double b = 1.0;
    std::string label;
};

inline nlspec::OperatorSpec random_spec(std::mt19937_64& rng, int kind_index, int dim = 1) {
    using nlspec::LinearCoeffs;
    using nlspec::OperatorSpec;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto coeff = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
    switch (kind_index % 5) {
    case 0:
    case 1: {
        const double lam = coeff(0.5, 1.5);
        const double Lam = lam * coeff(1.0, 3.0);
        auto spec = kind_index % 5 == 0 ? OperatorSpec::pucci_plus(lam, Lam, dim)
                                        : OperatorSpec::pucci_minus(lam, Lam, dim);
        const double c = coeff(-1.0, 1.0);
        const double d = coeff(-1.0, 1.0);
        spec.coeffs = {LinearCoeffs{1.0, 1.0, c, d}};
        spec.gamma = std::abs(c);
        spec.delta = std::abs(d);
        return spec;
    }
    case 2:
        return OperatorSpec::linear(coeff(0.5, 2.0), coeff(0.5, 2.0), coeff(-1.0, 1.0),
                                    coeff(-1.0, 1.0), dim);
    default: {
        std::vector<LinearCoeffs> members;
        const int count = 2 + static_cast<int>(rng() % 2);
        for (int k = 0; k < count; ++k) {
            members.push_back({coeff(0.5, 2.0), coeff(0.5, 2.0), coeff(-1.0, 1.0), coeff(-1.0, 1.0)});
        }
        return OperatorSpec::bellman(kind_index % 5 == 3, members, dim);
    }
    }
}

inline std::vector<Case> random_cases(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<Case> out;
    for (int k = 0; k < count; ++k) {
        Case c;
        c.spec = random_spec(rng, k);
        c.a = -1.0 + 2.0 * u01(rng);
        c.b = c.a + 0.5 + 1.5 * u01(rng);
        c.label = std::string(nlspec::to_string(c.spec.kind)) + " #" + std::to_string(k);
        out.push_back(c);
    }
    return out;
}

/// The five catalog kinds with fixed moderate coefficients.
inline std::vector<Case> catalog_cases() {
    using nlspec::OperatorSpec;
    std::vector<Case> out;
    out.push_back({OperatorSpec::pucci_plus(1.0, 2.0), 0.0, 1.0, "pucci_plus"});
    out.push_back({OperatorSpec::pucci_minus(1.0, 2.0), 0.0, 1.0, "pucci_minus"});
    out.push_back({OperatorSpec::linear(1.0, 1.0, 0.5, -0.5), 0.0, 1.0, "linear"});
    out.push_back({OperatorSpec::bellman(true, {{1.0, 1.0, 0.5, 0.0}, {2.0, 1.0, -0.5, 0.3}}),
                   0.0, 1.0, "bellman_max"});
    out.push_back({OperatorSpec::bellman(false, {{1.0, 1.0, 0.5, 0.0}, {2.0, 1.0, -0.5, 0.3}}),
                   0.0, 1.0, "bellman_min"});
    return out;
}

/// sup over a uniform grid of |u - v|.
inline double sup_distance(const nlspec::Trajectory& u, const nlspec::Trajectory& v, double a,
                           double b, int points = 400) {
    double worst = 0.0;
    for (int k = 0; k <= points; ++k) {
        const double t = a + (b - a) * k / points;
        worst = std::max(worst, std::abs(u.value(t) - v.value(t)));
    }
    return worst;
}

} // namespace corpus
