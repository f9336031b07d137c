#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"

#include "nlspec/semi_eigen.hpp"

#include <cmath>

using namespace nlspec;

namespace {

constexpr double pi = oracle::pi;

} // namespace

TEST_CASE("a negative shot at twice pi squared lands on the right end") {
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0);
    const auto shot = shoot_lambda(spec, 0.0, 1.5, -1, 2.0 * pi * pi);
    REQUIRE(shot.first_zero.has_value());
    CHECK(*shot.first_zero == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(shot.trajectory.value(0.5) < 0.0);

    const auto early = shoot_lambda(spec, 0.0, 1.0, -1, 0.5 * pi * pi);
    CHECK_FALSE(early.first_zero.has_value());
}

TEST_CASE("winding angle is pi exactly at an eigenvalue") {
    const auto spec = OperatorSpec::linear();
    auto angle = [&](double lambda) {
        return winding_angle(shoot_lambda(spec, 0.0, 1.0, 1, lambda).trajectory, 1, lambda);
    };
    CHECK(angle(pi * pi) == doctest::Approx(pi).epsilon(1e-8));
    CHECK(angle(0.8 * pi * pi) < pi);
    CHECK(angle(1.2 * pi * pi) > pi);
}

TEST_CASE("Pucci plus semi-eigenvalues on the unit interval") {
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0);
    const auto plus = semi_eigenvalue(spec, 0.0, 1.0, 1);
    const auto minus = semi_eigenvalue(spec, 0.0, 1.0, -1);
    CHECK(plus.lambda == doctest::Approx(pi * pi).epsilon(1e-8));
    CHECK(minus.lambda == doctest::Approx(2.0 * pi * pi).epsilon(1e-8));
    CHECK(minus.lambda == doctest::Approx(19.739209).epsilon(1e-7));
    CHECK(plus.eigenfunction.sup_abs() == doctest::Approx(1.0));
    CHECK(plus.eigenfunction.value(0.5) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(minus.eigenfunction.value(0.5) == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(plus.residual < 1e-7 * plus.lambda);
    CHECK(minus.residual < 1e-7 * minus.lambda);
}

TEST_CASE("drift and zero-order terms shift the linear eigenvalue") {
    // u'' + c u' + d u = -lambda u on (a, b): lambda = pi^2 / L^2 + c^2 / 4 - d.
    for (double c : {-1.5, 0.0, 0.8}) {
        for (double d : {-0.7, 0.0, 2.0}) {
            const auto spec = OperatorSpec::linear(1.0, 1.0, c, d);
            const double L = 1.3;
            const double expect = pi * pi / (L * L) + c * c / 4.0 - d;
            for (int sign : {1, -1}) {
                CHECK(semi_eigenvalue(spec, -0.4, -0.4 + L, sign).lambda ==
                      doctest::Approx(expect).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("inverse iteration reproduces the closed forms") {
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0);
    const auto minus = inverse_iteration(spec, 0.0, 1.0, -1);
    CHECK(minus.lambda == doctest::Approx(2.0 * pi * pi).epsilon(1e-7));
    CHECK(minus.method == EigenMethod::inverse_iteration);
    CHECK(minus.eigenfunction.value(0.5) < 0.0);
    const auto plus = inverse_iteration(spec, 0.0, 1.0, 1);
    CHECK(plus.lambda == doctest::Approx(pi * pi).epsilon(1e-7));
}

TEST_CASE("shooting and inverse iteration agree on random operators") {
    for (const auto& c : corpus::random_cases(10, 31)) {
        CAPTURE(c.label);
        for (int sign : {1, -1}) {
            const auto s = semi_eigenvalue(c.spec, c.a, c.b, sign);
            const auto k = inverse_iteration(c.spec, c.a, c.b, sign);
            CHECK(std::abs(s.lambda - k.lambda) <= 1e-6 * std::abs(s.lambda));
            CHECK(corpus::sup_distance(s.eigenfunction, k.eigenfunction, c.a, c.b) < 1e-5);
        }
    }
}

TEST_CASE("concave operators are reached through the flip") {
    const auto spec = OperatorSpec::bellman(false, {{1.0, 1.0, 0.0, 0.0}, {2.0, 1.0, 0.3, 0.0}});
    REQUIRE(is_concave(spec));
    for (int sign : {1, -1}) {
        const auto direct = semi_eigenvalue(spec, 0.0, 1.0, sign);
        const auto dual = semi_eigenvalue(flip(spec), 0.0, 1.0, -sign);
        CHECK(direct.lambda == doctest::Approx(dual.lambda).epsilon(1e-10));
        CHECK(direct.eigenfunction.value(0.5) * sign > 0.0);
        CHECK(direct.residual < 1e-7 * direct.lambda);
    }
}

TEST_CASE("Pucci minus and plus exchange their semi-eigenvalues") {
    const auto plus = OperatorSpec::pucci_plus(0.6, 2.5);
    const auto minus = OperatorSpec::pucci_minus(0.6, 2.5);
    CHECK(semi_eigenvalue(minus, 0.0, 1.0, 1).lambda ==
          doctest::Approx(semi_eigenvalue(plus, 0.0, 1.0, -1).lambda).epsilon(1e-10));
    CHECK(semi_eigenvalue(minus, 0.0, 1.0, -1).lambda ==
          doctest::Approx(semi_eigenvalue(plus, 0.0, 1.0, 1).lambda).epsilon(1e-10));
}

TEST_CASE("the eigenvalue does not depend on the shooting slope") {
    const auto spec = corpus::catalog_cases()[3].spec;
    SemiEigenOptions opts;
    const double base = semi_eigenvalue(spec, 0.0, 1.0, 1, opts).lambda;
    for (double scale : {1e-3, 10.0, 1e4}) {
        opts.slope_scale = scale;
        CHECK(semi_eigenvalue(spec, 0.0, 1.0, 1, opts).lambda ==
              doctest::Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("semi-eigenvalues grow as the interval shrinks") {
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0);
    const auto table = monotonicity_table(spec, 0.0, 1.0, 6);
    CHECK(table.strictly_increasing);
    CHECK(table.blowup_consistent);
    for (const auto& row : table.rows) {
        const double len = row.t2 - row.t1;
        CHECK(row.lambda_minus == doctest::Approx(2.0 * pi * pi / (len * len)).epsilon(1e-8));
        CHECK(row.lambda_plus == doctest::Approx(pi * pi / (len * len)).epsilon(1e-8));
        CHECK(row.blowup_bound <= row.lambda_plus);
    }
    for (const auto& c : corpus::random_cases(5, 32)) {
        CAPTURE(c.label);
        CHECK(monotonicity_table(c.spec, c.a, c.b, 4).strictly_increasing);
    }
}

TEST_CASE("residual of an exact eigenfunction is tiny") {
    const auto spec = OperatorSpec::linear();
    const auto s = semi_eigenvalue(spec, 0.0, 1.0, 1);
    CHECK(eigen_residual(spec, pi * pi, s.eigenfunction, 0.0, 1.0) < 1e-6);
    CHECK(eigen_residual(spec, 1.1 * pi * pi, s.eigenfunction, 0.0, 1.0) > 0.5);
}
