#include <doctest.h>

#include "nlspec/error.hpp"
#include "nlspec/ivp.hpp"

#include <cmath>

using namespace nlspec;

namespace {

constexpr double pi = 3.14159265358979323846;

Trajectory sampled(double (*u)(double), double (*p)(double), double (*m)(double), double lo,
                   double hi, int n) {
    std::vector<double> t, uu, pp, mm;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        t.push_back(x);
        uu.push_back(u(x));
        pp.push_back(p(x));
        mm.push_back(m(x));
    }
    return Trajectory(t, uu, pp, mm);
}

} // namespace

TEST_CASE("straight line for a vanishing second derivative") {
    const auto traj =
        integrate(OperatorSpec::linear(), zero_source(), 0.0, 0.0, 1.0, 0.0, 1.0);
    for (double t : {0.1, 0.37, 0.5, 0.9, 1.0}) {
        CHECK(traj.value(t) == doctest::Approx(t).epsilon(1e-10));
        CHECK(traj.slope(t) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("u'' = u - 1 from rest gives 1 - cosh t") {
    const auto traj =
        integrate(OperatorSpec::linear(), constant_source(-1.0), 1.0, 0.0, 1.0, 0.0, 0.0);
    CHECK(traj.end() == doctest::Approx(1.0));
    CHECK(traj.value(1.0) == doctest::Approx(1.0 - std::cosh(1.0)).epsilon(1e-10));
    CHECK(traj.value(1.0) == doctest::Approx(-0.543081).epsilon(1e-6));
    for (double t : {0.2, 0.6}) {
        CHECK(traj.value(t) == doctest::Approx(1.0 - std::cosh(t)).epsilon(1e-10));
        CHECK(equation_residual(OperatorSpec::linear(), constant_source(-1.0), 1.0, traj, t) <
              1e-7);
    }
}

TEST_CASE("Pucci plus along a concave sine") {
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0);
    const auto traj = integrate(spec, zero_source(), -pi * pi, 0.0, 1.0, 0.0, 1.0);
    for (int k = 1; k < 50; ++k) {
        const double t = k / 50.0;
        CHECK(std::abs(traj.value(t) - std::sin(pi * t) / pi) < 1e-8);
        // u'' <= 0 along the path, so only the lower constant is active.
        CHECK(traj.second(t) <= 1e-8);
    }
}

TEST_CASE("backward integration returns increasing nodes") {
    const auto spec = OperatorSpec::linear();
    const auto back = integrate(spec, constant_source(-1.0), 1.0, 1.0, 0.0,
                                1.0 - std::cosh(1.0), -std::sinh(1.0));
    CHECK(back.start() == doctest::Approx(0.0));
    CHECK(back.end() == doctest::Approx(1.0));
    CHECK(std::abs(back.value(0.0)) < 1e-9);
    CHECK(std::abs(back.slope(0.0)) < 1e-9);
}

TEST_CASE("solutions scale with the data for homogeneous equations") {
    const auto spec = OperatorSpec::pucci_minus(0.5, 3.0);
    const auto one = integrate(spec, zero_source(), -20.0, 0.0, 1.0, 0.0, 1.0);
    const auto three = integrate(spec, zero_source(), -20.0, 0.0, 1.0, 0.0, 3.0);
    for (double t : {0.25, 0.5, 0.8}) {
        CHECK(three.value(t) == doctest::Approx(3.0 * one.value(t)).epsilon(1e-8));
    }
    // A negative start needs the flipped operator.
    const auto neg = integrate(flip(spec), zero_source(), -20.0, 0.0, 1.0, 0.0, -1.0);
    for (double t : {0.25, 0.5, 0.8}) {
        CHECK(neg.value(t) == doctest::Approx(-one.value(t)).epsilon(1e-8));
    }
}

TEST_CASE("stopping at the first zero") {
    const auto traj = integrate(OperatorSpec::linear(), zero_source(), -pi * pi, 0.0, 3.0, 0.0,
                                1.0, {}, true);
    CHECK(traj.end() < 1.5);
    const auto z = first_zero(traj, 0.1);
    REQUIRE(z.has_value());
    CHECK(*z == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("first_zero on sampled trajectories") {
    auto s1 = [](double t) { return std::sin(pi * t); };
    auto p1 = [](double t) { return pi * std::cos(pi * t); };
    auto m1 = [](double t) { return -pi * pi * std::sin(pi * t); };
    const auto sine = sampled(+s1, +p1, +m1, 0.0, 1.5, 300);
    auto z = first_zero(sine, 0.1);
    REQUIRE(z.has_value());
    CHECK(std::abs(*z - 1.0) < 1e-12);

    auto s3 = [](double t) { return std::sin(3 * pi * t); };
    auto p3 = [](double t) { return 3 * pi * std::cos(3 * pi * t); };
    auto m3 = [](double t) { return -9 * pi * pi * std::sin(3 * pi * t); };
    z = first_zero(sampled(+s3, +p3, +m3, 0.0, 1.0, 600), 0.01);
    REQUIRE(z.has_value());
    CHECK(std::abs(*z - 1.0 / 3.0) < 1e-12);

    auto line = [](double t) { return t; };
    auto one = [](double) { return 1.0; };
    auto zero = [](double) { return 0.0; };
    CHECK_FALSE(first_zero(sampled(+line, +one, +zero, 0.0, 1.0, 10), 0.0).has_value());
}

TEST_CASE("a degenerate operator is rejected before integrating") {
    OperatorSpec spec = OperatorSpec::pucci_plus(1.0, 2.0);
    spec.lambda_min = 0.0;
    CHECK_THROWS_AS(integrate(spec, zero_source(), 0.0, 0.0, 1.0, 0.0, 1.0), ConfigError);
    IvpConfig bad;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(
        integrate(OperatorSpec::linear(), zero_source(), 0.0, 0.0, 1.0, 0.0, 1.0, bad),
        ConfigError);
}
