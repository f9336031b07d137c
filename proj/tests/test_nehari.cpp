#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"

#include "nlspec/error.hpp"
#include "nlspec/nehari.hpp"

#include <cmath>

using namespace nlspec;

namespace {

constexpr double pi = oracle::pi;
const double sqrt2 = std::sqrt(2.0);

double closed_form(int n, int sign) {
    int p, m;
    oracle::piece_counts(n, sign, p, m);
    return oracle::pucci_piecewise_sine(1.0, 2.0, p, m, 1.0);
}

} // namespace

TEST_CASE("node vectors must be strictly inside the interval") {
    NodeVector ok{0.0, 1.0, {0.3, 0.6}};
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.edge(0) == 0.0);
    CHECK(ok.edge(2) == 0.6);
    CHECK(ok.edge(3) == 1.0);
    CHECK_THROWS_AS((NodeVector{0.0, 1.0, {0.6, 0.3}}.validate()), ConfigError);
    CHECK_THROWS_AS((NodeVector{0.0, 1.0, {1.0}}.validate()), ConfigError);
    CHECK_THROWS_AS((NodeVector{1.0, 0.0, {}}.validate()), ConfigError);
}

TEST_CASE("node map at the midpoint for Pucci plus") {
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0);
    const auto v = v_map(spec, NodeVector{0.0, 1.0, {0.5}}, -1);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == doctest::Approx(4.0 * pi * pi).epsilon(1e-9));
    CHECK(v[0] == doctest::Approx(39.478418).epsilon(1e-7));
}

TEST_CASE("node map decreases in each node and blows up at the faces") {
    const auto spec = OperatorSpec::bellman(true, {{1.0, 1.0, 0.3, 0.0}, {1.8, 1.0, -0.2, 0.1}});
    PieceCache cache(interval_pieces(spec));
    double prev = INFINITY;
    for (double t : {0.2, 0.35, 0.5, 0.65, 0.8}) {
        const double v = v_map(cache, NodeVector{0.0, 1.0, {t}}, 1)[0];
        CHECK(v < prev);
        prev = v;
    }
    // Left gap closing: the left piece eigenvalue dominates and grows like gap^-2.
    const double v3 = v_map(cache, NodeVector{0.0, 1.0, {1e-3}}, 1)[0];
    const double v4 = v_map(cache, NodeVector{0.0, 1.0, {1e-4}}, 1)[0];
    CHECK(v3 > 1e5);
    CHECK(v4 > 50.0 * v3);
    const double w3 = v_map(cache, NodeVector{0.0, 1.0, {1.0 - 1e-3}}, 1)[0];
    const double w4 = v_map(cache, NodeVector{0.0, 1.0, {1.0 - 1e-4}}, 1)[0];
    CHECK(w3 < -1e5);
    CHECK(w4 < 50.0 * w3);
    // Two nodes: closing the middle gap sends V_1 up and V_2 down.
    const auto v = v_map(cache, NodeVector{0.0, 1.0, {0.5, 0.5 + 1e-3}}, 1);
    CHECK(v[0] < -1e5);
    CHECK(v[1] > 1e5);
}

TEST_CASE("single node of the Pucci plus eigenfunctions") {
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0);
    const auto minus = solve_nodes(spec, 1, -1, 0.0, 1.0);
    REQUIRE(minus.nodes.n() == 1);
    CHECK(std::abs(minus.nodes.t[0] - sqrt2 / (1.0 + sqrt2)) < 1e-7);
    const auto plus = solve_nodes(spec, 1, 1, 0.0, 1.0);
    CHECK(std::abs(plus.nodes.t[0] - 1.0 / (1.0 + sqrt2)) < 1e-7);
    CHECK(plus.residual < 1e-8);
}

TEST_CASE("assembled pairs match the piecewise sine closed form") {
    const auto spec = OperatorSpec::pucci_plus(1.0, 2.0);
    PieceCache cache(interval_pieces(spec));
    for (int n : {1, 2, 3}) {
        for (int sign : {1, -1}) {
            CAPTURE(n);
            CAPTURE(sign);
            const auto rep = solve_nodes(cache, n, sign, 0.0, 1.0);
            const auto pair = assemble(cache, rep.nodes, sign, spec);
            CHECK(pair.lambda == doctest::Approx(closed_form(n, sign)).epsilon(1e-8));
            CHECK(pair.zero_count == n);
            CHECK(pair.max_jump <= 1e-7);
            CHECK(pair.residual <= 1e-7 * pair.lambda);
            CHECK(pair.lambda_spread <= 1e-9);
            CHECK(pair.global.sup_abs() == doctest::Approx(1.0));
            CHECK(pair.global.value(1e-3) * sign > 0.0);
        }
    }
    CHECK(closed_form(1, -1) == doctest::Approx(pi * pi * (1 + sqrt2) * (1 + sqrt2)));
    CHECK(closed_form(2, 1) == doctest::Approx(pi * pi * (6 + 4 * sqrt2)));
}

TEST_CASE("Pucci plus spectrum up to three nodes") {
    const auto sp = spectrum(OperatorSpec::pucci_plus(1.0, 2.0), 3, 0.0, 1.0);
    CHECK(sp.increasing);
    REQUIRE(sp.pairs.size() == 8);
    for (const auto& pair : sp.pairs) {
        CHECK(pair.lambda == doctest::Approx(closed_form(pair.n, pair.sign)).epsilon(1e-8));
    }
    CHECK(sp.find(0, 1).lambda <= sp.find(0, -1).lambda);
    CHECK(sp.find(1, 1).lambda == doctest::Approx(sp.find(1, -1).lambda).epsilon(1e-9));
    CHECK_THROWS(sp.find(4, 1));
}

TEST_CASE("linear spectrum with drift") {
    // u'' + c u' = -lambda u on (0, 1): lambda_n = (n + 1)^2 pi^2 + c^2 / 4.
    const double c = 0.8;
    NehariOptions opts;
    opts.threads = 3;
    const auto sp = spectrum(OperatorSpec::linear(1.0, 1.0, c, 0.0), 3, 0.0, 1.0, opts);
    for (const auto& pair : sp.pairs) {
        const double expect = (pair.n + 1) * (pair.n + 1) * pi * pi + c * c / 4.0;
        CHECK(pair.lambda == doctest::Approx(expect).epsilon(1e-8));
        for (std::size_t k = 0; k < pair.nodes.n(); ++k) {
            CHECK(pair.nodes.t[k] == doctest::Approx((k + 1.0) / (pair.n + 1)).epsilon(1e-7));
        }
    }
}

TEST_CASE("spectra increase on the catalog") {
    for (const auto& c : corpus::catalog_cases()) {
        CAPTURE(c.label);
        NehariOptions opts;
        opts.threads = 2;
        const auto sp = spectrum(c.spec, 3, c.a, c.b, opts);
        CHECK(sp.increasing);
        for (const auto& pair : sp.pairs) {
            CHECK(pair.zero_count == pair.n);
            CHECK(pair.max_jump <= 1e-7);
        }
    }
}

TEST_CASE("threads do not change the result") {
    const auto spec = corpus::catalog_cases()[4].spec;
    NehariOptions one;
    NehariOptions four;
    four.threads = 4;
    const auto a = spectrum(spec, 2, 0.0, 1.0, one);
    const auto b = spectrum(spec, 2, 0.0, 1.0, four);
    for (std::size_t k = 0; k < a.pairs.size(); ++k) {
        CHECK(a.pairs[k].lambda == b.pairs[k].lambda);
        CHECK(a.pairs[k].nodes.t == b.pairs[k].nodes.t);
    }
}

TEST_CASE("the piece cache reuses solves") {
    int calls = 0;
    const auto base = interval_pieces(OperatorSpec::linear());
    PieceCache cache([&](double t1, double t2, int sign) {
        ++calls;
        return base(t1, t2, sign);
    });
    cache.get(0.0, 0.5, 1);
    cache.get(0.0, 0.5 + 1e-14, 1);
    cache.get(0.0, 0.5, -1);
    CHECK(calls == 2);
    CHECK(cache.size() == 2);
    CHECK(cache.lambda(0.0, 0.5, 1) == doctest::Approx(4.0 * pi * pi).epsilon(1e-9));
}

TEST_CASE("counting sign changes") {
    std::vector<double> t, u, p, m;
    for (int i = 0; i <= 400; ++i) {
        const double x = i / 400.0;
        t.push_back(x);
        u.push_back(std::sin(4 * pi * x));
        p.push_back(4 * pi * std::cos(4 * pi * x));
        m.push_back(-16 * pi * pi * std::sin(4 * pi * x));
    }
    CHECK(count_sign_changes(Trajectory(t, u, p, m)) == 3);
}
