#include <vector>

#include "doctest.h"
#include "qmc/errors.hpp"
#include "qmc/pointset.hpp"
#include "qmc/rng.hpp"
#include "qmc/testfunction.hpp"

using qmc::PiecewiseLinear1d;
using qmc::Rational;
using qmc::TestFunction;

TEST_CASE("bspline cutout values and integral") {
    CHECK(qmc::bspline_cutout(Rational(0)) == Rational(3, 4));
    CHECK(qmc::bspline_cutout(Rational(1, 2)) == Rational(1, 2));  // both branches agree
    CHECK(Rational(9, 8) - Rational(3, 4) + Rational(1, 8) == Rational(1, 2));
    CHECK(qmc::bspline_cutout(Rational(1)) == Rational(1, 8));
    CHECK(qmc::bspline_cutout(Rational(1, 4)) == Rational(11, 16));
    CHECK(qmc::bspline_cutout(Rational(3, 4)) == Rational(9, 32));
    CHECK_THROWS_AS(qmc::bspline_cutout(Rational(-1, 8)), qmc::ConfigError);
    CHECK_THROWS_AS(qmc::bspline_cutout(Rational(9, 8)), qmc::ConfigError);

    TestFunction f1 = TestFunction::bspline(1);
    CHECK(f1.integral() == Rational(23, 48));
    TestFunction f3 = TestFunction::bspline(3);
    CHECK(f3.integral() == qmc::pow(Rational(23, 48), 3));
    CHECK(f3.evaluate({Rational(0), Rational(1, 2), Rational(1)}) ==
          Rational(3, 4) * Rational(1, 2) * Rational(1, 8));
    CHECK(f3.dim() == 3);
    CHECK(f3.label() == "bspline");
    CHECK(f3.has_integral());
}

TEST_CASE("piecewise-linear factor evaluation and integral") {
    PiecewiseLinear1d ramp;
    ramp.nodes = {Rational(0), Rational(1)};
    ramp.values = {Rational(0), Rational(1)};
    ramp.validate();
    CHECK(ramp.integral() == Rational(1, 2));
    CHECK(ramp.evaluate(Rational(3, 7)) == Rational(3, 7));

    PiecewiseLinear1d f;
    f.nodes = {Rational(0), Rational(1, 3), Rational(1)};
    f.values = {Rational(1), Rational(-1), Rational(2)};
    f.validate();
    CHECK(f.evaluate(Rational(0)) == Rational(1));
    CHECK(f.evaluate(Rational(1, 6)) == Rational(0));
    CHECK(f.evaluate(Rational(1, 3)) == Rational(-1));
    CHECK(f.evaluate(Rational(2, 3)) == Rational(1, 2));
    CHECK(f.evaluate(Rational(1)) == Rational(2));
    // (1/3)(1 + -1)/2 + (2/3)(-1 + 2)/2
    CHECK(f.integral() == Rational(1, 3));
    CHECK_THROWS_AS(f.evaluate(Rational(-1, 10)), qmc::ConfigError);
    CHECK_THROWS_AS(f.evaluate(Rational(11, 10)), qmc::ConfigError);
}

TEST_CASE("piecewise-linear validation rejects malformed factors") {
    PiecewiseLinear1d f;
    f.nodes = {Rational(0), Rational(1)};
    f.values = {Rational(0)};
    CHECK_THROWS_AS(f.validate(), qmc::ConfigError);  // size mismatch

    f.values = {Rational(0), Rational(1)};
    f.nodes = {Rational(0), Rational(1, 2)};
    CHECK_THROWS_AS(f.validate(), qmc::ConfigError);  // does not end at 1

    f.nodes = {Rational(1, 4), Rational(1)};
    CHECK_THROWS_AS(f.validate(), qmc::ConfigError);  // does not start at 0

    f.nodes = {Rational(0), Rational(1, 2), Rational(1, 2), Rational(1)};
    f.values = {Rational(0), Rational(1), Rational(2), Rational(3)};
    CHECK_THROWS_AS(f.validate(), qmc::ConfigError);  // repeated node

    PiecewiseLinear1d tiny;
    tiny.nodes = {Rational(0)};
    tiny.values = {Rational(0)};
    CHECK_THROWS_AS(tiny.validate(), qmc::ConfigError);

    CHECK_THROWS_AS(TestFunction::piecewise_linear({}), qmc::ConfigError);
    CHECK_THROWS_AS(TestFunction::bspline(0), qmc::ConfigError);
}

TEST_CASE("random factors are deterministic and well formed") {
    PiecewiseLinear1d a = qmc::random_piecewise_linear(4, 99);
    PiecewiseLinear1d b = qmc::random_piecewise_linear(4, 99);
    CHECK(a.nodes == b.nodes);
    CHECK(a.values == b.values);
    PiecewiseLinear1d c = qmc::random_piecewise_linear(4, 100);
    CHECK(a.nodes != c.nodes);

    CHECK(a.nodes.size() == 6);
    a.validate();
    for (std::size_t i = 1; i + 1 < a.nodes.size(); ++i) {
        CHECK(a.nodes[i] > Rational(0));
        CHECK(a.nodes[i] < Rational(1));
    }
    for (const Rational& v : a.values) {
        CHECK(v >= Rational(-1));
        CHECK(v <= Rational(1));
    }

    PiecewiseLinear1d flatless = qmc::random_piecewise_linear(0, 7);
    CHECK(flatless.nodes.size() == 2);
    flatless.validate();

    CHECK_THROWS_AS(qmc::random_piecewise_linear(-1, 0), qmc::ConfigError);
}

TEST_CASE("tensor products multiply factor by factor") {
    TestFunction f = qmc::random_piecewise_linear_tensor(3, 2, 42);
    CHECK(f.dim() == 3);
    CHECK(f.label() == "pwlinear");

    // same stream, unpacked by hand
    qmc::SplitMix64 rng(42);
    PiecewiseLinear1d f0 = qmc::random_piecewise_linear(2, rng.next());
    PiecewiseLinear1d f1 = qmc::random_piecewise_linear(2, rng.next());
    PiecewiseLinear1d f2 = qmc::random_piecewise_linear(2, rng.next());

    std::vector<Rational> x = {Rational(1, 3), Rational(5, 7), Rational(13, 64)};
    CHECK(f.evaluate(x) == f0.evaluate(x[0]) * f1.evaluate(x[1]) * f2.evaluate(x[2]));
    CHECK(f.integral() == f0.integral() * f1.integral() * f2.integral());

    CHECK_THROWS_AS(f.evaluate({Rational(0), Rational(0)}), qmc::ConfigError);
    CHECK_THROWS_AS(qmc::random_piecewise_linear_tensor(0, 2, 1), qmc::ConfigError);
}

TEST_CASE("custom functions evaluate but refuse to integrate") {
    TestFunction f = TestFunction::custom(
        2, "xy", [](const std::vector<Rational>& x) { return x[0] * x[1]; });
    CHECK(f.dim() == 2);
    CHECK(f.label() == "xy");
    CHECK(!f.has_integral());
    CHECK(f.evaluate({Rational(1, 2), Rational(1, 3)}) == Rational(1, 6));
    CHECK_THROWS_AS(f.integral(), qmc::ConfigError);
}

TEST_CASE("equal-weight estimates") {
    qmc::PointSet p(1);
    p.append({Rational(0)});
    p.append({Rational(1, 2)});

    TestFunction id = TestFunction::custom(
        1, "x", [](const std::vector<Rational>& x) { return x[0]; });
    CHECK(qmc::qmc_estimate(id, p) == Rational(1, 4));

    TestFunction c = TestFunction::custom(
        1, "c", [](const std::vector<Rational>&) { return Rational(5, 9); });
    CHECK(qmc::qmc_estimate(c, p) == Rational(5, 9));

    // direct sum oracle on a random integrand over a small grid
    TestFunction f = qmc::random_piecewise_linear_tensor(2, 3, 4711);
    qmc::PointSet grid(2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) grid.append({Rational(i, 4), Rational(j, 4)});
    Rational total;
    for (std::size_t i = 0; i < grid.size(); ++i) total += f.evaluate(grid.point(i));
    CHECK(qmc::qmc_estimate(f, grid) == total / Rational(16));

    qmc::PointSet empty(2);
    CHECK_THROWS_AS(qmc::qmc_estimate(f, empty), qmc::ConfigError);
    CHECK_THROWS_AS(qmc::qmc_estimate(id, grid), qmc::ConfigError);  // dim mismatch
}
