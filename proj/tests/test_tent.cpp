#include <cstdint>
#include <vector>

#include "doctest.h"
#include "qmc/errors.hpp"
#include "qmc/faber.hpp"
#include "qmc/pointsets.hpp"
#include "qmc/rng.hpp"
#include "qmc/tent.hpp"
#include "qmc/testfunction.hpp"

using qmc::DomainKind;
using qmc::FaberCoefficients;
using qmc::PointSet;
using qmc::Rational;

namespace {

// f(|2x-1|) for a univariate piecewise-linear f, built as an explicit
// piecewise-linear function (breakpoints (1 -+ x_i)/2) so its exact integral
// is available independently.
qmc::PiecewiseLinear1d compose_tent(const qmc::PiecewiseLinear1d& f) {
    qmc::PiecewiseLinear1d out;
    const auto K = f.nodes.size();
    for (std::size_t i = K; i-- > 0;) {
        out.nodes.push_back((Rational(1) - f.nodes[i]) / Rational(2));
        out.values.push_back(f.values[i]);
    }
    for (std::size_t i = 1; i < K; ++i) {  // skip the shared apex node 1/2
        out.nodes.push_back((Rational(1) + f.nodes[i]) / Rational(2));
        out.values.push_back(f.values[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("tent map on coordinates") {
    CHECK(qmc::tent_coordinate(Rational(1, 2)) == Rational(0));
    CHECK(qmc::tent_coordinate(Rational(1, 4)) == Rational(1, 2));
    CHECK(qmc::tent_coordinate(Rational(3, 4)) == Rational(1, 2));
    CHECK(qmc::tent_coordinate(Rational(0)) == Rational(1));
    CHECK(qmc::tent_coordinate(Rational(1)) == Rational(1));
    CHECK_THROWS_AS(qmc::tent_coordinate(Rational(5, 4)), qmc::ConfigError);
    CHECK_THROWS_AS(qmc::tent_coordinate(Rational(-1, 8)), qmc::ConfigError);

    std::vector<Rational> y{Rational(34, 89), Rational(1, 89)};
    std::vector<Rational> x = qmc::tent_point(y);
    CHECK(x[0] == Rational(21, 89));
    CHECK(x[1] == Rational(87, 89));
}

TEST_CASE("tent pullback keeps multiplicity and order") {
    PointSet p(1);
    p.append({Rational(1, 4)});
    p.append({Rational(3, 4)});
    PointSet t = qmc::tent_pullback(p);
    REQUIRE(t.size() == 2);
    CHECK(t.at(0, 0) == Rational(1, 2));
    CHECK(t.at(1, 0) == Rational(1, 2));  // multiset keeps both copies

    PointSet h = qmc::halton2d(5);
    PointSet th = qmc::tent_pullback(h);
    CHECK(th.size() == h.size());
    PointSet tth = qmc::tent_pullback(th);
    for (std::size_t i = 0; i < tth.size(); ++i)
        for (int c = 0; c < tth.dim(); ++c) {
            CHECK(tth.at(i, c) >= Rational(0));
            CHECK(tth.at(i, c) <= Rational(1));
        }
}

TEST_CASE("coefficient map sends 1-x to the first periodic hat") {
    // f = 1 - x has the single nonperiodic coefficient d_{-1,0} = 1
    FaberCoefficients c(DomainKind::NonPeriodic, 1, 2);
    c.set({{-1}, {0}}, Rational(1));
    FaberCoefficients rc = qmc::tent_coefficient_map(c);
    CHECK(rc.domain() == DomainKind::Periodic);
    CHECK(rc.max_level() == 3);
    CHECK(rc.get({{-1}, {0}}) == Rational(0));
    CHECK(rc.get({{0}, {0}}) == Rational(1));
    CHECK(rc.stored_count() == 1);
}

TEST_CASE("coefficient map level rules in one dimension") {
    FaberCoefficients c(DomainKind::NonPeriodic, 1, 2);
    c.set({{-1}, {1}}, Rational(5));       // value at 1
    c.set({{0}, {0}}, Rational(7));
    c.set({{1}, {0}}, Rational(11));
    c.set({{1}, {1}}, Rational(13));
    FaberCoefficients rc = qmc::tent_coefficient_map(c);

    CHECK(rc.get({{-1}, {0}}) == Rational(5));   // d_{-1,1}(f)
    CHECK(rc.get({{0}, {0}}) == Rational(-5));   // d_{-1,0} - d_{-1,1} = 0 - 5
    CHECK(rc.get({{1}, {0}}) == Rational(7));    // j=1, k=0 <- (0, 0)
    CHECK(rc.get({{1}, {1}}) == Rational(7));    // j=1, k=1 <- (0, 0)
    CHECK(rc.get({{2}, {0}}) == Rational(13));   // k=0 <- (1, 2^0-0-1=1)... reversed
    CHECK(rc.get({{2}, {1}}) == Rational(11));
    CHECK(rc.get({{2}, {2}}) == Rational(11));   // k=2 <- (1, 0)
    CHECK(rc.get({{2}, {3}}) == Rational(13));
}

TEST_CASE("mapped coefficients pair symmetrically within each level") {
    qmc::TestFunction f = qmc::random_piecewise_linear_tensor(1, 4, 77);
    FaberCoefficients c = qmc::analyze(
        [&](const std::vector<Rational>& x) { return f.evaluate(x); }, 1, 4,
        DomainKind::NonPeriodic);
    FaberCoefficients rc = qmc::tent_coefficient_map(c);
    for (const auto& [idx, val] : rc.entries()) {
        if (idx.j[0] < 1) continue;
        std::int64_t mirror = (std::int64_t{1} << idx.j[0]) - idx.k[0] - 1;
        CHECK(rc.get({idx.j, {mirror}}) == val);
    }
}

TEST_CASE("coefficient map equals analyzing the composed function") {
    qmc::SplitMix64 rng(61);
    for (int trial = 0; trial < 8; ++trial) {
        qmc::TestFunction f = qmc::random_piecewise_linear_tensor(1, 3, rng.next());
        const int J = 4;
        FaberCoefficients direct = qmc::analyze(
            [&](const std::vector<Rational>& x) {
                return f.evaluate(qmc::tent_point(x));
            },
            1, J + 1, DomainKind::Periodic);
        FaberCoefficients mapped = qmc::tent_coefficient_map(qmc::analyze(
            [&](const std::vector<Rational>& x) { return f.evaluate(x); }, 1, J,
            DomainKind::NonPeriodic));
        CHECK(direct == mapped);
    }
}

TEST_CASE("coefficient map equals analyzing the composed function, bivariate") {
    qmc::SplitMix64 rng(62);
    for (int trial = 0; trial < 3; ++trial) {
        qmc::TestFunction f = qmc::random_piecewise_linear_tensor(2, 3, rng.next());
        const int J = 3;
        FaberCoefficients direct = qmc::analyze(
            [&](const std::vector<Rational>& x) {
                return f.evaluate(qmc::tent_point(x));
            },
            2, J + 1, DomainKind::Periodic);
        FaberCoefficients mapped = qmc::tent_coefficient_map(qmc::analyze(
            [&](const std::vector<Rational>& x) { return f.evaluate(x); }, 2, J,
            DomainKind::NonPeriodic));
        CHECK(direct == mapped);
    }
}

TEST_CASE("coefficient map rejects periodic input and bad budgets") {
    FaberCoefficients per(DomainKind::Periodic, 1, 2);
    CHECK_THROWS_AS(qmc::tent_coefficient_map(per), qmc::ConfigError);
    FaberCoefficients c(DomainKind::NonPeriodic, 1, 2);
    CHECK_THROWS_AS(qmc::tent_coefficient_map(c, 3), qmc::ConfigError);  // beyond budget
}

TEST_CASE("tent transform preserves integrals of composed piecewise-linear functions") {
    qmc::SplitMix64 rng(63);
    for (int trial = 0; trial < 10; ++trial) {
        qmc::PiecewiseLinear1d f = qmc::random_piecewise_linear(3, rng.next());
        qmc::PiecewiseLinear1d g = compose_tent(f);
        g.validate();
        CHECK(g.integral() == f.integral());
        // spot-check the composition pointwise
        for (int i = 0; i < 20; ++i) {
            Rational x(static_cast<long>(rng.next_below(257)), 256);
            CHECK(g.evaluate(x) == f.evaluate(qmc::tent_coordinate(x)));
        }
    }
}

TEST_CASE("quadrature error transfers through the tent transform") {
    // error of f on the pullback set equals error of f(tent) on the original
    qmc::SplitMix64 rng(64);
    for (int trial = 0; trial < 5; ++trial) {
        qmc::PiecewiseLinear1d f1 = qmc::random_piecewise_linear(3, rng.next());
        qmc::TestFunction f = qmc::TestFunction::piecewise_linear({f1});
        qmc::PiecewiseLinear1d g1 = compose_tent(f1);
        qmc::TestFunction g = qmc::TestFunction::piecewise_linear({g1});

        PointSet p(1);
        for (int i = 0; i < 16; ++i)
            p.append({Rational(static_cast<long>(rng.next_below(65)), 64)});
        PointSet tp = qmc::tent_pullback(p);

        Rational err_pullback = (qmc::qmc_estimate(f, tp) - f.integral()).abs();
        Rational err_composed = (qmc::qmc_estimate(g, p) - g.integral()).abs();
        CHECK(err_pullback == err_composed);
    }
}
