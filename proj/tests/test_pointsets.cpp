#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "qmc/errors.hpp"
#include "qmc/net.hpp"
#include "qmc/pointsets.hpp"
#include "qmc/rng.hpp"

using qmc::PointSet;
using qmc::Rational;

namespace {

// (0,n,2)-net check: every elementary box of volume 2^-n holds one point
bool is_00n2_net(const PointSet& p, int n) {
    for (int a = 0; a <= n; ++a) {
        std::map<std::pair<std::uint64_t, std::uint64_t>, int> counts;
        for (std::size_t i = 0; i < p.size(); ++i)
            ++counts[{qmc::scaled_floor_pow2(p.at(i, 0), a),
                      qmc::scaled_floor_pow2(p.at(i, 1), n - a)}];
        if (counts.size() != p.size()) return false;
        for (const auto& [box, c] : counts)
            if (c != 1) return false;
    }
    return true;
}

Rational frac(const Rational& x) {
    Rational r = x;
    while (r >= Rational(1)) r -= Rational(1);
    return r;
}

}  // namespace

TEST_CASE("van der Corput values") {
    CHECK(qmc::van_der_corput(1, 6) == Rational(32, 64));
    CHECK(qmc::van_der_corput(0, 6) == Rational(0));
    CHECK(qmc::van_der_corput(0, 1) == Rational(0));
    CHECK(qmc::van_der_corput(3, 3) == Rational(3, 4));
    CHECK_THROWS_AS(qmc::van_der_corput(8, 3), qmc::ConfigError);
}

TEST_CASE("halton2d pairs the counter with its digit reversal") {
    PointSet p = qmc::halton2d(6);
    REQUIRE(p.size() == 64);
    CHECK(p.at(2, 0) == Rational(2, 64));
    CHECK(p.at(2, 1) == Rational(16, 64));
    CHECK(p.at(63, 0) == Rational(63, 64));
    CHECK(p.at(63, 1) == Rational(63, 64));

    PointSet tiny = qmc::halton2d(1);
    REQUIRE(tiny.size() == 2);
    CHECK(tiny.at(0, 0) == Rational(0));
    CHECK(tiny.at(0, 1) == Rational(0));
    CHECK(tiny.at(1, 0) == Rational(1, 2));
    CHECK(tiny.at(1, 1) == Rational(1, 2));
}

TEST_CASE("halton2d is a (0,n,2)-net") {
    for (int n = 1; n <= 8; ++n) CHECK(is_00n2_net(qmc::halton2d(n), n));
    CHECK(is_00n2_net(qmc::halton2d(12), 12));
}

TEST_CASE("fibonacci numbers and lattice coordinates") {
    CHECK(qmc::fibonacci(1) == 1);
    CHECK(qmc::fibonacci(2) == 1);
    CHECK(qmc::fibonacci(11) == 89);
    CHECK(qmc::fibonacci(92) == 7540113804746346429ull);

    PointSet p = qmc::fibonacci_lattice(11);
    REQUIRE(p.size() == 89);
    CHECK(p.at(0, 0) == Rational(0));
    CHECK(p.at(0, 1) == Rational(0));
    CHECK(p.at(1, 0) == Rational(1, 89));
    CHECK(p.at(1, 1) == Rational(55, 89));
    CHECK(p.at(2, 0) == Rational(2, 89));
    CHECK(p.at(2, 1) == Rational(21, 89));
}

TEST_CASE("fibonacci lattice is closed under addition mod 1") {
    PointSet p = qmc::fibonacci_lattice(9);  // N = 34
    std::set<std::pair<Rational, Rational>> points;
    for (std::size_t i = 0; i < p.size(); ++i) points.insert({p.at(i, 0), p.at(i, 1)});
    qmc::SplitMix64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t a = rng.next_below(p.size());
        std::size_t b = rng.next_below(p.size());
        std::pair<Rational, Rational> sum{frac(p.at(a, 0) + p.at(b, 0)),
                                          frac(p.at(a, 1) + p.at(b, 1))};
        CHECK(points.count(sum) == 1);
    }
}

TEST_CASE("zaremba shift flips every second digit of y") {
    CHECK(qmc::zaremba_sigma(6) == Rational(42, 64));
    CHECK(qmc::zaremba_sigma(1) == Rational(1, 2));

    PointSet z = qmc::zaremba_shift(qmc::halton2d(6));
    CHECK(z.at(0, 0) == Rational(0));
    CHECK(z.at(0, 1) == Rational(42, 64));
    CHECK(z.at(1, 0) == Rational(1, 64));
    CHECK(z.at(1, 1) == Rational(10, 64));
    CHECK(z.at(2, 0) == Rational(2, 64));
    CHECK(z.at(2, 1) == Rational(58, 64));
}

TEST_CASE("zaremba shift preserves the net property") {
    for (int n = 2; n <= 8; n += 2) CHECK(is_00n2_net(qmc::zaremba_shift(qmc::halton2d(n)), n));
}

TEST_CASE("digital shifts compose as XOR") {
    PointSet p = qmc::halton2d(5);

    qmc::DigitalShift zero;
    zero.n = 5;
    zero.sigma = {Rational(0), Rational(0)};
    CHECK(qmc::apply_digital_shift(p, zero) == p);

    qmc::DigitalShift s = qmc::random_shift(2, 5, 99);
    PointSet once = qmc::apply_digital_shift(p, s);
    CHECK(once.size() == p.size());
    CHECK(qmc::apply_digital_shift(once, s) == p);  // involution

    qmc::DigitalShift zar;
    zar.n = 6;
    zar.sigma = {Rational(0), qmc::zaremba_sigma(6)};
    CHECK(qmc::apply_digital_shift(qmc::halton2d(6), zar) ==
          qmc::zaremba_shift(qmc::halton2d(6)));
}

TEST_CASE("digital shift permutes each coordinate grid") {
    PointSet p = qmc::halton2d(5);
    PointSet shifted = qmc::apply_digital_shift(p, qmc::random_shift(2, 5, 7));
    for (int c = 0; c < 2; ++c) {
        std::multiset<Rational> before, after;
        for (std::size_t i = 0; i < p.size(); ++i) {
            before.insert(p.at(i, c));
            after.insert(shifted.at(i, c));
        }
        CHECK(before == after);
    }
}

TEST_CASE("random shifts are reproducible and seed-sensitive") {
    qmc::DigitalShift a = qmc::random_shift(2, 8, 42);
    qmc::DigitalShift b = qmc::random_shift(2, 8, 42);
    qmc::DigitalShift c = qmc::random_shift(2, 8, 43);
    REQUIRE(a.dim() == 2);
    CHECK(a.n == 8);
    CHECK(a.sigma[0] == b.sigma[0]);
    CHECK(a.sigma[1] == b.sigma[1]);
    CHECK((a.sigma[0] != c.sigma[0] || a.sigma[1] != c.sigma[1]));

    Rational scale = qmc::pow(Rational(2), 8);
    for (const Rational& s : a.sigma) {
        CHECK((s * scale).den_is_one());  // exactly 8 digits
        CHECK(s >= Rational(0));
        CHECK(s < Rational(1));
    }
}

TEST_CASE("random shift bits are balanced across seeds") {
    const int n = 8, draws = 10000;
    std::vector<int> ones(n, 0);
    for (int seed = 0; seed < draws; ++seed) {
        qmc::DigitalShift s = qmc::random_shift(1, n, static_cast<std::uint64_t>(seed));
        std::uint64_t bits = qmc::scaled_floor_pow2(s.sigma[0], n);
        for (int b = 0; b < n; ++b)
            if ((bits >> b) & 1) ++ones[b];
    }
    for (int b = 0; b < n; ++b) {
        double mean = static_cast<double>(ones[b]) / draws;
        CHECK(mean > 0.48);
        CHECK(mean < 0.52);
    }
}
