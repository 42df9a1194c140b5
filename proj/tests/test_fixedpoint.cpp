#include "doctest.h"
#include "qmc/fixedpoint.hpp"
#include "qmc/rational.hpp"
#include "qmc/rng.hpp"

using qmc::Fixed;
using qmc::Rational;

namespace {

Rational ulp() { return Rational(1) / qmc::pow(Rational(2), Fixed::kFracBits); }

Rational random_small(qmc::SplitMix64& rng) {
    long num = static_cast<long>(rng.next_below(20001)) - 10000;
    long den = static_cast<long>(rng.next_below(9999)) + 1;
    return Rational(num, den) / Rational(16);  // keep magnitudes comfortable
}

}  // namespace

TEST_CASE("fixed point round trips dyadics exactly") {
    CHECK(Fixed::from_int(0).to_rational() == Rational(0));
    CHECK(Fixed::from_int(-7).to_rational() == Rational(-7));
    CHECK(Fixed::from_rational(Rational(3, 8)).to_rational() == Rational(3, 8));
    CHECK(Fixed::from_rational(Rational(-5, 4)).to_rational() == Rational(-5, 4));
    Rational tiny = ulp();
    CHECK(Fixed::from_rational(tiny).to_rational() == tiny);
}

TEST_CASE("fixed point conversion truncates toward zero") {
    Rational third(1, 3);
    Rational got = Fixed::from_rational(third).to_rational();
    CHECK(got <= third);
    CHECK(third - got < ulp());
    Rational neg = Rational(-1, 3);
    Rational gotn = Fixed::from_rational(neg).to_rational();
    CHECK(gotn >= neg);  // toward zero
    CHECK(neg - gotn > -ulp());
}

TEST_CASE("fixed point add and subtract are exact") {
    qmc::SplitMix64 rng(21);
    for (int i = 0; i < 200; ++i) {
        Rational a = random_small(rng), b = random_small(rng);
        Fixed fa = Fixed::from_rational(a), fb = Fixed::from_rational(b);
        CHECK((fa + fb).to_rational() == fa.to_rational() + fb.to_rational());
        CHECK((fa - fb).to_rational() == fa.to_rational() - fb.to_rational());
        CHECK((-fa).to_rational() == -fa.to_rational());
        CHECK(fa.abs().to_rational() == fa.to_rational().abs());
    }
}

TEST_CASE("fixed point multiply error is below one ulp") {
    qmc::SplitMix64 rng(22);
    for (int i = 0; i < 200; ++i) {
        Rational a = random_small(rng), b = random_small(rng);
        Fixed fa = Fixed::from_rational(a), fb = Fixed::from_rational(b);
        Rational exact = fa.to_rational() * fb.to_rational();
        Rational got = (fa * fb).to_rational();
        CHECK(got.abs() <= exact.abs());  // truncation toward zero
        CHECK((exact - got).abs() < ulp());
    }
    // dyadic products with few bits come out exact
    Fixed x = Fixed::from_rational(Rational(3, 4));
    Fixed y = Fixed::from_rational(Rational(-5, 8));
    CHECK((x * y).to_rational() == Rational(-15, 32));
}

TEST_CASE("fixed point comparisons follow signed order") {
    Fixed a = Fixed::from_rational(Rational(-1, 2));
    Fixed b = Fixed::from_rational(Rational(1, 4));
    CHECK(a < b);
    CHECK(b > a);
    CHECK(a == Fixed::from_rational(Rational(-1, 2)));
    CHECK(Fixed().is_zero());
    CHECK_FALSE(Fixed().is_negative());
    CHECK(a.is_negative());
}

TEST_CASE("fixed point overflow is loud") {
    Rational big = qmc::pow(Rational(2), 70);
    CHECK_THROWS(Fixed::from_rational(big));
    Fixed huge = Fixed::from_rational(qmc::pow(Rational(2), 40));
    CHECK_THROWS(huge * huge);  // 2^80 needs limb 9 of the product
}
