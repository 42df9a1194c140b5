#pragma once

#include <string>
#include <string_view>

#include "qmc/rational.hpp"

namespace qmc {

// Decimal approximation of sqrt(x) with `digits` digits after the point,
// rounded to nearest with ties toward zero. Deterministic, and the returned
// string s satisfies |s^2 - x| < 10^-digits * max(1, x).
// Square roots are the only place the toolkit leaves exact arithmetic.
std::string sqrt_to_digits(const Rational& x, int digits);

// Parses "1.942436292453705e-6" style decimal/scientific strings exactly.
// Also accepts "p/q". Used to compare computed values against references.
Rational rational_from_decimal(std::string_view s);

// Plain decimal rendering of x with `digits` digits after the point,
// rounded to nearest with ties toward zero.
std::string decimal_string(const Rational& x, int digits);

// |a - b| <= tol * |b|, all exact.
bool within_relative(const Rational& a, const Rational& b, const Rational& tol);

}  // namespace qmc
