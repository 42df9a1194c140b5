#pragma once

#include <vector>

#include "qmc/faber.hpp"
#include "qmc/pointset.hpp"
#include "qmc/rational.hpp"

namespace qmc {

// Coordinatewise y -> |2y - 1|. Throws ConfigError outside [0,1].
Rational tent_coordinate(const Rational& y);
std::vector<Rational> tent_point(const std::vector<Rational>& y);

// Applies tent_point to every point, preserving order and multiplicity.
PointSet tent_pullback(const PointSet& p);

// Faber coefficients of Rf(x) = f(|2x-1|) from those of f, as an index
// permutation plus one subtraction per coordinate (never by resampling):
//   d_{-1,0}(Rf) = d_{-1,1}(f)
//   d_{0,0}(Rf)  = d_{-1,0}(f) - d_{-1,1}(f)
//   d_{j,k}(Rf)  = d_{j-1, 2^(j-1)-k-1}(f)   for j >= 1, k <  2^(j-1)
//                = d_{j-1, k-2^(j-1)}(f)     for j >= 1, k >= 2^(j-1)
// Input must be nonperiodic and complete up to level_budget per coordinate;
// the result is periodic with levels up to level_budget + 1.
FaberCoefficients tent_coefficient_map(const FaberCoefficients& c, int level_budget);
FaberCoefficients tent_coefficient_map(const FaberCoefficients& c);  // budget = c.max_level()

}  // namespace qmc
