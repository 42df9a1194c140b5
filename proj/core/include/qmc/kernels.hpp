#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qmc/pointset.hpp"
#include "qmc/rational.hpp"

namespace qmc {

// The three reproducing kernels of the mixed-smoothness-2 space, one per
// equivalent norm. K1 pairs with the mean-and-slope norm (its univariate
// mean is identically 1), K2 anchors f(0), f(1), K3 anchors f(0), f'(0).
enum class KernelId { K1, K2, K3 };

const char* kernel_name(KernelId id);

enum class BernoulliPoly { B1, B2, B4 };

// B1 = x - 1/2, B2 = x^2 - x + 1/6, B4 = x^4 - 2x^3 + x^2 - 1/30
Rational bernoulli(BernoulliPoly p, const Rational& x);

// Exact closed forms; arguments must lie in [0,1].
Rational kernel1d(KernelId id, const Rational& x, const Rational& y);
Rational kernel_tensor(KernelId id, const std::vector<Rational>& x,
                       const std::vector<Rational>& y);

// int_0^1 K(x,y) dy by piecewise polynomial antidifferentiation, splitting
// at y = x. Independent of the closed-form factors below by construction;
// the two must agree.
Rational kernel_mean_check(KernelId id, const Rational& x);

// The closed-form univariate factor of the single sum in the worst-case
// error: 1, or 1/2 + x/24 - x^3/12 + x^4/24, or 1 + x/2 + x^2/4 - x^3/6 + x^4/24.
Rational kernel_mean_factor(KernelId id, const Rational& x);

// iint K^d = 1, (61/120)^d, (13/10)^d
Rational kernel_double_integral(KernelId id, int d);

enum class WceMode {
    Auto,     // exact up to 2^13 points, sixty-digit fixed point above
    Exact,
    Fixed60,  // documented bound: absolute error < 1e-60 for N <= 2^20, d <= 8
};

struct WceOptions {
    WceMode mode = WceMode::Auto;
    int threads = 1;
    unsigned digits = 30;  // length of the reported square root
};

struct WceResult {
    Rational squared_error;    // exact in exact mode, else the fixed-point value
    std::string error_digits;  // sqrt of squared_error to `digits` places
    KernelId kernel;
    std::size_t n_points;
    int dim;
    WceMode used_mode;  // never Auto
};

// Worst-case quadrature error of the equal-weight rule on P, squared:
//   iint K^d - (2/N) sum_x prod_i factor(x_i) + (1/N^2) sum_{x,y} K^d(x,y).
// The pair sum runs over unordered pairs (kernel symmetry) in fixed blocks,
// so results are bit-identical for any thread count.
WceResult wce_squared(KernelId id, const PointSet& p, const WceOptions& opts = {});

}  // namespace qmc
