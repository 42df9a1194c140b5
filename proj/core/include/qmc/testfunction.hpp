#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmc/pointset.hpp"
#include "qmc/rational.hpp"

namespace qmc {

// One univariate piecewise-linear factor: nodes 0 = x_0 < ... < x_K = 1
// with values y_0..y_K, interpolated linearly in between.
struct PiecewiseLinear1d {
    std::vector<Rational> nodes;
    std::vector<Rational> values;

    void validate() const;  // throws ConfigError
    Rational evaluate(const Rational& x) const;
    Rational integral() const;  // trapezoid sum, exact
};

// quadratic B-spline cutout: 3/4 - x^2 on [0,1/2], 9/8 - 3x/2 + x^2/2 on [1/2,1]
Rational bspline_cutout(const Rational& x);

// Tensor-product test integrand with an exact reference integral
// (except for the custom kind, which has none).
class TestFunction {
public:
    static TestFunction piecewise_linear(std::vector<PiecewiseLinear1d> factors);
    static TestFunction bspline(int d);
    static TestFunction custom(int d, std::string label,
                               std::function<Rational(const std::vector<Rational>&)> eval);

    int dim() const { return d_; }
    const std::string& label() const { return label_; }
    Rational evaluate(const std::vector<Rational>& x) const;
    Rational integral() const;  // throws ConfigError for the custom kind
    bool has_integral() const { return kind_ != Kind::Custom; }

private:
    enum class Kind { PiecewiseLinear, Bspline, Custom };
    TestFunction(Kind k, int d) : kind_(k), d_(d) {}

    Kind kind_;
    int d_;
    std::string label_;
    std::vector<PiecewiseLinear1d> factors_;
    std::function<Rational(const std::vector<Rational>&)> eval_;
};

// K interior breakpoints on the 2^-16 grid, strictly inside (0,1), sorted;
// values uniform on the [-1,1] grid of the same pitch. Deterministic per seed.
PiecewiseLinear1d random_piecewise_linear(int interior_nodes, std::uint64_t seed);

// d independent factors drawn from one seeded stream
TestFunction random_piecewise_linear_tensor(int d, int interior_nodes, std::uint64_t seed);

// (1/N) sum f(x), exact
Rational qmc_estimate(const TestFunction& f, const PointSet& p);

}  // namespace qmc
