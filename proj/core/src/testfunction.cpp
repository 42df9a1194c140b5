#include "qmc/testfunction.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "qmc/errors.hpp"
#include "qmc/rng.hpp"

namespace qmc {

void PiecewiseLinear1d::validate() const {
    if (nodes.size() < 2 || nodes.size() != values.size())
        throw ConfigError("piecewise-linear factor needs matching nodes and values");
    if (nodes.front() != Rational(0) || nodes.back() != Rational(1))
        throw ConfigError("piecewise-linear nodes must start at 0 and end at 1");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i - 1] < nodes[i]))
            throw ConfigError("piecewise-linear nodes must be strictly increasing");
}

Rational PiecewiseLinear1d::evaluate(const Rational& x) const {
    if (x < nodes.front() || x > nodes.back())
        throw ConfigError("piecewise-linear argument outside [0,1]");
    std::size_t hi = 1;
    while (nodes[hi] < x) ++hi;
    const Rational& a = nodes[hi - 1];
    const Rational& b = nodes[hi];
    return values[hi - 1] + (values[hi] - values[hi - 1]) * (x - a) / (b - a);
}

Rational PiecewiseLinear1d::integral() const {
    Rational s;
    for (std::size_t i = 1; i < nodes.size(); ++i)
        s += (nodes[i] - nodes[i - 1]) * (values[i] + values[i - 1]) / Rational(2);
    return s;
}

Rational bspline_cutout(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw ConfigError("argument outside [0,1]");
    if (x <= Rational(1, 2)) return Rational(3, 4) - x * x;
    return Rational(9, 8) - Rational(3, 2) * x + x * x / Rational(2);
}

TestFunction TestFunction::piecewise_linear(std::vector<PiecewiseLinear1d> factors) {
    if (factors.empty()) throw ConfigError("need at least one factor");
    for (const auto& f : factors) f.validate();
    TestFunction t(Kind::PiecewiseLinear, static_cast<int>(factors.size()));
    t.label_ = "pwlinear";
    t.factors_ = std::move(factors);
    return t;
}

TestFunction TestFunction::bspline(int d) {
    if (d < 1) throw ConfigError("dimension must be positive");
    TestFunction t(Kind::Bspline, d);
    t.label_ = "bspline";
    return t;
}

TestFunction TestFunction::custom(int d, std::string label,
                                  std::function<Rational(const std::vector<Rational>&)> eval) {
    if (d < 1) throw ConfigError("dimension must be positive");
    TestFunction t(Kind::Custom, d);
    t.label_ = std::move(label);
    t.eval_ = std::move(eval);
    return t;
}

Rational TestFunction::evaluate(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != d_) throw ConfigError("point has wrong dimension");
    switch (kind_) {
        case Kind::PiecewiseLinear: {
            Rational v(1);
            for (int i = 0; i < d_; ++i) v *= factors_[i].evaluate(x[i]);
            return v;
        }
        case Kind::Bspline: {
            Rational v(1);
            for (int i = 0; i < d_; ++i) v *= bspline_cutout(x[i]);
            return v;
        }
        default:
            return eval_(x);
    }
}

Rational TestFunction::integral() const {
    switch (kind_) {
        case Kind::PiecewiseLinear: {
            Rational v(1);
            for (const auto& f : factors_) v *= f.integral();
            return v;
        }
        case Kind::Bspline:
            return pow(Rational(23, 48), static_cast<unsigned>(d_));
        default:
            throw ConfigError("custom test function has no reference integral");
    }
}

PiecewiseLinear1d random_piecewise_linear(int interior_nodes, std::uint64_t seed) {
    if (interior_nodes < 0) throw ConfigError("node count must be >= 0");
    SplitMix64 rng(seed);
    constexpr std::uint64_t kGrid = 1u << 16;

    std::set<std::uint64_t> picks;  // numerators over 2^16, strictly inside (0,1)
    while (picks.size() < static_cast<std::size_t>(interior_nodes))
        picks.insert(rng.next_below(kGrid - 1) + 1);

    PiecewiseLinear1d f;
    f.nodes.push_back(Rational(0));
    for (std::uint64_t p : picks)
        f.nodes.push_back(Rational(static_cast<long>(p), static_cast<long>(kGrid)));
    f.nodes.push_back(Rational(1));
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        long num = static_cast<long>(rng.next_below(2 * kGrid + 1)) - static_cast<long>(kGrid);
        f.values.push_back(Rational(num, static_cast<long>(kGrid)));
    }
    return f;
}

TestFunction random_piecewise_linear_tensor(int d, int interior_nodes, std::uint64_t seed) {
    if (d < 1) throw ConfigError("dimension must be positive");
    std::vector<PiecewiseLinear1d> factors;
    factors.reserve(d);
    SplitMix64 rng(seed);
    for (int i = 0; i < d; ++i) factors.push_back(random_piecewise_linear(interior_nodes, rng.next()));
    return TestFunction::piecewise_linear(std::move(factors));
}

Rational qmc_estimate(const TestFunction& f, const PointSet& p) {
    if (p.size() == 0) throw ConfigError("estimate over an empty point set");
    if (static_cast<int>(p.dim()) != f.dim()) throw ConfigError("dimension mismatch");
    Rational s;
    for (std::size_t i = 0; i < p.size(); ++i) s += f.evaluate(p.point(i));
    return s / Rational(static_cast<long>(p.size()));
}

}  // namespace qmc
