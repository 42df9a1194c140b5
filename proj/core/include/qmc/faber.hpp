#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "qmc/rational.hpp"

namespace qmc {

// The two index conventions differ only at level -1: the nonperiodic basis
// keeps both endpoint hats (k in {0,1}), the periodic basis a single
// constant (k = 0). Kept apart at the type level because silently mixing
// them is the likeliest bug class here.
enum class DomainKind { NonPeriodic, Periodic };

struct LevelIndex {
    std::vector<int> j;            // entries >= -1
    std::vector<std::int64_t> k;   // k in {0,1} (or {0}) at j=-1, else [0, 2^j)

    auto operator<=>(const LevelIndex&) const = default;
};

// Sparse tensor-product Faber-Schauder coefficient table, complete up to a
// per-coordinate level budget J. Exact zeros are not stored.
class FaberCoefficients {
public:
    FaberCoefficients(DomainKind kind, int d, int max_level);

    DomainKind domain() const { return kind_; }
    int dim() const { return d_; }
    int max_level() const { return max_level_; }

    void set(const LevelIndex& idx, Rational value);  // value 0 erases
    Rational get(const LevelIndex& idx) const;
    std::size_t stored_count() const { return entries_.size(); }

    const std::map<LevelIndex, Rational>& entries() const { return entries_; }

    bool operator==(const FaberCoefficients& o) const {
        return kind_ == o.kind_ && d_ == o.d_ && entries_ == o.entries_;
    }
    bool operator!=(const FaberCoefficients& o) const { return !(*this == o); }

    // columns j1..jd,k1..kd,numerator,denominator
    void write_csv(std::ostream& os) const;

    void validate_index(const LevelIndex& idx) const;  // throws ConfigError

private:
    DomainKind kind_;
    int d_;
    int max_level_;
    std::map<LevelIndex, Rational> entries_;
};

// Univariate hat v_{j,k}. Level -1 gives the boundary interpolants
// (1 - |x - k|)_+ (nonperiodic) or the constant 1 (periodic). For j >= 0 the
// hat rises to 1 at 2^-j k + 2^-(j+1) on the dyadic cell [2^-j k, 2^-j(k+1)].
// Periodic evaluation wraps x modulo 1.
Rational faber_hat(int j, std::int64_t k, const Rational& x, DomainKind kind);

// Exact hierarchical analysis of f up to |j|_inf <= max_level: level -1
// takes point values at the cell endpoints, level j >= 0 the scaled second
// difference -1/2 (f(t+2h) - 2 f(t+h) + f(t)) with t = 2^-j k, h = 2^-(j+1),
// tensorized per coordinate. Samples only dyadic rationals.
FaberCoefficients analyze(const std::function<Rational(const std::vector<Rational>&)>& f, int d,
                          int max_level, DomainKind kind);

// Finite sum of the stored coefficients times tensor hats at x.
Rational reconstruct(const FaberCoefficients& c, const std::vector<Rational>& x);

struct LevelQuantity {
    std::vector<int> j;
    Rational value;
};

struct NormReport {
    std::vector<LevelQuantity> levels;  // every level vector up to the budget
    Rational sup;
    std::vector<int> arg_sup;  // level attaining the sup (empty if all zero)
};

// Per-level 2^(3|j|_1) * sum_k d^2 (the squared form of the H^2 dyadic
// quantity; kept squared so everything stays rational) and its sup.
NormReport dyadic_h2_norm(const FaberCoefficients& c);

// Per-level 2^(|j|_1) * sum_k |d| and its sup (Besov B_{1,inf} style).
NormReport besov_1inf_norm(const FaberCoefficients& c);

}  // namespace qmc
