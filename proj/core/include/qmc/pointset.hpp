#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qmc/rational.hpp"

namespace qmc {

// Ordered multiset of points in [0,1]^d with exact rational coordinates.
// Point order is part of the contract (generation order k = 0..N-1), so CSV
// output and digit-level checks are reproducible.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(int d) : d_(d) {}

    int dim() const { return d_; }
    std::size_t size() const { return d_ ? flat_.size() / d_ : 0; }

    const Rational& at(std::size_t i, int c) const { return flat_[i * d_ + c]; }
    Rational& at(std::size_t i, int c) { return flat_[i * d_ + c]; }

    void append(std::vector<Rational> point);
    void reserve(std::size_t n) { flat_.reserve(n * d_); }

    std::vector<Rational> point(std::size_t i) const {
        return {flat_.begin() + static_cast<std::ptrdiff_t>(i * d_),
                flat_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d_)};
    }

    bool operator==(const PointSet& o) const { return d_ == o.d_ && flat_ == o.flat_; }
    bool operator!=(const PointSet& o) const { return !(*this == o); }

    // True if both hold the same points with the same multiplicities,
    // ignoring order.
    bool same_multiset(const PointSet& o) const;

    // One line per point, columns x1_num,x1_den,...,xd_num,xd_den.
    void write_csv(std::ostream& os) const;

private:
    int d_ = 0;
    std::vector<Rational> flat_;
};

}  // namespace qmc
