#include "qmc/pointset.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace qmc {

void PointSet::append(std::vector<Rational> point) {
    if (static_cast<int>(point.size()) != d_)
        throw std::invalid_argument("PointSet::append: wrong dimension");
    for (auto& c : point) flat_.push_back(std::move(c));
}

bool PointSet::same_multiset(const PointSet& o) const {
    if (d_ != o.d_ || flat_.size() != o.flat_.size()) return false;
    auto key = [this](const PointSet& p, std::size_t i) {
        std::string k;
        for (int c = 0; c < d_; ++c) {
            k += p.at(i, c).to_string();
            k += ',';
        }
        return k;
    };
    std::vector<std::string> a, b;
    a.reserve(size());
    b.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        a.push_back(key(*this, i));
        b.push_back(key(o, i));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

void PointSet::write_csv(std::ostream& os) const {
    for (int c = 0; c < d_; ++c) {
        if (c) os << ',';
        os << 'x' << (c + 1) << "_num,x" << (c + 1) << "_den";
    }
    os << '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        for (int c = 0; c < d_; ++c) {
            if (c) os << ',';
            const auto& x = at(i, c);
            os << x.num_string() << ',' << x.den_string();
        }
        os << '\n';
    }
}

}  // namespace qmc
