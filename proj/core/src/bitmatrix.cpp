#include "qmc/bitmatrix.hpp"

#include <bit>
#include <stdexcept>

namespace qmc {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("BitMatrix: empty dimensions");
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
    auto& w = words_[r * wpr_ + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    w = v ? (w | mask) : (w & ~mask);
}

std::uint64_t BitMatrix::row_word(std::size_t r) const {
    if (cols_ > 64) throw std::logic_error("BitMatrix::row_word: more than 64 columns");
    return words_[r * wpr_];
}

void BitMatrix::set_row_word(std::size_t r, std::uint64_t bits) {
    if (cols_ > 64) throw std::logic_error("BitMatrix::set_row_word: more than 64 columns");
    if (cols_ < 64) bits &= (std::uint64_t{1} << cols_) - 1;
    words_[r * wpr_] = bits;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::reversal(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, n - 1 - i, true);
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) throw std::invalid_argument("BitMatrix::from_strings: no rows");
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            throw std::invalid_argument("BitMatrix::from_strings: ragged rows");
        for (std::size_t c = 0; c < m.cols_; ++c) {
            if (rows[r][c] != '0' && rows[r][c] != '1')
                throw std::invalid_argument("BitMatrix::from_strings: invalid character");
            m.set(r, c, rows[r][c] == '1');
        }
    }
    return m;
}

bool BitMatrix::operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && words_ == o.words_;
}

std::size_t rank_gf2(const BitMatrix& m) {
    std::vector<std::uint64_t> work(m.words_);
    const std::size_t wpr = m.wpr_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols_ && rank < m.rows_; ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t mask = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < m.rows_ && !(work[pivot * wpr + w] & mask)) ++pivot;
        if (pivot == m.rows_) continue;
        for (std::size_t k = 0; k < wpr; ++k)
            std::swap(work[rank * wpr + k], work[pivot * wpr + k]);
        for (std::size_t r = rank + 1; r < m.rows_; ++r) {
            if (work[r * wpr + w] & mask)
                for (std::size_t k = w; k < wpr; ++k) work[r * wpr + k] ^= work[rank * wpr + k];
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_gf2(const std::vector<std::uint64_t>& rows, std::size_t cols) {
    if (rows.empty()) return 0;
    if (cols == 0 || cols > 64) throw std::invalid_argument("rank_gf2: need 1..64 columns");
    Gf2Basis basis;
    for (auto r : rows) basis.push(r);
    return basis.size();
}

bool Gf2Basis::push(std::uint64_t row) {
    while (row) {
        const int lead = 63 - std::countl_zero(row);
        if (!basis_[lead]) {
            basis_[lead] = row;
            pivots_.push_back(lead);
            return true;
        }
        row ^= basis_[lead];
    }
    return false;
}

void Gf2Basis::pop() {
    basis_[pivots_.back()] = 0;
    pivots_.pop_back();
}

}  // namespace qmc
