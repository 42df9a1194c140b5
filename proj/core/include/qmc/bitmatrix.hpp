#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qmc {

// Dense bit matrix over GF(2), row-major, 64-bit packed.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v);

    // Row as a machine word, lowest bit = column 0. Requires cols <= 64.
    std::uint64_t row_word(std::size_t r) const;
    void set_row_word(std::size_t r, std::uint64_t bits);

    static BitMatrix identity(std::size_t n);
    // Anti-diagonal permutation: maps digit j to digit n+1-j.
    static BitMatrix reversal(std::size_t n);
    // One row per line, characters '0'/'1', e.g. {"10", "01"}.
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    bool operator==(const BitMatrix& o) const;
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> words_;
    friend std::size_t rank_gf2(const BitMatrix&);
};

// GF(2) rank by bit-packed Gaussian elimination. Rank of an empty or
// all-zero matrix is 0.
std::size_t rank_gf2(const BitMatrix& m);

// Convenience overload: one word per row, `cols` significant bits.
std::size_t rank_gf2(const std::vector<std::uint64_t>& rows, std::size_t cols);

// Incremental GF(2) independence tracker for rows of <= 64 bits, with
// stack-like rollback so a search can push/pop candidate rows cheaply.
class Gf2Basis {
public:
    // True if `row` is independent of the current basis; if so it is added.
    // A zero row is always dependent.
    bool push(std::uint64_t row);
    void pop();  // undoes the most recent successful push
    std::size_t size() const { return pivots_.size(); }

private:
    std::uint64_t basis_[64] = {};
    std::vector<int> pivots_;
};

}  // namespace qmc
