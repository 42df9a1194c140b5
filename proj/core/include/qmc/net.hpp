#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmc/bitmatrix.hpp"
#include "qmc/pointset.hpp"

namespace qmc {

// Generator matrices of a digital net over GF(2): d matrices of shape
// (alpha*n) x n. Row j of matrix i produces digit j of coordinate i.
struct GeneratorMatrixSet {
    int d = 0;
    int n = 0;
    int alpha = 1;
    std::vector<BitMatrix> matrices;

    void validate() const;  // throws ConfigError on shape violations
};

// Text format: first non-comment line "d n alpha"; then per matrix exactly
// alpha*n lines of n characters from {0,1} (row 1 = most significant digit).
// '#' comments and blank lines are allowed between matrices only.
GeneratorMatrixSet parse_matrix_file(std::istream& in);
GeneratorMatrixSet load_matrix_file(const std::string& path);
void write_matrix_file(std::ostream& out, const GeneratorMatrixSet& g,
                       const std::string& comment = "");

// All 2^n net points in generation order k = 0..2^n-1. Coordinate i of
// point k is sum_j (C_i k-digits)_j 2^-j, a dyadic rational with alpha*n
// digits.
PointSet net_points(const GeneratorMatrixSet& g);

// Digit interlacing: alpha consecutive input coordinates merge into one
// output coordinate, digit l of input stream s landing at position
// (l-1)*alpha + s. Column count must be divisible by alpha.
PointSet interlace(const PointSet& p, int alpha);

// Matrix-level version of the same operation: d*alpha square matrices (order
// 1) stack into d matrices of shape (alpha*n) x n generating the interlaced
// net directly.
GeneratorMatrixSet interlace_matrices(const GeneratorMatrixSet& base, int alpha);

// floor(2^n x) / 2^n per coordinate.
Rational truncate_digits(const Rational& x, int n);
PointSet truncate_digits(const PointSet& p, int n);

// Hammersley-style lift: truncates the 2^n points of a (d-1)-dimensional
// sequence prefix to n digits and appends k/2^n as the last coordinate.
PointSet sequence_to_net(const PointSet& p, int n);

// Smallest t in {0..alpha*n} such that every admissible descending index
// selection of total weight <= alpha*n - t picks linearly independent rows.
// Exhaustive search over canonical reduced selections; refuses (BudgetError)
// when alpha*n > 24 or the search space explodes.
int minimal_t(const GeneratorMatrixSet& g);

// t value guaranteed by interlacing a (t_tilde, n, alpha*d)-net:
// alpha*t_tilde + d*alpha*(alpha-1)/2.
int interlaced_t_bound(int t_tilde, int alpha, int d);

// floor(2^n x) for x in [0,1], as a machine word; requires n <= 63.
std::uint64_t scaled_floor_pow2(const Rational& x, int n);

}  // namespace qmc
