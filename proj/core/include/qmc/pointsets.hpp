#pragma once

#include <cstdint>
#include <vector>

#include "qmc/pointset.hpp"

namespace qmc {

// Radical inverse in base 2 with n digits: bit j of k (from the least
// significant) becomes digit j+1 after the binary point.
Rational van_der_corput(std::uint64_t k, int n);

// {(k/2^n, vdc(k, n)) : k = 0..2^n-1} in index order.
PointSet halton2d(int n);

// F_m with F_1 = F_2 = 1; m <= 92 (fits 64 bits).
std::uint64_t fibonacci(int m);

// Fibonacci lattice: N = F_m points (k/N, {k F_{m-1} / N}).
PointSet fibonacci_lattice(int m);

// Per-coordinate digit-wise XOR shift on the first n binary digits.
struct DigitalShift {
    int n = 0;
    std::vector<Rational> sigma;  // one dyadic shift per coordinate

    int dim() const { return static_cast<int>(sigma.size()); }
};

// sigma = 0.1010...: ones at the odd digit positions, n digits total.
Rational zaremba_sigma(int n);

// Halton set with the second coordinate shifted by zaremba_sigma. P must
// come from halton2d (2^n points, dyadic with <= n digits).
PointSet zaremba_shift(const PointSet& p);

PointSet apply_digital_shift(const PointSet& p, const DigitalShift& s);

// Seeded uniform digital shift: coordinate c takes the top n bits of the
// (c+1)-th splitmix64 output for this seed. Fully reproducible.
DigitalShift random_shift(int d, int n, std::uint64_t seed);

}  // namespace qmc
