#include "qmc/pointsets.hpp"

#include <bit>

#include "qmc/errors.hpp"
#include "qmc/net.hpp"
#include "qmc/rng.hpp"

namespace qmc {

Rational van_der_corput(std::uint64_t k, int n) {
    if (n < 1 || n > 63) throw ConfigError("van_der_corput: n out of range");
    if (k >> n) throw ConfigError("van_der_corput: k has more than n digits");
    std::uint64_t rev = 0;
    for (int j = 0; j < n; ++j)
        if ((k >> j) & 1) rev |= std::uint64_t{1} << (n - 1 - j);
    return Rational::dyadic(rev, static_cast<unsigned>(n));
}

PointSet halton2d(int n) {
    if (n < 1 || n > 26) throw ConfigError("halton2d: n out of range");
    const std::uint64_t N = std::uint64_t{1} << n;
    PointSet out(2);
    out.reserve(N);
    for (std::uint64_t k = 0; k < N; ++k)
        out.append({Rational::dyadic(k, static_cast<unsigned>(n)), van_der_corput(k, n)});
    return out;
}

std::uint64_t fibonacci(int m) {
    if (m < 1 || m > 92) throw ConfigError("fibonacci: m out of range");
    std::uint64_t a = 1, b = 1;  // F_1, F_2
    for (int i = 3; i <= m; ++i) {
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return b;
}

PointSet fibonacci_lattice(int m) {
    if (m < 2 || m > 50) throw ConfigError("fibonacci_lattice: m out of range");
    const std::uint64_t N = fibonacci(m);
    const std::uint64_t gen = fibonacci(m - 1);
    PointSet out(2);
    out.reserve(N);
    for (std::uint64_t k = 0; k < N; ++k) {
        out.append({Rational(static_cast<long>(k), static_cast<long>(N)),
                    Rational(static_cast<long>((k * gen) % N), static_cast<long>(N))});
    }
    return out;
}

Rational zaremba_sigma(int n) {
    if (n < 1 || n > 63) throw ConfigError("zaremba_sigma: n out of range");
    std::uint64_t bits = 0;
    for (int pos = 1; pos <= n; pos += 2) bits |= std::uint64_t{1} << (n - pos);
    return Rational::dyadic(bits, static_cast<unsigned>(n));
}

namespace {

Rational xor_dyadic(const Rational& x, const Rational& sigma, int n) {
    // both must have at most n binary digits
    const std::uint64_t scale = std::uint64_t{1} << n;
    const std::uint64_t a = scaled_floor_pow2(x, n);
    const std::uint64_t b = scaled_floor_pow2(sigma, n);
    if (Rational::dyadic(a, static_cast<unsigned>(n)) != x)
        throw ConfigError("digital shift: coordinate has more than n digits");
    if (Rational::dyadic(b, static_cast<unsigned>(n)) != sigma)
        throw ConfigError("digital shift: shift has more than n digits");
    if (a >= scale || b >= scale) throw ConfigError("digital shift: value outside [0,1)");
    return Rational::dyadic(a ^ b, static_cast<unsigned>(n));
}

}  // namespace

PointSet zaremba_shift(const PointSet& p) {
    if (p.dim() != 2) throw ConfigError("zaremba_shift: expects a 2-dimensional set");
    if (p.size() < 2 || !std::has_single_bit(p.size()))
        throw ConfigError("zaremba_shift: point count must be 2^n");
    const int n = std::countr_zero(p.size());
    const Rational sigma = zaremba_sigma(n);
    PointSet out(2);
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out.append({p.at(i, 0), xor_dyadic(p.at(i, 1), sigma, n)});
    return out;
}

PointSet apply_digital_shift(const PointSet& p, const DigitalShift& s) {
    if (p.dim() != s.dim()) throw ConfigError("apply_digital_shift: dimension mismatch");
    PointSet out(p.dim());
    out.reserve(p.size());
    std::vector<Rational> pt(p.dim());
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (int c = 0; c < p.dim(); ++c) pt[c] = xor_dyadic(p.at(i, c), s.sigma[c], s.n);
        out.append(pt);
    }
    return out;
}

DigitalShift random_shift(int d, int n, std::uint64_t seed) {
    if (d < 1) throw ConfigError("random_shift: d must be >= 1");
    if (n < 1 || n > 63) throw ConfigError("random_shift: n out of range");
    DigitalShift s;
    s.n = n;
    SplitMix64 rng(seed);
    for (int c = 0; c < d; ++c)
        s.sigma.push_back(Rational::dyadic(rng.next() >> (64 - n), static_cast<unsigned>(n)));
    return s;
}

}  // namespace qmc
