#pragma once

#include <array>
#include <cstdint>

#include "qmc/rational.hpp"

namespace qmc {

// 320-bit sign-magnitude fixed point with 256 fractional bits.
//
// Addition and subtraction are exact. Multiplication truncates the
// 640-bit product toward zero, so one multiply contributes an absolute
// error below 2^-256 (~ 10^-77) on top of scaled input errors. Values
// must stay below 2^63 in magnitude; exceeding that throws.
//
// A kernel double sum over N <= 2^20 points in dimension d <= 8 performs
// fewer than 2^46 multiplies on operands of magnitude < 2^6, so the
// accumulated error stays below 2^46 * 2^6 * 2^-256 < 10^-60. That is the
// bound the sixty-digit mode advertises.
class Fixed {
public:
    static constexpr int kFracBits = 256;
    static constexpr int kLimbs = 5;

    Fixed() : neg_(false), mag_{} {}

    static Fixed from_int(long v);
    // truncated toward zero to a multiple of 2^-256 (exact for dyadic
    // rationals with at most 256 fractional bits)
    static Fixed from_rational(const Rational& x);
    Rational to_rational() const;

    Fixed operator-() const;
    Fixed abs() const;
    friend Fixed operator+(const Fixed& a, const Fixed& b);
    friend Fixed operator-(const Fixed& a, const Fixed& b);
    friend Fixed operator*(const Fixed& a, const Fixed& b);
    Fixed& operator+=(const Fixed& o) { return *this = *this + o; }
    Fixed& operator-=(const Fixed& o) { return *this = *this - o; }
    Fixed& operator*=(const Fixed& o) { return *this = *this * o; }

    // -1, 0, +1 by signed value
    int compare(const Fixed& o) const;
    friend bool operator==(const Fixed& a, const Fixed& b) { return a.compare(b) == 0; }
    friend bool operator!=(const Fixed& a, const Fixed& b) { return a.compare(b) != 0; }
    friend bool operator<(const Fixed& a, const Fixed& b) { return a.compare(b) < 0; }
    friend bool operator>(const Fixed& a, const Fixed& b) { return a.compare(b) > 0; }
    friend bool operator<=(const Fixed& a, const Fixed& b) { return a.compare(b) <= 0; }
    friend bool operator>=(const Fixed& a, const Fixed& b) { return a.compare(b) >= 0; }

    bool is_zero() const;
    bool is_negative() const { return neg_; }

private:
    static int compare_mag(const std::array<std::uint64_t, kLimbs>& a,
                           const std::array<std::uint64_t, kLimbs>& b);
    static std::array<std::uint64_t, kLimbs> add_mag(const std::array<std::uint64_t, kLimbs>& a,
                                                     const std::array<std::uint64_t, kLimbs>& b);
    static std::array<std::uint64_t, kLimbs> sub_mag(const std::array<std::uint64_t, kLimbs>& a,
                                                     const std::array<std::uint64_t, kLimbs>& b);

    bool neg_;  // never set on zero
    std::array<std::uint64_t, kLimbs> mag_;  // little endian, value = mag / 2^256
};

}  // namespace qmc
