#include "qmc/fixedpoint.hpp"

#include <gmp.h>

#include <cstring>
#include <stdexcept>

namespace qmc {

namespace {
using u128 = unsigned __int128;
}

Fixed Fixed::from_int(long v) {
    Fixed f;
    std::uint64_t mag = v < 0 ? -static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    f.neg_ = v < 0;
    f.mag_[4] = mag;  // integer limb sits above the 4 fractional limbs
    return f;
}

Fixed Fixed::from_rational(const Rational& x) {
    Fixed f;
    int s = x.sign();
    if (s == 0) return f;
    mpz_t t;
    mpz_init(t);
    mpz_abs(t, mpq_numref(x.raw()));
    mpz_mul_2exp(t, t, kFracBits);
    mpz_tdiv_q(t, t, mpq_denref(x.raw()));  // truncate toward zero
    if (mpz_sizeinbase(t, 2) > 320) {
        mpz_clear(t);
        throw std::overflow_error("fixed-point magnitude overflow");
    }
    std::size_t words = 0;
    mpz_export(f.mag_.data(), &words, -1, sizeof(std::uint64_t), 0, 0, t);
    mpz_clear(t);
    f.neg_ = s < 0 && !f.is_zero();
    return f;
}

Rational Fixed::to_rational() const {
    mpz_t t;
    mpz_init(t);
    mpz_import(t, kLimbs, -1, sizeof(std::uint64_t), 0, 0, mag_.data());
    Rational r;
    mpq_set_z(r.raw(), t);
    mpz_clear(t);
    mpq_div_2exp(r.raw(), r.raw(), kFracBits);
    if (neg_) mpq_neg(r.raw(), r.raw());
    return r;
}

bool Fixed::is_zero() const {
    for (std::uint64_t w : mag_)
        if (w) return false;
    return true;
}

Fixed Fixed::operator-() const {
    Fixed f = *this;
    if (!f.is_zero()) f.neg_ = !f.neg_;
    return f;
}

Fixed Fixed::abs() const {
    Fixed f = *this;
    f.neg_ = false;
    return f;
}

int Fixed::compare_mag(const std::array<std::uint64_t, kLimbs>& a,
                       const std::array<std::uint64_t, kLimbs>& b) {
    for (int i = kLimbs - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::array<std::uint64_t, Fixed::kLimbs> Fixed::add_mag(
    const std::array<std::uint64_t, kLimbs>& a, const std::array<std::uint64_t, kLimbs>& b) {
    std::array<std::uint64_t, kLimbs> r;
    u128 carry = 0;
    for (int i = 0; i < kLimbs; ++i) {
        u128 s = static_cast<u128>(a[i]) + b[i] + carry;
        r[i] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
    }
    if (carry) throw std::overflow_error("fixed-point magnitude overflow");
    return r;
}

std::array<std::uint64_t, Fixed::kLimbs> Fixed::sub_mag(
    const std::array<std::uint64_t, kLimbs>& a, const std::array<std::uint64_t, kLimbs>& b) {
    // requires a >= b
    std::array<std::uint64_t, kLimbs> r;
    std::uint64_t borrow = 0;
    for (int i = 0; i < kLimbs; ++i) {
        std::uint64_t bi = b[i] + borrow;
        std::uint64_t next = (bi < b[i]) || (a[i] < bi) ? 1 : 0;
        r[i] = a[i] - bi;
        borrow = next;
    }
    return r;
}

Fixed operator+(const Fixed& a, const Fixed& b) {
    Fixed r;
    if (a.neg_ == b.neg_) {
        r.mag_ = Fixed::add_mag(a.mag_, b.mag_);
        r.neg_ = a.neg_ && !r.is_zero();
        return r;
    }
    int c = Fixed::compare_mag(a.mag_, b.mag_);
    if (c == 0) return r;  // exact cancellation
    if (c > 0) {
        r.mag_ = Fixed::sub_mag(a.mag_, b.mag_);
        r.neg_ = a.neg_;
    } else {
        r.mag_ = Fixed::sub_mag(b.mag_, a.mag_);
        r.neg_ = b.neg_;
    }
    return r;
}

Fixed operator-(const Fixed& a, const Fixed& b) { return a + (-b); }

Fixed operator*(const Fixed& a, const Fixed& b) {
    // full 640-bit product, keep bits [256, 576)
    std::uint64_t prod[2 * Fixed::kLimbs] = {};
    for (int i = 0; i < Fixed::kLimbs; ++i) {
        u128 carry = 0;
        std::uint64_t ai = a.mag_[i];
        if (!ai) continue;
        for (int j = 0; j < Fixed::kLimbs; ++j) {
            u128 cur = static_cast<u128>(ai) * b.mag_[j] + prod[i + j] + carry;
            prod[i + j] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        prod[i + Fixed::kLimbs] = static_cast<std::uint64_t>(carry);
    }
    if (prod[9]) throw std::overflow_error("fixed-point magnitude overflow");
    Fixed r;
    std::memcpy(r.mag_.data(), prod + 4, Fixed::kLimbs * sizeof(std::uint64_t));
    r.neg_ = (a.neg_ != b.neg_) && !r.is_zero();
    return r;
}

int Fixed::compare(const Fixed& o) const {
    if (neg_ != o.neg_) return neg_ ? -1 : 1;
    int c = compare_mag(mag_, o.mag_);
    return neg_ ? -c : c;
}

}  // namespace qmc
