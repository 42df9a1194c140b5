#pragma once

#include <gmp.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace qmc {

// Arbitrary-precision rational, always canonical: lowest terms, positive
// denominator. All arithmetic is exact; nothing here ever rounds.
class Rational {
public:
    Rational() noexcept { mpq_init(q_); }
    Rational(long n) { // NOLINT: implicit by design, mirrors integer literals
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(long num, long den);

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    // Accepts "p", "p/q" or a plain decimal like "-12.0625" (exact).
    static Rational from_string(std::string_view s);

    // num / 2^log2_den with arbitrary log2_den.
    static Rational dyadic(std::uint64_t num, unsigned log2_den);

    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const {
        Rational r;
        mpq_neg(r.q_, q_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.q_, b.q_) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return mpq_cmp(a.q_, b.q_) < 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    Rational abs() const {
        Rational r;
        mpq_abs(r.q_, q_);
        return r;
    }

    std::string to_string() const;   // "p/q", or "p" when q == 1
    std::string num_string() const;
    std::string den_string() const;
    bool den_is_one() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    // Report-only helper; never used inside exact computations.
    double to_double() const { return mpq_get_d(q_); }

    // Raw GMP access for performance-sensitive internals.
    mpq_srcptr raw() const { return q_; }
    mpq_ptr raw() { return q_; }

private:
    mpq_t q_;
};

// a^e with e >= 0, exact.
Rational pow(const Rational& a, unsigned e);

}  // namespace qmc
