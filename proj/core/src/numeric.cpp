#include "qmc/numeric.hpp"

#include <gmp.h>

#include <stdexcept>

namespace qmc {

std::string sqrt_to_digits(const Rational& x, int digits) {
    if (x.sign() < 0) throw std::domain_error("sqrt_to_digits: negative input");
    if (digits < 1) throw std::invalid_argument("sqrt_to_digits: digits must be >= 1");

    // K0 = floor(10^digits * sqrt(x)) = isqrt(floor(10^2digits * p / q)),
    // then round up when 4*10^2digits*p > (2*K0+1)^2 * q (exact compare;
    // the tie goes down, i.e. toward zero).
    mpz_t M, t, K, u;
    mpz_inits(M, t, K, u, nullptr);
    mpz_ui_pow_ui(M, 10, static_cast<unsigned long>(digits));
    mpz_mul(t, M, M);
    mpz_mul(t, t, mpq_numref(x.raw()));
    mpz_fdiv_q(u, t, mpq_denref(x.raw()));
    mpz_sqrt(K, u);

    mpz_mul_2exp(t, t, 2);  // 4 * 10^2digits * p
    mpz_mul_2exp(u, K, 1);
    mpz_add_ui(u, u, 1);
    mpz_mul(u, u, u);
    mpz_mul(u, u, mpq_denref(x.raw()));  // (2K+1)^2 * q
    if (mpz_cmp(t, u) > 0) mpz_add_ui(K, K, 1);

    std::string s(mpz_sizeinbase(K, 10) + 2, '\0');
    mpz_get_str(s.data(), 10, K);
    s.resize(s.find('\0'));
    mpz_clears(M, t, K, u, nullptr);

    const auto d = static_cast<std::size_t>(digits);
    if (s.size() <= d) s.insert(0, d + 1 - s.size(), '0');
    s.insert(s.size() - d, ".");
    return s;
}

Rational rational_from_decimal(std::string_view s) {
    if (s.find('/') != std::string_view::npos) return Rational::from_string(s);
    auto epos = s.find_first_of("eE");
    if (epos == std::string_view::npos) return Rational::from_string(s);

    const Rational mantissa = Rational::from_string(s.substr(0, epos));
    const std::string expstr(s.substr(epos + 1));
    long exp = 0;
    try {
        exp = std::stol(expstr);
    } catch (const std::exception&) {
        throw std::invalid_argument("rational_from_decimal: bad exponent in '" + std::string(s) +
                                    "'");
    }
    Rational scale;
    mpz_ui_pow_ui(mpq_numref(scale.raw()), 10, static_cast<unsigned long>(exp < 0 ? -exp : exp));
    if (exp < 0) mpz_swap(mpq_numref(scale.raw()), mpq_denref(scale.raw()));
    return mantissa * scale;
}

std::string decimal_string(const Rational& x, int digits) {
    if (digits < 1) throw std::invalid_argument("decimal_string: digits must be >= 1");

    // K = |x| * 10^digits rounded to nearest, ties toward zero
    mpz_t M, t, K, r;
    mpz_inits(M, t, K, r, nullptr);
    mpz_ui_pow_ui(M, 10, static_cast<unsigned long>(digits));
    mpz_mul(t, M, mpq_numref(x.raw()));
    mpz_abs(t, t);
    mpz_fdiv_qr(K, r, t, mpq_denref(x.raw()));
    mpz_mul_2exp(r, r, 1);
    if (mpz_cmp(r, mpq_denref(x.raw())) > 0) mpz_add_ui(K, K, 1);

    std::string s(mpz_sizeinbase(K, 10) + 2, '\0');
    mpz_get_str(s.data(), 10, K);
    s.resize(s.find('\0'));
    mpz_clears(M, t, K, r, nullptr);

    const auto d = static_cast<std::size_t>(digits);
    if (s.size() <= d) s.insert(0, d + 1 - s.size(), '0');
    s.insert(s.size() - d, ".");
    if (x.sign() < 0 && s.find_first_not_of("0.") != std::string::npos) s.insert(0, "-");
    return s;
}

bool within_relative(const Rational& a, const Rational& b, const Rational& tol) {
    return (a - b).abs() <= tol * b.abs();
}

}  // namespace qmc
