#include "qmc/rational.hpp"

#include <stdexcept>

namespace qmc {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    mpq_init(q_);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    mpq_set_si(q_, num, static_cast<unsigned long>(den));
    mpq_canonicalize(q_);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
}

Rational Rational::from_string(std::string_view s) {
    const auto dot = s.find('.');
    Rational r;
    if (dot == std::string_view::npos) {
        const std::string owned(s);
        if (mpq_set_str(r.q_, owned.c_str(), 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + owned + "'");
        if (mpz_sgn(mpq_denref(r.q_)) == 0)
            throw std::invalid_argument("Rational: zero denominator in '" + owned + "'");
        mpq_canonicalize(r.q_);
        return r;
    }
    // decimal form: digits either side of the dot, no exponent here
    std::string num(s.substr(0, dot));
    const std::string_view frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string_view::npos)
        throw std::invalid_argument("Rational: cannot parse decimal '" + std::string(s) + "'");
    num += frac;  // sign stays in front, digits shift left of the scale
    if (num.empty() || num == "-" || num == "+")
        throw std::invalid_argument("Rational: cannot parse decimal '" + std::string(s) + "'");
    if (mpz_set_str(mpq_numref(r.q_), num.c_str(), 10) != 0)
        throw std::invalid_argument("Rational: cannot parse decimal '" + std::string(s) + "'");
    mpz_ui_pow_ui(mpq_denref(r.q_), 10, frac.size());
    mpq_canonicalize(r.q_);
    return r;
}

Rational Rational::dyadic(std::uint64_t num, unsigned log2_den) {
    Rational r;
    mpz_import(mpq_numref(r.q_), 1, 1, sizeof(num), 0, 0, &num);
    mpz_set_ui(mpq_denref(r.q_), 1);
    mpz_mul_2exp(mpq_denref(r.q_), mpq_denref(r.q_), log2_den);
    mpq_canonicalize(r.q_);
    return r;
}

namespace {
std::string mpz_to_string(mpz_srcptr z) {
    // mpz_get_str needs size+2 bytes
    std::string buf(mpz_sizeinbase(z, 10) + 2, '\0');
    mpz_get_str(buf.data(), 10, z);
    buf.resize(buf.find('\0'));
    return buf;
}
}  // namespace

std::string Rational::to_string() const {
    if (den_is_one()) return mpz_to_string(mpq_numref(q_));
    return mpz_to_string(mpq_numref(q_)) + "/" + mpz_to_string(mpq_denref(q_));
}

std::string Rational::num_string() const { return mpz_to_string(mpq_numref(q_)); }

std::string Rational::den_string() const { return mpz_to_string(mpq_denref(q_)); }

Rational pow(const Rational& a, unsigned e) {
    Rational r;
    mpz_pow_ui(mpq_numref(r.raw()), mpq_numref(a.raw()), e);
    mpz_pow_ui(mpq_denref(r.raw()), mpq_denref(a.raw()), e);
    // canonical in, canonical out: gcd(n,d)=1 implies gcd(n^e,d^e)=1
    return r;
}

}  // namespace qmc
