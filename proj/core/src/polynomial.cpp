#include "qmc/polynomial.hpp"

#include <utility>

namespace qmc {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(Rational c) {
    Polynomial p;
    p.coeffs_.push_back(std::move(c));
    p.trim();
    return p;
}

Polynomial Polynomial::monomial(unsigned degree, Rational coeff) {
    Polynomial p;
    if (!coeff.is_zero()) {
        p.coeffs_.assign(degree + 1, Rational(0));
        p.coeffs_[degree] = std::move(coeff);
    }
    return p;
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::evaluate(const Rational& t) const {
    Rational acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    if (s.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (Rational& c : coeffs_) c *= s;
    return *this;
}

Polynomial Polynomial::compose_affine(const Rational& a, const Rational& b) const {
    // Horner: p(at+b) = (...(c_n (at+b) + c_{n-1})(at+b) + ...)
    Polynomial inner({b, a});
    Polynomial acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = acc * inner;
        acc += Polynomial::constant(coeffs_[i]);
    }
    return acc;
}

Polynomial Polynomial::antiderivative() const {
    if (coeffs_.empty()) return Polynomial();
    std::vector<Rational> c(coeffs_.size() + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        c[i + 1] = coeffs_[i] / Rational(static_cast<long>(i + 1));
    return Polynomial(std::move(c));
}

Rational Polynomial::integral(const Rational& lo, const Rational& hi) const {
    Polynomial f = antiderivative();
    return f.evaluate(hi) - f.evaluate(lo);
}

}  // namespace qmc
