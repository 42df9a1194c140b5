#pragma once

#include <vector>

#include "qmc/rational.hpp"

namespace qmc {

// Dense univariate polynomial with exact rational coefficients,
// coeffs_[i] multiplying t^i. Only needs to be good enough for kernel
// means and piecewise-linear integrals, not a CAS.
class Polynomial {
public:
    Polynomial() = default;  // zero polynomial
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(Rational c);
    static Polynomial monomial(unsigned degree, Rational coeff);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    Rational coeff(unsigned i) const {
        return i < coeffs_.size() ? coeffs_[i] : Rational(0);
    }

    Rational evaluate(const Rational& t) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Rational& s);
    friend Polynomial operator*(Polynomial p, const Rational& s) { return p *= s; }

    // p(a t + b)
    Polynomial compose_affine(const Rational& a, const Rational& b) const;

    Polynomial antiderivative() const;  // integration constant 0
    Rational integral(const Rational& lo, const Rational& hi) const;

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    void trim();
    std::vector<Rational> coeffs_;
};

}  // namespace qmc
