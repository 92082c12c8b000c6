#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qarctic {

using BigInt = mpz_class;
using Rational = mpq_class;

// Dense polynomial in q with integer coefficients; coeffs[k] multiplies q^k.
class QPolynomial {
public:
    QPolynomial() = default;
    QPolynomial(long c);
    explicit QPolynomial(std::vector<BigInt> coeffs);

    static QPolynomial monomial(int k, const BigInt& c = 1);

    const std::vector<BigInt>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    BigInt coeff(int k) const;

    QPolynomial& operator+=(const QPolynomial& o);
    QPolynomial& operator-=(const QPolynomial& o);
    QPolynomial& operator*=(const QPolynomial& o);

    friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
    friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
    friend QPolynomial operator*(QPolynomial a, const QPolynomial& b) { return a *= b; }
    QPolynomial operator-() const;
    friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    void trim();
    std::vector<BigInt> c_;
};

// Exact quotient a/b; throws std::domain_error if b does not divide a.
QPolynomial exact_div(const QPolynomial& a, const QPolynomial& b);

QPolynomial q_binomial(long a, long b);

Rational poly_eval(const QPolynomial& p, const Rational& q);
double poly_eval(const QPolynomial& p, double q);

using PolyMatrix = std::vector<std::vector<QPolynomial>>;

QPolynomial poly_det(const PolyMatrix& m);
QPolynomial poly_det_cofactor(const PolyMatrix& m);

Rational rational_pow(const Rational& q, long k);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

}  // namespace qarctic
