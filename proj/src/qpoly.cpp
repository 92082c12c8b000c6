#include "qarctic/qpoly.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace qarctic {

QPolynomial::QPolynomial(long c) {
    if (c != 0) c_.push_back(BigInt(c));
}

QPolynomial::QPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

QPolynomial QPolynomial::monomial(int k, const BigInt& c) {
    if (k < 0) throw std::invalid_argument("negative monomial degree");
    std::vector<BigInt> v(k + 1, 0);
    v[k] = c;
    return QPolynomial(std::move(v));
}

BigInt QPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

void QPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

QPolynomial& QPolynomial::operator*=(const QPolynomial& o) {
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::vector<BigInt> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

QPolynomial QPolynomial::operator-() const {
    QPolynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

std::string QPolynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        BigInt c = c_[k];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        BigInt m = abs(c);
        if (k == 0 || m != 1) os << m;
        if (k >= 1) os << "q";
        if (k >= 2) os << "^" << k;
        first = false;
    }
    return os.str();
}

QPolynomial exact_div(const QPolynomial& a, const QPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return {};
    std::vector<BigInt> rem = a.coeffs();
    const auto& d = b.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) throw std::domain_error("inexact polynomial division");
    std::vector<BigInt> quo(da - db + 1, 0);
    for (int k = da - db; k >= 0; --k) {
        BigInt& top = rem[k + db];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), d.back().get_mpz_t()))
            throw std::domain_error("inexact polynomial division");
        BigInt f = top / d.back();
        quo[k] = f;
        for (int j = 0; j <= db; ++j) rem[k + j] -= f * d[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw std::domain_error("inexact polynomial division");
    return QPolynomial(std::move(quo));
}

QPolynomial q_binomial(long a, long b) {
    if (a < 0) throw std::invalid_argument("q_binomial: a must be nonnegative");
    if (b < 0 || b > a) return {};
    b = std::min(b, a - b);
    QPolynomial r(1);
    for (long s = 1; s <= b; ++s) {
        r *= QPolynomial::monomial(static_cast<int>(s + a - b)) - QPolynomial(1);
        r = exact_div(r, QPolynomial::monomial(static_cast<int>(s)) - QPolynomial(1));
    }
    return r;
}

Rational poly_eval(const QPolynomial& p, const Rational& q) {
    Rational acc = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + Rational(*it);
    acc.canonicalize();
    return acc;
}

double poly_eval(const QPolynomial& p, double q) {
    double acc = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + it->get_d();
    return acc;
}

QPolynomial poly_det(const PolyMatrix& m0) {
    const size_t n = m0.size();
    if (n == 0) throw std::invalid_argument("poly_det: empty matrix");
    for (const auto& row : m0)
        if (row.size() != n) throw std::invalid_argument("poly_det: matrix not square");
    PolyMatrix m = m0;
    QPolynomial prev(1);
    bool negate = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return {};
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = QPolynomial();
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

QPolynomial poly_det_cofactor(const PolyMatrix& m) {
    const size_t n = m.size();
    if (n == 1) return m[0][0];
    QPolynomial acc;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        PolyMatrix minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<QPolynomial> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        QPolynomial term = m[0][j] * poly_det_cofactor(minor);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

Rational rational_pow(const Rational& q, long k) {
    if (k < 0) {
        if (q == 0) throw std::domain_error("zero to a negative power");
        return rational_pow(Rational(q.get_den(), q.get_num()), -k);
    }
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(k));
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& s) {
    Rational r;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty() || r.set_str(t, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r0) {
    Rational r = r0;
    r.canonicalize();
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace qarctic
