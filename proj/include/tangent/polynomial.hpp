#ifndef TANGENT_POLYNOMIAL_HPP
#define TANGENT_POLYNOMIAL_HPP

#include "tangent/expr.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tangent {

struct NotPolynomial : std::runtime_error {
    ExprPtr node; // first non-polynomial node encountered
    explicit NotPolynomial(ExprPtr n)
        : std::runtime_error("expression is not in the polynomial fragment"), node(std::move(n)) {}
};

// Dense polynomial over exact rationals, coefficients in ascending degree
// order. Invariant: trailing coefficient nonzero, except the zero
// polynomial which is exactly {0}.
class Polynomial {
public:
    Polynomial() : coeffs_{0} {}

    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        normalize();
    }

    static Polynomial constant(Rational c) { return Polynomial({std::move(c)}); }
    static Polynomial identity() { return Polynomial({0, 1}); }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }
    // Degree of the zero polynomial is reported as 0 alongside is_zero().
    std::size_t degree() const { return coeffs_.size() - 1; }

    Rational operator()(const Rational& a) const {
        // Horner evaluation.
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * a + *it;
        return acc;
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
        return Polynomial(std::move(c));
    }

    Polynomial operator-() const {
        std::vector<Rational> c = coeffs_;
        for (auto& x : c) x = -x;
        return Polynomial(std::move(c));
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return Polynomial();
        std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                c[i + j] += coeffs_[i] * o.coeffs_[j];
        return Polynomial(std::move(c));
    }

    Polynomial operator*(const Rational& s) const {
        std::vector<Rational> c = coeffs_;
        for (auto& x : c) x *= s;
        return Polynomial(std::move(c));
    }

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<Rational> coeffs_;

    void normalize() {
        while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.empty()) coeffs_.push_back(0);
    }
};

// Expands an Expr in the polynomial fragment (ConstRat, Var, Add, Mul,
// Neg, PowRat with nonnegative integer exponent) to coefficients.
inline Polynomial poly_from_expr(const ExprPtr& e) {
    switch (e->kind) {
    case Kind::ConstRat: return Polynomial::constant(e->value);
    case Kind::Var: return Polynomial::identity();
    case Kind::Add: {
        Polynomial p;
        for (const auto& k : e->kids) p = p + poly_from_expr(k);
        return p;
    }
    case Kind::Mul: {
        Polynomial p = Polynomial::constant(1);
        for (const auto& k : e->kids) p = p * poly_from_expr(k);
        return p;
    }
    case Kind::Neg: return -poly_from_expr(e->kids[0]);
    case Kind::PowRat: {
        auto n = to_int64(e->value);
        if (!n || *n < 0) throw NotPolynomial(e);
        Polynomial base = poly_from_expr(e->kids[0]);
        Polynomial acc = Polynomial::constant(1);
        for (std::int64_t i = 0; i < *n; ++i) acc = acc * base;
        return acc;
    }
    default:
        throw NotPolynomial(e);
    }
}

// Single exact division step p(x) - p(a) = (x - a) * q(x), via a synthetic
// division (Horner) pass. For constant p the quotient is zero.
inline Polynomial deflate(const Polynomial& p, const Rational& a) {
    const auto& c = p.coeffs();
    if (c.size() == 1) return Polynomial();
    std::vector<Rational> q(c.size() - 1, 0);
    Rational carry = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = carry * a + c[i]; // ends as p(a), discarded
    }
    return Polynomial(std::move(q));
}

// The tangency criterion: k = q(a) with q = deflate(p, a) is the unique
// slope for which (x - a)^2 divides p(x) - p(a) - k(x - a).
inline Rational tangent_slope(const Polynomial& p, const Rational& a) {
    return deflate(p, a)(a);
}

// Checks the divisibility directly: (x - a)^2 | p(x) - p(a) - k(x - a)
// iff the once-deflated quotient minus k vanishes again at a.
inline bool is_tangent(const Polynomial& p, const Rational& a, const Rational& k) {
    Polynomial q = deflate(p, a); // p(x) - p(a) = (x - a) q(x)
    // p(x) - p(a) - k(x - a) = (x - a)(q(x) - k); divisibility by the
    // second factor (x - a) means (q - k)(a) = 0.
    return q(a) - k == 0;
}

// Coefficient power rule c_n x^n -> n c_n x^{n-1}. Its contract is
// agreement with tangent_slope at every rational point.
inline Polynomial derivative_poly(const Polynomial& p) {
    const auto& c = p.coeffs();
    if (c.size() == 1) return Polynomial();
    std::vector<Rational> d(c.size() - 1, 0);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(d));
}

} // namespace tangent

#endif
