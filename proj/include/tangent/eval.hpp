#ifndef TANGENT_EVAL_HPP
#define TANGENT_EVAL_HPP

#include "tangent/expr.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace tangent {

struct NotExactlyEvaluable : std::runtime_error {
    explicit NotExactlyEvaluable(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("denominator vanishes at the evaluation point") {}
};

// Floating evaluation left the real domain; carries the offending node and
// the argument value at which it failed.
struct DomainError : std::runtime_error {
    ExprPtr where;
    double at;
    DomainError(std::string what, ExprPtr w, double a)
        : std::runtime_error(std::move(what)), where(std::move(w)), at(a) {}
};

struct EmptyCommonDomain : std::runtime_error {
    EmptyCommonDomain() : std::runtime_error("no sample point lies in both domains") {}
};

// Exact evaluation over the rational fragment: ConstRat, Var, Add, Mul,
// Neg, Div, PowRat with integer exponent, Abs.
inline Rational eval_exact(const ExprPtr& e, const Rational& a) {
    switch (e->kind) {
    case Kind::ConstRat: return e->value;
    case Kind::Var: return a;
    case Kind::Add: {
        Rational s = 0;
        for (const auto& k : e->kids) s += eval_exact(k, a);
        return s;
    }
    case Kind::Mul: {
        Rational p = 1;
        for (const auto& k : e->kids) p *= eval_exact(k, a);
        return p;
    }
    case Kind::Neg: return -eval_exact(e->kids[0], a);
    case Kind::Div: {
        Rational d = eval_exact(e->kids[1], a);
        if (d == 0) throw DivisionByZero();
        return eval_exact(e->kids[0], a) / d;
    }
    case Kind::PowRat: {
        auto n = to_int64(e->value);
        if (!n) throw NotExactlyEvaluable("non-integer exponent is not exactly evaluable");
        Rational b = eval_exact(e->kids[0], a);
        if (b == 0 && *n < 0) throw DivisionByZero();
        return rat_pow(b, *n);
    }
    case Kind::Abs: {
        Rational v = eval_exact(e->kids[0], a);
        return v < 0 ? -v : v;
    }
    default:
        throw NotExactlyEvaluable("transcendental node is not exactly evaluable");
    }
}

inline double eval_float(const ExprPtr& e, double a) {
    switch (e->kind) {
    case Kind::ConstRat: return to_double(e->value);
    case Kind::ConstE: return std::numbers::e;
    case Kind::ConstPi: return std::numbers::pi;
    case Kind::Var: return a;
    case Kind::Add: {
        double s = 0;
        for (const auto& k : e->kids) s += eval_float(k, a);
        return s;
    }
    case Kind::Mul: {
        double p = 1;
        for (const auto& k : e->kids) p *= eval_float(k, a);
        return p;
    }
    case Kind::Neg: return -eval_float(e->kids[0], a);
    case Kind::Div: {
        double d = eval_float(e->kids[1], a);
        if (d == 0) throw DomainError("division by zero", e, a);
        return eval_float(e->kids[0], a) / d;
    }
    case Kind::PowRat: {
        double b = eval_float(e->kids[0], a);
        double x = to_double(e->value);
        if (is_integer(e->value)) {
            if (b == 0 && e->value < 0) throw DomainError("zero base, negative exponent", e, a);
            return std::pow(b, x);
        }
        if (b > 0) return std::pow(b, x);
        if (b == 0) {
            if (e->value > 0) return 0.0;
            throw DomainError("zero base, negative exponent", e, a);
        }
        // Negative base: real only when the reduced denominator is odd
        // (odd root); the sign follows the numerator's parity.
        if (rat_den(e->value) % 2 == 1) {
            double mag = std::pow(-b, x);
            return rat_num(e->value) % 2 == 0 ? mag : -mag;
        }
        throw DomainError("negative base with even-root exponent", e, a);
    }
    case Kind::Exp: return std::exp(eval_float(e->kids[0], a));
    case Kind::Ln: {
        double v = eval_float(e->kids[0], a);
        if (v <= 0) throw DomainError("log of non-positive value", e, v);
        return std::log(v);
    }
    case Kind::LogBase: {
        double v = eval_float(e->kids[0], a);
        if (v <= 0) throw DomainError("log of non-positive value", e, v);
        return std::log(v) / std::log(to_double(e->value));
    }
    case Kind::Sin: return std::sin(eval_float(e->kids[0], a));
    case Kind::Cos: return std::cos(eval_float(e->kids[0], a));
    case Kind::Tan: {
        double v = eval_float(e->kids[0], a);
        double c = std::cos(v);
        if (c == 0) throw DomainError("tan at odd multiple of pi/2", e, v);
        return std::sin(v) / c;
    }
    case Kind::Cot: {
        double v = eval_float(e->kids[0], a);
        double s = std::sin(v);
        if (s == 0) throw DomainError("cot at multiple of pi", e, v);
        return std::cos(v) / s;
    }
    case Kind::Arcsin: {
        double v = eval_float(e->kids[0], a);
        if (v < -1 || v > 1) throw DomainError("arcsin argument outside [-1, 1]", e, v);
        return std::asin(v);
    }
    case Kind::Arccos: {
        double v = eval_float(e->kids[0], a);
        if (v < -1 || v > 1) throw DomainError("arccos argument outside [-1, 1]", e, v);
        return std::acos(v);
    }
    case Kind::Arctan: return std::atan(eval_float(e->kids[0], a));
    case Kind::Arccot: {
        // Principal branch (0, pi).
        double v = eval_float(e->kids[0], a);
        return std::numbers::pi / 2 - std::atan(v);
    }
    case Kind::Abs: return std::fabs(eval_float(e->kids[0], a));
    }
    throw std::logic_error("eval_float: unhandled node kind");
}

inline bool in_domain(const ExprPtr& e, double a) {
    try {
        double v = eval_float(e, a);
        return std::isfinite(v);
    } catch (const DomainError&) {
        return false;
    }
}

// Process-wide default seed for equivalence sampling; the CLI lets
// TANGENT_RULE_SEED override it.
inline std::uint64_t& default_sample_seed() {
    static std::uint64_t seed = 0x7a17c3u;
    return seed;
}

// Structural equality after canonicalization, falling back to agreement
// at `samples` seeded uniform points in [-4, 4] restricted to the common
// domain. A point where exactly one side is undefined decides "false".
inline bool equiv(const ExprPtr& e1, const ExprPtr& e2, int samples = 20,
                  double rel_tol = 1e-9) {
    if (samples < 1) throw std::invalid_argument("equiv: samples must be >= 1");
    ExprPtr c1 = canonicalize(e1);
    ExprPtr c2 = canonicalize(e2);
    if (struct_equal(c1, c2)) return true;

    std::mt19937_64 rng(default_sample_seed());
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    int compared = 0;
    const int max_draws = 10000;
    for (int i = 0; i < max_draws && compared < samples; ++i) {
        double x = dist(rng);
        bool ok1 = in_domain(c1, x);
        bool ok2 = in_domain(c2, x);
        if (ok1 != ok2) return false;
        if (!ok1) continue;
        double v1 = eval_float(c1, x);
        double v2 = eval_float(c2, x);
        double scale = std::max({1.0, std::fabs(v1), std::fabs(v2)});
        if (std::fabs(v1 - v2) > rel_tol * scale) return false;
        ++compared;
    }
    if (compared == 0) throw EmptyCommonDomain();
    return true;
}

} // namespace tangent

#endif
