#ifndef TANGENT_EXPR_HPP
#define TANGENT_EXPR_HPP

#include "tangent/rational.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <vector>

namespace tangent {

// Expression language: one variable x, symbolic constants e and pi,
// rational constants, n-ary Add/Mul, and the elementary function set.
// Nodes are immutable and shared; every transformation builds new trees.

enum class Kind : int {
    ConstRat = 0,
    ConstE,
    ConstPi,
    Var,
    Add,
    Mul,
    Neg,
    Div,
    PowRat,
    Exp,
    Ln,
    LogBase,
    Sin,
    Cos,
    Tan,
    Cot,
    Arcsin,
    Arccos,
    Arctan,
    Arccot,
    Abs,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    Kind kind;
    // Payload: ConstRat value, PowRat exponent, or LogBase base.
    Rational value;
    std::vector<ExprPtr> kids;

    Expr(Kind k, Rational v, std::vector<ExprPtr> ch)
        : kind(k), value(std::move(v)), kids(std::move(ch)) {}
};

struct DivisionByZeroConst : std::runtime_error {
    DivisionByZeroConst() : std::runtime_error("constant folding produced a zero denominator") {}
};

// -- constructors ----------------------------------------------------------

inline ExprPtr make(Kind k, Rational v, std::vector<ExprPtr> kids) {
    return std::make_shared<Expr>(k, std::move(v), std::move(kids));
}

inline ExprPtr num(Rational r) { return make(Kind::ConstRat, std::move(r), {}); }
inline ExprPtr num(long n) { return num(Rational(n)); }
inline ExprPtr num(long p, long q) { return num(Rational(p, q)); }
inline ExprPtr const_e() { return make(Kind::ConstE, 0, {}); }
inline ExprPtr const_pi() { return make(Kind::ConstPi, 0, {}); }
inline ExprPtr var() { return make(Kind::Var, 0, {}); }
inline ExprPtr add(std::vector<ExprPtr> kids) { return make(Kind::Add, 0, std::move(kids)); }
inline ExprPtr mul(std::vector<ExprPtr> kids) { return make(Kind::Mul, 0, std::move(kids)); }
inline ExprPtr neg(ExprPtr u) { return make(Kind::Neg, 0, {std::move(u)}); }
inline ExprPtr div(ExprPtr a, ExprPtr b) { return make(Kind::Div, 0, {std::move(a), std::move(b)}); }
inline ExprPtr pow_rat(ExprPtr base, Rational exponent) {
    return make(Kind::PowRat, std::move(exponent), {std::move(base)});
}
inline ExprPtr exp_(ExprPtr u) { return make(Kind::Exp, 0, {std::move(u)}); }
inline ExprPtr ln_(ExprPtr u) { return make(Kind::Ln, 0, {std::move(u)}); }
inline ExprPtr log_base(Rational base, ExprPtr u) {
    if (base <= 0 || base == 1)
        throw std::invalid_argument("log base must be positive and != 1");
    return make(Kind::LogBase, std::move(base), {std::move(u)});
}
inline ExprPtr sin_(ExprPtr u) { return make(Kind::Sin, 0, {std::move(u)}); }
inline ExprPtr cos_(ExprPtr u) { return make(Kind::Cos, 0, {std::move(u)}); }
inline ExprPtr tan_(ExprPtr u) { return make(Kind::Tan, 0, {std::move(u)}); }
inline ExprPtr cot_(ExprPtr u) { return make(Kind::Cot, 0, {std::move(u)}); }
inline ExprPtr arcsin_(ExprPtr u) { return make(Kind::Arcsin, 0, {std::move(u)}); }
inline ExprPtr arccos_(ExprPtr u) { return make(Kind::Arccos, 0, {std::move(u)}); }
inline ExprPtr arctan_(ExprPtr u) { return make(Kind::Arctan, 0, {std::move(u)}); }
inline ExprPtr arccot_(ExprPtr u) { return make(Kind::Arccot, 0, {std::move(u)}); }
inline ExprPtr abs_(ExprPtr u) { return make(Kind::Abs, 0, {std::move(u)}); }

inline bool is_const_rat(const ExprPtr& e, const Rational& v) {
    return e->kind == Kind::ConstRat && e->value == v;
}

inline bool contains_var(const ExprPtr& e) {
    if (e->kind == Kind::Var) return true;
    for (const auto& k : e->kids)
        if (contains_var(k)) return true;
    return false;
}

// -- canonical total order -------------------------------------------------
// Kind tag index, then children lexicographically, then the Rational payload.

inline int compare(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    std::size_t n = std::min(a->kids.size(), b->kids.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(a->kids[i], b->kids[i]); c != 0) return c;
    if (a->kids.size() != b->kids.size())
        return a->kids.size() < b->kids.size() ? -1 : 1;
    if (a->value != b->value) return a->value < b->value ? -1 : 1;
    return 0;
}

inline bool struct_equal(const ExprPtr& a, const ExprPtr& b) { return compare(a, b) == 0; }

// -- canonicalization ------------------------------------------------------
// Flattens Add/Add and Mul/Mul nesting, folds exact rational arithmetic,
// strips identities, sorts n-ary children, collapses length-1 lists.
// Idempotent by construction (bottom-up, each local rule is stable on its
// own output).

inline ExprPtr canonicalize(const ExprPtr& e);

namespace detail {

// Folding bound for integer powers of constants; larger exponents stay
// symbolic to keep outputs readable.
inline constexpr std::int64_t kFoldPowBound = 64;

// Canonical power construction: strips exponents 0 and 1, folds small
// integer powers of rational constants.
inline ExprPtr canon_pow(const ExprPtr& base, const Rational& r) {
    if (r == 0) return num(1);
    if (r == 1) return base;
    // Powers of e are Exp nodes; keeps the grammar round trip unambiguous.
    if (base->kind == Kind::ConstE) return exp_(num(r));
    if (base->kind == Kind::ConstRat && is_integer(r)) {
        auto n = to_int64(r);
        if (n && *n >= -kFoldPowBound && *n <= kFoldPowBound) {
            if (base->value == 0 && *n < 0) throw DivisionByZeroConst();
            return num(rat_pow(base->value, *n));
        }
    }
    return pow_rat(base, r);
}

inline ExprPtr canon_add(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> flat;
    Rational c = 0;
    for (auto& k : kids) {
        if (k->kind == Kind::Add) {
            for (const auto& g : k->kids) {
                if (g->kind == Kind::ConstRat) c += g->value;
                else flat.push_back(g);
            }
        } else if (k->kind == Kind::ConstRat) {
            c += k->value;
        } else {
            flat.push_back(std::move(k));
        }
    }
    if (c != 0 || flat.empty()) flat.push_back(num(c));
    std::sort(flat.begin(), flat.end(),
              [](const ExprPtr& a, const ExprPtr& b) { return compare(a, b) < 0; });
    if (flat.size() == 1) return flat[0];
    return add(std::move(flat));
}

// N-ary product normal form: rational factors and unary signs fold into a
// single leading constant, and factors sharing a base merge by summing
// exponents (u * u -> u^2, x^(1/2) * x^(1/2) -> x).
inline ExprPtr canon_mul(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> flat;
    Rational c = 1;
    auto absorb = [&](const ExprPtr& g) {
        if (g->kind == Kind::ConstRat) c *= g->value;
        else if (g->kind == Kind::Neg) {
            c = -c;
            flat.push_back(g->kids[0]);
        } else flat.push_back(g);
    };
    for (auto& k : kids) {
        if (k->kind == Kind::Mul)
            for (const auto& g : k->kids) absorb(g);
        else
            absorb(k);
    }
    if (c == 0) return num(0);

    // Group factors by base, summing exponents.
    std::vector<std::pair<ExprPtr, Rational>> groups;
    for (auto& f : flat) {
        ExprPtr base = f;
        Rational e = 1;
        if (f->kind == Kind::PowRat) {
            base = f->kids[0];
            e = f->value;
        }
        bool merged = false;
        for (auto& [b, acc] : groups) {
            if (struct_equal(b, base)) {
                acc += e;
                merged = true;
                break;
            }
        }
        if (!merged) groups.emplace_back(base, e);
    }
    std::vector<ExprPtr> rebuilt;
    for (auto& [b, e] : groups) {
        ExprPtr f = canon_pow(b, e);
        if (f->kind == Kind::ConstRat) c *= f->value;
        else rebuilt.push_back(f);
    }
    if (c == 0) return num(0);
    if (c != 1 || rebuilt.empty()) rebuilt.push_back(num(c));
    std::sort(rebuilt.begin(), rebuilt.end(),
              [](const ExprPtr& a, const ExprPtr& b) { return compare(a, b) < 0; });
    if (rebuilt.size() == 1) return rebuilt[0];
    return mul(std::move(rebuilt));
}

} // namespace detail

inline ExprPtr canonicalize(const ExprPtr& e) {
    std::vector<ExprPtr> kids;
    kids.reserve(e->kids.size());
    for (const auto& k : e->kids) kids.push_back(canonicalize(k));

    switch (e->kind) {
    case Kind::ConstRat:
    case Kind::ConstE:
    case Kind::ConstPi:
    case Kind::Var:
        return e;
    case Kind::Add:
        return detail::canon_add(std::move(kids));
    case Kind::Mul:
        return detail::canon_mul(std::move(kids));
    case Kind::Neg: {
        const ExprPtr& u = kids[0];
        if (u->kind == Kind::ConstRat) return num(-u->value);
        if (u->kind == Kind::Neg) return u->kids[0];
        // The sign of a product lives in its constant factor.
        if (u->kind == Kind::Mul) return detail::canon_mul({u, num(-1)});
        return neg(u);
    }
    case Kind::Div: {
        const ExprPtr& a = kids[0];
        const ExprPtr& b = kids[1];
        if (b->kind == Kind::ConstRat) {
            if (b->value == 0) throw DivisionByZeroConst();
            if (a->kind == Kind::ConstRat) return num(a->value / b->value);
            if (b->value == 1) return a;
        }
        if (a->kind == Kind::ConstRat && a->value == 0) return num(0);
        return div(a, b);
    }
    case Kind::PowRat:
        return detail::canon_pow(kids[0], e->value);
    case Kind::Abs: {
        const ExprPtr& u = kids[0];
        if (u->kind == Kind::ConstRat) return num(u->value < 0 ? -u->value : u->value);
        if (u->kind == Kind::Neg) return abs_(u->kids[0]);
        return abs_(u);
    }
    default:
        return make(e->kind, e->value, std::move(kids));
    }
}

} // namespace tangent

#endif
