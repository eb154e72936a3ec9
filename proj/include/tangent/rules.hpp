#ifndef TANGENT_RULES_HPP
#define TANGENT_RULES_HPP

#include "tangent/eval.hpp"
#include "tangent/expr.hpp"
#include "tangent/parser.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tangent {

// The rule catalogue. Every trace step cites the section of the tangent
// construction that justifies it; ProductRule and Linearity carry the
// prior-work closure tag instead of a chapter citation.
enum class RuleId {
    PolyCriterion,
    RootInverse,
    RationalPower,
    CompositePower,
    ExpTangency,
    GeneralExponential,
    NaturalLog,
    LogBaseRule,
    InverseFunction,
    UnitCircleSin,
    UnitCircleCos,
    QuotientRule,
    ProductRule,
    Linearity,
    ChainRule,
    InverseTrigArcsin,
    InverseTrigArccos,
    InverseTrigArctan,
    InverseTrigArccot,
    AbsRule,
};

inline const char* rule_name(RuleId r) {
    switch (r) {
    case RuleId::PolyCriterion: return "PolyCriterion";
    case RuleId::RootInverse: return "RootInverse";
    case RuleId::RationalPower: return "RationalPower";
    case RuleId::CompositePower: return "CompositePower";
    case RuleId::ExpTangency: return "ExpTangency";
    case RuleId::GeneralExponential: return "GeneralExponential";
    case RuleId::NaturalLog: return "NaturalLog";
    case RuleId::LogBaseRule: return "LogBaseRule";
    case RuleId::InverseFunction: return "InverseFunction";
    case RuleId::UnitCircleSin: return "UnitCircleSin";
    case RuleId::UnitCircleCos: return "UnitCircleCos";
    case RuleId::QuotientRule: return "QuotientRule";
    case RuleId::ProductRule: return "ProductRule";
    case RuleId::Linearity: return "Linearity";
    case RuleId::ChainRule: return "ChainRule";
    case RuleId::InverseTrigArcsin: return "InverseTrig(arcsin)";
    case RuleId::InverseTrigArccos: return "InverseTrig(arccos)";
    case RuleId::InverseTrigArctan: return "InverseTrig(arctan)";
    case RuleId::InverseTrigArccot: return "InverseTrig(arccot)";
    case RuleId::AbsRule: return "AbsRule";
    }
    return "?";
}

inline const char* rule_citation(RuleId r) {
    switch (r) {
    case RuleId::PolyCriterion: return "Introduction: \"divisible by (x - a)^2\"";
    case RuleId::RootInverse: return "Sec. 1.3: \"corresponding points are reciprocal\"";
    case RuleId::RationalPower: return "Sec. 1.7: \"(x^(p/q))' = (p/q) x^(p/q - 1)\"";
    case RuleId::CompositePower: return "Sec. 1.6: \"Principle of the Composite Function\"";
    case RuleId::ExpTangency: return "Sec. 2.3: \"well-known elementary inequality\"";
    case RuleId::GeneralExponential: return "Sec. 3.4: \"well-known representation\"";
    case RuleId::NaturalLog: return "Sec. 3.5: \"strictly increasing on the whole\"";
    case RuleId::LogBaseRule: return "Sec. 3.6: \"where ln a is constant\"";
    case RuleId::InverseFunction: return "Sec. 3.3: \"the function be monotonic\"";
    case RuleId::UnitCircleSin: return "Sec. 4.4: \"vertical coordinate of a point\"";
    case RuleId::UnitCircleCos: return "Sec. 4.5: \"horizontal coordinate of a point\"";
    case RuleId::QuotientRule: return "Sec. 4.6: \"apply the quotient rule\"";
    case RuleId::ProductRule: return "prior-work closure of polynomial products";
    case RuleId::Linearity: return "prior-work closure of sums and scalar multiples";
    case RuleId::ChainRule: return "Sec. 1.6: \"Principle of the Composite Function\"";
    case RuleId::InverseTrigArcsin:
    case RuleId::InverseTrigArccos:
    case RuleId::InverseTrigArctan:
    case RuleId::InverseTrigArccot: return "Sec. 4.9: \"From the unit circle\"";
    case RuleId::AbsRule: return "Sec. 1.8: \"has a corner point\"";
    }
    return "?";
}

struct DerivationStep {
    RuleId rule;
    ExprPtr before; // the subexpression matched
    ExprPtr after;  // its derivative contribution
    std::string citation;

    DerivationStep(RuleId r, ExprPtr b, ExprPtr a)
        : rule(r), before(std::move(b)), after(std::move(a)), citation(rule_citation(r)) {}
};

struct DerivationTrace {
    ExprPtr input;
    std::vector<DerivationStep> steps;
    ExprPtr output;
};

// -- Pythagorean fold ------------------------------------------------------
// The single dedicated trig rewrite: sin(u)^2 + cos(u)^2 -> 1 (also with a
// shared constant coefficient). Used on quotient-rule numerators.

namespace detail {

struct FoldHit {
    ExprPtr result;  // whole expression after the fold
    ExprPtr matched; // the sin^2 + cos^2 subterm that was folded
};

inline std::pair<Rational, ExprPtr> coeff_core(const ExprPtr& t) {
    if (t->kind == Kind::Mul && t->kids.size() == 2 && t->kids[0]->kind == Kind::ConstRat)
        return {t->kids[0]->value, t->kids[1]};
    if (t->kind == Kind::Neg) return {-1, t->kids[0]};
    return {1, t};
}

inline bool is_sq_of(const ExprPtr& t, Kind fn, ExprPtr& arg) {
    if (t->kind != Kind::PowRat || t->value != 2) return false;
    if (t->kids[0]->kind != fn) return false;
    arg = t->kids[0]->kids[0];
    return true;
}

inline std::optional<FoldHit> pythagorean_fold(const ExprPtr& e) {
    if (e->kind == Kind::Add) {
        for (std::size_t i = 0; i < e->kids.size(); ++i) {
            auto [ci, corei] = coeff_core(e->kids[i]);
            ExprPtr argS;
            if (!is_sq_of(corei, Kind::Sin, argS)) continue;
            for (std::size_t j = 0; j < e->kids.size(); ++j) {
                if (j == i) continue;
                auto [cj, corej] = coeff_core(e->kids[j]);
                ExprPtr argC;
                if (!is_sq_of(corej, Kind::Cos, argC)) continue;
                if (ci != cj || !struct_equal(argS, argC)) continue;
                std::vector<ExprPtr> rest;
                for (std::size_t k = 0; k < e->kids.size(); ++k)
                    if (k != i && k != j) rest.push_back(e->kids[k]);
                rest.push_back(num(ci));
                ExprPtr matched = canonicalize(add({e->kids[i], e->kids[j]}));
                return FoldHit{canonicalize(rest.size() == 1 ? rest[0] : add(std::move(rest))),
                               matched};
            }
        }
    }
    // recurse
    for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (auto hit = pythagorean_fold(e->kids[i])) {
            std::vector<ExprPtr> kids = e->kids;
            kids[i] = hit->result;
            return FoldHit{canonicalize(make(e->kind, e->value, std::move(kids))), hit->matched};
        }
    }
    return std::nullopt;
}

} // namespace detail

// -- differentiation -------------------------------------------------------

namespace detail {

// a^x arrives from the parser as Exp(Mul[x, Ln(a)]); returns a if the
// exponent has that shape.
inline std::optional<Rational> match_pow_base(const ExprPtr& u) {
    if (u->kind != Kind::Mul || u->kids.size() != 2) return std::nullopt;
    const ExprPtr& a = u->kids[0];
    const ExprPtr& b = u->kids[1];
    if (a->kind == Kind::Var && b->kind == Kind::Ln && b->kids[0]->kind == Kind::ConstRat)
        return b->kids[0]->value;
    return std::nullopt;
}

struct Differentiator {
    std::vector<DerivationStep> steps;

    ExprPtr diff(const ExprPtr& e) {
        if (!contains_var(e)) return num(0);
        switch (e->kind) {
        case Kind::Var: {
            steps.emplace_back(RuleId::PolyCriterion, e, num(1));
            return num(1);
        }
        case Kind::Add: {
            std::size_t at = steps.size();
            steps.emplace_back(RuleId::Linearity, e, e); // patched below
            std::vector<ExprPtr> parts;
            for (const auto& k : e->kids) parts.push_back(diff(k));
            ExprPtr r = canonicalize(add(std::move(parts)));
            steps[at].after = r;
            return r;
        }
        case Kind::Neg: {
            std::size_t at = steps.size();
            steps.emplace_back(RuleId::Linearity, e, e);
            ExprPtr r = canonicalize(neg(diff(e->kids[0])));
            steps[at].after = r;
            return r;
        }
        case Kind::Mul: {
            std::size_t at = steps.size();
            steps.emplace_back(RuleId::ProductRule, e, e);
            std::vector<ExprPtr> terms;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                std::vector<ExprPtr> fs = e->kids;
                fs[i] = diff(e->kids[i]);
                terms.push_back(canonicalize(mul(std::move(fs))));
            }
            ExprPtr r = canonicalize(add(std::move(terms)));
            steps[at].after = r;
            return r;
        }
        case Kind::Div: {
            std::size_t at = steps.size();
            steps.emplace_back(RuleId::QuotientRule, e, e);
            const ExprPtr& u = e->kids[0];
            const ExprPtr& v = e->kids[1];
            ExprPtr du = diff(u);
            ExprPtr dv = diff(v);
            ExprPtr numer = canonicalize(add({mul({du, v}), neg(mul({u, dv}))}));
            ExprPtr r = canonicalize(div(numer, pow_rat(v, 2)));
            steps[at].after = r;
            if (auto hit = pythagorean_fold(r)) {
                steps.emplace_back(RuleId::QuotientRule, hit->matched, num(1));
                r = hit->result;
            }
            return r;
        }
        case Kind::PowRat: {
            const ExprPtr& u = e->kids[0];
            const Rational& p = e->value;
            if (u->kind == Kind::Var) {
                ExprPtr r = canonicalize(mul({num(p), pow_rat(var(), p - 1)}));
                steps.emplace_back(RuleId::RationalPower, e, r);
                return r;
            }
            std::size_t at = steps.size();
            steps.emplace_back(RuleId::CompositePower, e, e);
            ExprPtr du = diff(u);
            ExprPtr r = canonicalize(mul({num(p), pow_rat(u, p - 1), du}));
            steps[at].after = r;
            return r;
        }
        case Kind::Exp: {
            const ExprPtr& u = e->kids[0];
            if (u->kind == Kind::Var) {
                steps.emplace_back(RuleId::ExpTangency, e, e);
                return e;
            }
            if (auto a = match_pow_base(u)) {
                ExprPtr r = canonicalize(mul({ln_(num(*a)), e}));
                steps.emplace_back(RuleId::GeneralExponential, e, r);
                return r;
            }
            return chain(e, RuleId::ExpTangency, e);
        }
        case Kind::Ln:
            return chain(e, RuleId::NaturalLog, div(num(1), e->kids[0]));
        case Kind::LogBase:
            return chain(e, RuleId::LogBaseRule,
                         div(num(1), mul({e->kids[0], ln_(num(e->value))})));
        case Kind::Sin:
            return chain(e, RuleId::UnitCircleSin, cos_(e->kids[0]));
        case Kind::Cos:
            return chain(e, RuleId::UnitCircleCos, neg(sin_(e->kids[0])));
        case Kind::Tan:
            return chain(e, RuleId::QuotientRule, div(num(1), pow_rat(cos_(e->kids[0]), 2)));
        case Kind::Cot:
            return chain(e, RuleId::QuotientRule, neg(div(num(1), pow_rat(sin_(e->kids[0]), 2))));
        case Kind::Arcsin:
            return chain(e, RuleId::InverseTrigArcsin, div(num(1), sqrt1mu2(e->kids[0])));
        case Kind::Arccos:
            return chain(e, RuleId::InverseTrigArccos, neg(div(num(1), sqrt1mu2(e->kids[0]))));
        case Kind::Arctan:
            return chain(e, RuleId::InverseTrigArctan, div(num(1), one_plus_u2(e->kids[0])));
        case Kind::Arccot:
            return chain(e, RuleId::InverseTrigArccot, neg(div(num(1), one_plus_u2(e->kids[0]))));
        case Kind::Abs:
            // sign(u) * u' away from the kink; Div by |u| is undefined
            // exactly where u vanishes, which analysis treats separately.
            return chain(e, RuleId::AbsRule, div(e->kids[0], abs_(e->kids[0])));
        default:
            throw std::logic_error("differentiate: unhandled node kind");
        }
    }

    static ExprPtr sqrt1mu2(const ExprPtr& u) {
        return pow_rat(add({num(1), neg(pow_rat(u, 2))}), Rational(1, 2));
    }
    static ExprPtr one_plus_u2(const ExprPtr& u) {
        return add({num(1), pow_rat(u, 2)});
    }

    // Table rule for f(u) followed by the chain factor u' when u != x.
    ExprPtr chain(const ExprPtr& e, RuleId table_rule, ExprPtr outer) {
        const ExprPtr& u = e->kids[0];
        ExprPtr outer_c = canonicalize(outer);
        if (u->kind == Kind::Var) {
            steps.emplace_back(table_rule, e, outer_c);
            return outer_c;
        }
        std::size_t at = steps.size();
        steps.emplace_back(RuleId::ChainRule, e, e);
        steps.emplace_back(table_rule, e, outer_c);
        ExprPtr du = diff(u);
        ExprPtr r = canonicalize(mul({outer_c, du}));
        steps[at].after = r;
        return r;
    }
};

} // namespace detail

// Differentiates a canonical expression, recording one step per rule
// application.
inline std::pair<ExprPtr, DerivationTrace> differentiate(const ExprPtr& expr) {
    ExprPtr e = canonicalize(expr);
    detail::Differentiator d;
    ExprPtr out = canonicalize(d.diff(e));
    return {out, DerivationTrace{e, std::move(d.steps), out}};
}

// -- inverse-function rule -------------------------------------------------

struct NotRegisteredInvertible : std::runtime_error {
    NotRegisteredInvertible()
        : std::runtime_error("function is not a registered invertible table entry") {}
};

struct ZeroDerivativeOnBranch : std::runtime_error {
    ZeroDerivativeOnBranch()
        : std::runtime_error("derivative vanishes on the registered branch interior") {}
};

namespace detail {

inline ExprPtr substitute_var(const ExprPtr& e, const ExprPtr& g) {
    if (e->kind == Kind::Var) return g;
    if (e->kids.empty()) return e;
    std::vector<ExprPtr> kids;
    kids.reserve(e->kids.size());
    for (const auto& k : e->kids) kids.push_back(substitute_var(k, g));
    return make(e->kind, e->value, std::move(kids));
}

// Targeted simplifications used when rewriting an inverse derivative into
// the inverse's own variable.
inline ExprPtr inverse_simplify_once(const ExprPtr& e, bool& changed) {
    std::vector<ExprPtr> kids;
    kids.reserve(e->kids.size());
    for (const auto& k : e->kids) kids.push_back(inverse_simplify_once(k, changed));
    ExprPtr r = make(e->kind, e->value, std::move(kids));

    auto hit = [&](ExprPtr out) {
        changed = true;
        return out;
    };
    if (r->kind == Kind::Exp && r->kids[0]->kind == Kind::Ln)
        return hit(r->kids[0]->kids[0]);
    if (r->kind == Kind::Cos && r->kids[0]->kind == Kind::Arcsin)
        return hit(Differentiator::sqrt1mu2(r->kids[0]->kids[0]));
    if (r->kind == Kind::Sin && r->kids[0]->kind == Kind::Arccos)
        return hit(Differentiator::sqrt1mu2(r->kids[0]->kids[0]));
    if (r->kind == Kind::PowRat && r->value == 2 && r->kids[0]->kind == Kind::Cos &&
        r->kids[0]->kids[0]->kind == Kind::Arctan)
        return hit(div(num(1), Differentiator::one_plus_u2(r->kids[0]->kids[0]->kids[0])));
    if (r->kind == Kind::PowRat && r->value == 2 && r->kids[0]->kind == Kind::Sin &&
        r->kids[0]->kids[0]->kind == Kind::Arccot)
        return hit(div(num(1), Differentiator::one_plus_u2(r->kids[0]->kids[0]->kids[0])));
    // (x^(1/q))^n -> x^(n/q): sound on the positive branch.
    if (r->kind == Kind::PowRat && r->kids[0]->kind == Kind::PowRat)
        return hit(pow_rat(r->kids[0]->kids[0], r->kids[0]->value * r->value));
    if (r->kind == Kind::Div && r->kids[1]->kind == Kind::Neg)
        return hit(neg(div(r->kids[0], r->kids[1]->kids[0])));
    if (r->kind == Kind::Div && r->kids[1]->kind == Kind::Div)
        return hit(div(mul({r->kids[0], r->kids[1]->kids[1]}), r->kids[1]->kids[0]));
    return r;
}

inline ExprPtr inverse_simplify(ExprPtr e) {
    for (int i = 0; i < 16; ++i) {
        bool changed = false;
        e = inverse_simplify_once(e, changed);
        if (!changed) break;
    }
    return canonicalize(e);
}

struct InverseEntry {
    ExprPtr g;          // inverse function applied to the new variable
    double branch_lo;   // branch interior for the monotonicity check
    double branch_hi;
};

inline std::optional<InverseEntry> inverse_registry(const ExprPtr& f) {
    constexpr double half_pi = std::numbers::pi / 2;
    if (f->kids.size() == 1 && f->kids[0]->kind == Kind::Var) {
        switch (f->kind) {
        case Kind::Exp: return InverseEntry{ln_(var()), -3.0, 3.0};
        case Kind::Sin: return InverseEntry{arcsin_(var()), -half_pi, half_pi};
        case Kind::Cos: return InverseEntry{arccos_(var()), 0.0, std::numbers::pi};
        case Kind::Tan: return InverseEntry{arctan_(var()), -half_pi, half_pi};
        case Kind::Cot: return InverseEntry{arccot_(var()), 0.0, std::numbers::pi};
        default: break;
        }
        if (f->kind == Kind::PowRat && is_integer(f->value) && f->value >= 2)
            return InverseEntry{pow_rat(var(), Rational(1) / f->value), 0.1, 3.0};
    }
    return std::nullopt;
}

} // namespace detail

// Derivative of the inverse of f as 1 / f'(g(y)), rewritten in the
// inverse's own variable. f must be a registered invertible entry and
// f_prime must not vanish on the registered branch interior.
inline ExprPtr inverse_rule(const ExprPtr& f, const ExprPtr& f_prime) {
    auto entry = detail::inverse_registry(canonicalize(f));
    if (!entry) throw NotRegisteredInvertible();

    ExprPtr fp = canonicalize(f_prime);
    const int probes = 41;
    double margin = (entry->branch_hi - entry->branch_lo) * 0.02;
    for (int i = 0; i <= probes; ++i) {
        double t = entry->branch_lo + margin +
                   (entry->branch_hi - entry->branch_lo - 2 * margin) * i / probes;
        double v = eval_float(fp, t);
        if (std::fabs(v) < 1e-9) throw ZeroDerivativeOnBranch();
    }

    ExprPtr composed = detail::substitute_var(fp, entry->g);
    return detail::inverse_simplify(div(num(1), composed));
}

// -- base table regeneration ----------------------------------------------

struct BaseTableEntry {
    ExprPtr function;
    ExprPtr derivative;
    DerivationTrace trace;
};

// Rebuilds every base-table entry from the constructions that justify it:
// the exponential from its tangency inequality, sine/cosine from the unit
// circle direction vector, logarithms and arc functions through the
// inverse rule, rational powers through root + composite power.
inline std::vector<BaseTableEntry> derive_base_table() {
    std::vector<BaseTableEntry> out;
    auto push = [&](ExprPtr f, ExprPtr df, std::vector<DerivationStep> steps) {
        ExprPtr fc = canonicalize(f);
        ExprPtr dc = canonicalize(df);
        out.push_back({fc, dc, DerivationTrace{fc, std::move(steps), dc}});
    };

    ExprPtr x = var();

    // e^x: one-sided tangency of the line 1 + t at t = 0, transported to
    // every point by scaling.
    {
        ExprPtr f = exp_(x);
        push(f, f, {DerivationStep(RuleId::ExpTangency, f, f)});
    }
    // sin, cos: components of the rotated radius (-sin t, cos t).
    {
        ExprPtr f = sin_(x);
        ExprPtr df = cos_(x);
        push(f, df, {DerivationStep(RuleId::UnitCircleSin, f, df)});
    }
    {
        ExprPtr f = cos_(x);
        ExprPtr df = canonicalize(neg(sin_(x)));
        push(f, df, {DerivationStep(RuleId::UnitCircleCos, f, df)});
    }
    // tan, cot via the quotient rule on their sin/cos forms.
    {
        auto [df, tr] = differentiate(div(sin_(x), cos_(x)));
        out.push_back({tan_(x), df, DerivationTrace{tan_(x), tr.steps, df}});
    }
    {
        auto [df, tr] = differentiate(div(cos_(x), sin_(x)));
        out.push_back({cot_(x), df, DerivationTrace{cot_(x), tr.steps, df}});
    }
    // ln as the inverse of e^x.
    {
        ExprPtr f = ln_(x);
        ExprPtr df = inverse_rule(exp_(x), exp_(x));
        push(f, df,
             {DerivationStep(RuleId::InverseFunction, f, div(num(1), exp_(ln_(x)))),
              DerivationStep(RuleId::NaturalLog, f, df)});
    }
    // log_a as ln x scaled by the constant 1/ln a.
    for (long a : {2L, 10L}) {
        ExprPtr f = log_base(Rational(a), x);
        ExprPtr df = canonicalize(div(num(1), mul({x, ln_(num(a))})));
        push(f, df, {DerivationStep(RuleId::LogBaseRule, f, df)});
    }
    // a^x through the e^(x ln a) representation.
    for (Rational a : {Rational(2), Rational(10), Rational(1, 3)}) {
        ExprPtr f = canonicalize(exp_(mul({x, ln_(num(a))})));
        auto [df, tr] = differentiate(f);
        out.push_back({f, df, tr});
    }
    // Roots x^(1/q) as inverses of y^q.
    for (long q = 2; q <= 6; ++q) {
        ExprPtr f = pow_rat(x, Rational(1, q));
        ExprPtr fwd = pow_rat(x, Rational(q));
        ExprPtr fwd_prime = mul({num(q), pow_rat(x, Rational(q - 1))});
        ExprPtr df = inverse_rule(fwd, fwd_prime);
        push(f, df, {DerivationStep(RuleId::RootInverse, f, df)});
    }
    // General rational powers as (x^(1/q))^p.
    for (auto [p, q] : {std::pair<long, long>{3, 5}, {2, 3}, {5, 2}}) {
        ExprPtr f = pow_rat(x, Rational(p, q));
        ExprPtr root = pow_rat(x, Rational(1, q));
        ExprPtr droot = canonicalize(mul({num(1, q), pow_rat(x, Rational(1, q) - 1)}));
        ExprPtr df = canonicalize(
            mul({num(p), pow_rat(x, Rational(p - 1, q)), droot}));
        push(f, df,
             {DerivationStep(RuleId::RootInverse, root, droot),
              DerivationStep(RuleId::CompositePower, f, df)});
    }
    // Arc functions as inverses of the principal trig branches.
    {
        ExprPtr f = arcsin_(x);
        ExprPtr df = inverse_rule(sin_(x), cos_(x));
        push(f, df,
             {DerivationStep(RuleId::InverseFunction, f, div(num(1), cos_(arcsin_(x)))),
              DerivationStep(RuleId::InverseTrigArcsin, div(num(1), cos_(arcsin_(x))), df)});
    }
    {
        ExprPtr f = arccos_(x);
        ExprPtr df = inverse_rule(cos_(x), neg(sin_(x)));
        push(f, df,
             {DerivationStep(RuleId::InverseFunction, f, div(num(1), neg(sin_(arccos_(x))))),
              DerivationStep(RuleId::InverseTrigArccos, div(num(1), neg(sin_(arccos_(x)))), df)});
    }
    {
        ExprPtr f = arctan_(x);
        ExprPtr fp = div(num(1), pow_rat(cos_(x), 2));
        ExprPtr df = inverse_rule(tan_(x), fp);
        push(f, df,
             {DerivationStep(RuleId::InverseFunction, f, pow_rat(cos_(arctan_(x)), 2)),
              DerivationStep(RuleId::InverseTrigArctan, pow_rat(cos_(arctan_(x)), 2), df)});
    }
    {
        ExprPtr f = arccot_(x);
        ExprPtr fp = neg(div(num(1), pow_rat(sin_(x), 2)));
        ExprPtr df = inverse_rule(cot_(x), fp);
        push(f, df,
             {DerivationStep(RuleId::InverseFunction, f,
                             neg(pow_rat(sin_(arccot_(x)), 2))),
              DerivationStep(RuleId::InverseTrigArccot, neg(pow_rat(sin_(arccot_(x)), 2)), df)});
    }
    return out;
}

// -- trace serialization ---------------------------------------------------

inline nlohmann::ordered_json trace_to_json(const DerivationTrace& tr) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["input"] = print(tr.input);
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& s : tr.steps) {
        steps.push_back({{"rule", rule_name(s.rule)},
                         {"citation", s.citation},
                         {"before", print(s.before)},
                         {"after", print(s.after)}});
    }
    j["steps"] = std::move(steps);
    j["output"] = print(tr.output);
    return j;
}

} // namespace tangent

#endif
