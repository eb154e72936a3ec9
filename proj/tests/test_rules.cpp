#include "tangent/corpus.hpp"
#include "tangent/parser.hpp"
#include "tangent/rules.hpp"

#include <doctest.h>
#include <algorithm>

using namespace tangent;

namespace {

ExprPtr d(const char* text) { return differentiate(parse(text)).first; }

bool has_rule(const DerivationTrace& tr, RuleId r) {
    return std::any_of(tr.steps.begin(), tr.steps.end(),
                       [&](const DerivationStep& s) { return s.rule == r; });
}

} // namespace

TEST_CASE("base formula table") {
    CHECK(struct_equal(d("x^(1/2)"),
                       canonicalize(mul({num(1, 2), pow_rat(var(), Rational(-1, 2))}))));
    CHECK(struct_equal(d("x^(3/5)"),
                       canonicalize(mul({num(3, 5), pow_rat(var(), Rational(-2, 5))}))));
    CHECK(struct_equal(d("exp(x)"), exp_(var())));
    CHECK(struct_equal(d("ln(x)"), div(num(1), var())));
    CHECK(struct_equal(d("log(2, x)"), canonicalize(div(num(1), mul({var(), ln_(num(2))})))));
    CHECK(struct_equal(d("sin(x)"), cos_(var())));
    CHECK(struct_equal(d("cos(x)"), canonicalize(neg(sin_(var())))));
    CHECK(equiv(d("tan(x)"), parse("1/cos(x)^2")));
    CHECK(equiv(d("cot(x)"), parse("-1/sin(x)^2")));
    CHECK(equiv(d("asin(x)"), parse("1/(1 - x^2)^(1/2)")));
    CHECK(equiv(d("acos(x)"), parse("-1/(1 - x^2)^(1/2)")));
    CHECK(equiv(d("atan(x)"), parse("1/(1 + x^2)")));
    CHECK(equiv(d("acot(x)"), parse("-1/(1 + x^2)")));
    // a^x via the exp(x ln a) representation
    CHECK(equiv(d("2^x"), parse("2^x * ln(2)")));
    ExprPtr third = canonicalize(exp_(mul({var(), ln_(num(1, 3))})));
    auto [dthird, tr3] = differentiate(third);
    CHECK(equiv(dthird, canonicalize(mul({third, ln_(num(1, 3))}))));
    CHECK(has_rule(tr3, RuleId::GeneralExponential));
}

TEST_CASE("quotient rule with the Pythagorean fold") {
    auto [deriv, tr] = differentiate(parse("sin(x)/cos(x)"));
    CHECK(struct_equal(deriv, div(num(1), pow_rat(cos_(var()), 2))));
    REQUIRE(tr.steps.size() == 4);
    CHECK(tr.steps[0].rule == RuleId::QuotientRule);
    CHECK(tr.steps[1].rule == RuleId::UnitCircleSin);
    CHECK(tr.steps[2].rule == RuleId::UnitCircleCos);
    CHECK(tr.steps[3].rule == RuleId::QuotientRule);
    // the fold step records the matched sin^2 + cos^2 subterm
    CHECK(struct_equal(tr.steps[3].after, num(1)));
}

TEST_CASE("structural rules") {
    // linearity over Add/Neg
    auto [ds, tr] = differentiate(parse("x^2 - sin(x)"));
    CHECK(has_rule(tr, RuleId::Linearity));
    CHECK(equiv(ds, parse("2*x - cos(x)")));
    // product rule
    auto [dp, trp] = differentiate(parse("x*ln(x)"));
    CHECK(has_rule(trp, RuleId::ProductRule));
    CHECK(equiv(dp, parse("ln(x) + 1")));
    // chain rule
    auto [dc, trc] = differentiate(parse("sin(x^2)"));
    CHECK(has_rule(trc, RuleId::ChainRule));
    CHECK(has_rule(trc, RuleId::UnitCircleSin));
    CHECK(equiv(dc, parse("2*x*cos(x^2)")));
    // abs yields the guarded sign expression
    auto [da, tra] = differentiate(parse("abs(x)"));
    CHECK(has_rule(tra, RuleId::AbsRule));
    CHECK(struct_equal(da, div(var(), abs_(var()))));
    // constants vanish without steps
    auto [dk, trk] = differentiate(parse("pi + 3"));
    CHECK(struct_equal(dk, num(0)));
    CHECK(trk.steps.empty());
}

TEST_CASE("trace invariants") {
    ExprGen gen(0x7ace5);
    for (int i = 0; i < 50; ++i) {
        ExprPtr e = gen.canonical(4);
        if (!contains_var(e)) continue;
        auto [deriv, tr] = differentiate(e);
        CHECK(struct_equal(tr.input, canonicalize(e)));
        CHECK(struct_equal(tr.output, deriv));
        CHECK_FALSE(tr.steps.empty());
        for (const auto& s : tr.steps) CHECK(s.citation == rule_citation(s.rule));
    }
}

TEST_CASE("inverse_rule examples") {
    CHECK(struct_equal(inverse_rule(exp_(var()), exp_(var())), div(num(1), var())));
    CHECK(equiv(inverse_rule(sin_(var()), cos_(var())), parse("1/(1 - x^2)^(1/2)")));
    ExprPtr droot = inverse_rule(pow_rat(var(), 3),
                                 canonicalize(mul({num(3), pow_rat(var(), 2)})));
    CHECK(equiv(droot, parse("1/3 * x^(-2/3)")));

    CHECK_THROWS_AS(inverse_rule(ln_(var()), div(num(1), var())), NotRegisteredInvertible);
    CHECK_THROWS_AS(inverse_rule(sin_(pow_rat(var(), 2)), cos_(var())),
                    NotRegisteredInvertible);
    // candidate derivative vanishing on the branch violates monotonicity
    CHECK_THROWS_AS(inverse_rule(pow_rat(var(), 2), num(0)), ZeroDerivativeOnBranch);
}

TEST_CASE("derive_base_table coherence") {
    auto table = derive_base_table();
    CHECK(table.size() >= 20);
    for (const auto& entry : table) {
        auto [deriv, tr] = differentiate(entry.function);
        CAPTURE(print(entry.function));
        CHECK(equiv(entry.derivative, deriv));
    }
}

TEST_CASE("derive_base_table step structure") {
    auto table = derive_base_table();
    auto find = [&](const ExprPtr& f) -> const BaseTableEntry& {
        for (const auto& e : table)
            if (struct_equal(e.function, canonicalize(f))) return e;
        FAIL("table entry not found: " << print(f));
        return table.front();
    };
    CHECK(has_rule(find(exp_(var())).trace, RuleId::ExpTangency));
    CHECK(has_rule(find(sin_(var())).trace, RuleId::UnitCircleSin));
    CHECK(has_rule(find(cos_(var())).trace, RuleId::UnitCircleCos));
    CHECK(has_rule(find(tan_(var())).trace, RuleId::QuotientRule));

    const auto& arcsin_entry = find(arcsin_(var()));
    REQUIRE(arcsin_entry.trace.steps.size() >= 2);
    CHECK(arcsin_entry.trace.steps[0].rule == RuleId::InverseFunction);
    CHECK(arcsin_entry.trace.steps[1].rule == RuleId::InverseTrigArcsin);

    const auto& ln_entry = find(ln_(var()));
    CHECK(ln_entry.trace.steps[0].rule == RuleId::InverseFunction);
    CHECK(has_rule(find(pow_rat(var(), Rational(1, 2))).trace, RuleId::RootInverse));
    CHECK(has_rule(find(pow_rat(var(), Rational(3, 5))).trace, RuleId::CompositePower));
}

TEST_CASE("linearity of differentiate") {
    auto check_lin = [](const char* t1, const char* t2, Rational alpha, Rational beta) {
        ExprPtr e1 = parse(t1);
        ExprPtr e2 = parse(t2);
        ExprPtr combo = canonicalize(add({mul({num(alpha), e1}), mul({num(beta), e2})}));
        ExprPtr lhs = differentiate(combo).first;
        ExprPtr rhs = canonicalize(add({mul({num(alpha), differentiate(e1).first}),
                                        mul({num(beta), differentiate(e2).first})}));
        CHECK(equiv(lhs, rhs));
    };
    check_lin("x^3", "sin(x)", 2, Rational(-1, 3));
    check_lin("exp(x)", "ln(x^2 + 1)", Rational(5, 7), 4);
    check_lin("atan(x)", "cos(x)", Rational(-3, 2), Rational(1, 6));
}

TEST_CASE("chain-rule consistency on compositions") {
    struct Case {
        ExprPtr outer_deriv_at; // f'(g)
        const char* composite;
        const char* inner;
    };
    ExprPtr x2 = parse("x^2");
    std::vector<Case> cases = {
        {cos_(x2), "sin(x^2)", "x^2"},
        {exp_(sin_(var())), "exp(sin(x))", "sin(x)"},
        {div(num(1), parse("x^2 + 1")), "ln(x^2 + 1)", "x^2 + 1"},
        {parse("1/(1 + sin(x)^2)"), "atan(sin(x))", "sin(x)"},
    };
    for (const auto& c : cases) {
        ExprPtr lhs = differentiate(parse(c.composite)).first;
        ExprPtr rhs = canonicalize(
            mul({c.outer_deriv_at, differentiate(parse(c.inner)).first}));
        CAPTURE(c.composite);
        CHECK(equiv(lhs, rhs));
    }
}

TEST_CASE("citation catalogue is fixed") {
    CHECK(std::string(rule_citation(RuleId::PolyCriterion)) ==
          "Introduction: \"divisible by (x - a)^2\"");
    CHECK(std::string(rule_citation(RuleId::RootInverse)) ==
          "Sec. 1.3: \"corresponding points are reciprocal\"");
    CHECK(std::string(rule_citation(RuleId::RationalPower)) ==
          "Sec. 1.7: \"(x^(p/q))' = (p/q) x^(p/q - 1)\"");
    CHECK(std::string(rule_citation(RuleId::CompositePower)) ==
          "Sec. 1.6: \"Principle of the Composite Function\"");
    CHECK(std::string(rule_citation(RuleId::ExpTangency)) ==
          "Sec. 2.3: \"well-known elementary inequality\"");
    CHECK(std::string(rule_citation(RuleId::GeneralExponential)) ==
          "Sec. 3.4: \"well-known representation\"");
    CHECK(std::string(rule_citation(RuleId::NaturalLog)) ==
          "Sec. 3.5: \"strictly increasing on the whole\"");
    CHECK(std::string(rule_citation(RuleId::LogBaseRule)) ==
          "Sec. 3.6: \"where ln a is constant\"");
    CHECK(std::string(rule_citation(RuleId::InverseFunction)) ==
          "Sec. 3.3: \"the function be monotonic\"");
    CHECK(std::string(rule_citation(RuleId::UnitCircleSin)) ==
          "Sec. 4.4: \"vertical coordinate of a point\"");
    CHECK(std::string(rule_citation(RuleId::UnitCircleCos)) ==
          "Sec. 4.5: \"horizontal coordinate of a point\"");
    CHECK(std::string(rule_citation(RuleId::QuotientRule)) ==
          "Sec. 4.6: \"apply the quotient rule\"");
    CHECK(std::string(rule_citation(RuleId::ProductRule)) ==
          "prior-work closure of polynomial products");
    CHECK(std::string(rule_citation(RuleId::Linearity)) ==
          "prior-work closure of sums and scalar multiples");
    CHECK(std::string(rule_citation(RuleId::ChainRule)) ==
          "Sec. 1.6: \"Principle of the Composite Function\"");
    for (RuleId r : {RuleId::InverseTrigArcsin, RuleId::InverseTrigArccos,
                     RuleId::InverseTrigArctan, RuleId::InverseTrigArccot})
        CHECK(std::string(rule_citation(r)) == "Sec. 4.9: \"From the unit circle\"");
    CHECK(std::string(rule_citation(RuleId::AbsRule)) == "Sec. 1.8: \"has a corner point\"");
    CHECK(std::string(rule_name(RuleId::InverseTrigArcsin)) == "InverseTrig(arcsin)");
}

TEST_CASE("trace serialization schema") {
    auto [deriv, tr] = differentiate(parse("sin(x)/cos(x)"));
    auto j = trace_to_json(tr);
    CHECK(j["schema"] == 1);
    CHECK(j["input"] == "sin(x)/cos(x)");
    CHECK(j["output"] == "1/cos(x)^2");
    REQUIRE(j["steps"].is_array());
    REQUIRE(j["steps"].size() == 4);
    for (const auto& s : j["steps"]) {
        CHECK(s.contains("rule"));
        CHECK(s.contains("citation"));
        CHECK(s.contains("before"));
        CHECK(s.contains("after"));
    }
    CHECK(j["steps"][0]["rule"] == "QuotientRule");
    CHECK(j["steps"][0]["citation"] == "Sec. 4.6: \"apply the quotient rule\"");
}
