#include "tangent/analysis.hpp"
#include "tangent/parser.hpp"
#include "tangent/verify.hpp"

#include <doctest.h>
#include <cmath>

using namespace tangent;

TEST_CASE("fd_oracle examples") {
    CHECK(std::fabs(fd_oracle(parse("exp(x)"), 0.0) - 1.0) <= 1e-9);
    CHECK(std::fabs(fd_oracle(parse("ln(x)"), 1.0) - 1.0) <= 1e-9);
    CHECK(std::fabs(fd_oracle(parse("sin(x)"), 0.0) - 1.0) <= 1e-9);
    CHECK_THROWS_AS(fd_oracle(parse("ln(x)"), 0.0), DomainError);
}

TEST_CASE("one_sided_slopes examples") {
    auto [l1, r1] = one_sided_slopes(parse("abs(x)"), 0.0);
    CHECK(l1 == -1.0);
    CHECK(r1 == 1.0);

    auto [l2, r2] = one_sided_slopes(parse("x^(1/3)"), 0.0);
    CHECK(std::isinf(l2));
    CHECK(l2 > 0);
    CHECK(std::isinf(r2));
    CHECK(r2 > 0);

    auto [l3, r3] = one_sided_slopes(parse("x^2"), 3.0);
    CHECK(l3 == 6.0);
    CHECK(r3 == 6.0);

    CHECK_THROWS_AS(one_sided_slopes(parse("ln(x)"), -5.0), OutsideDomainError);
}

TEST_CASE("diagnose examples") {
    DiffVerdict corner = diagnose(parse("abs(x)"), 0.0);
    REQUIRE(corner.kind == DiffVerdict::Kind::Corner);
    CHECK(corner.left_slope == -1.0);
    CHECK(corner.right_slope == 1.0);

    DiffVerdict boundary = diagnose(parse("ln(x)"), 0.0);
    REQUIRE(boundary.kind == DiffVerdict::Kind::DomainBoundary);
    CHECK(boundary.side == BoundarySide::Right);

    DiffVerdict smooth = diagnose(parse("exp(x)"), 0.0);
    REQUIRE(smooth.kind == DiffVerdict::Kind::Differentiable);
    CHECK(std::fabs(smooth.slope - 1.0) <= 1e-6);
    CHECK(std::fabs(smooth.tangent.value_double() - 1.0) <= 1e-12);
    CHECK(std::fabs(smooth.tangent.at(2.0) - 3.0) <= 1e-5); // y = 1 + x

    DiffVerdict vertical = diagnose(parse("x^(1/3)"), 0.0);
    REQUIRE(vertical.kind == DiffVerdict::Kind::VerticalTangent);
    CHECK(vertical.sign == VerticalSign::Positive);

    CHECK(diagnose(parse("ln(x)"), -5.0).kind == DiffVerdict::Kind::OutsideDomain);

    // differentiable verdicts keep both sides within corner_tol
    DiffVerdict s2 = diagnose(parse("sin(x)"), 0.7);
    REQUIRE(s2.kind == DiffVerdict::Kind::Differentiable);
    CHECK(std::fabs(s2.slope - std::cos(0.7)) <= 1e-6);
}

TEST_CASE("abs-of-affine corners are exact") {
    DiffVerdict v = diagnose(parse("abs(2*x - 3)"), 1.5);
    REQUIRE(v.kind == DiffVerdict::Kind::Corner);
    CHECK(v.left_slope == -2.0);
    CHECK(v.right_slope == 2.0);

    // abs with nonvanishing argument is plain differentiable
    DiffVerdict w = diagnose(parse("abs(x)"), 2.0);
    REQUIRE(w.kind == DiffVerdict::Kind::Differentiable);
    CHECK(std::fabs(w.slope - 1.0) <= 1e-9);
}

TEST_CASE("remainder_profile examples") {
    std::vector<double> hs;
    for (double h = 1e-1; h >= 0.9e-5; h /= 2) hs.push_back(h);

    double k = std::exp(0.3);
    RemainderProfile prof = remainder_profile(parse("exp(x)"), 0.3, k, hs);
    REQUIRE(prof.rows.size() == hs.size());
    for (std::size_t i = 0; i + 1 < prof.rows.size(); ++i) {
        double ratio = prof.rows[i + 1].R_over_h / prof.rows[i].R_over_h;
        CHECK(ratio >= 0.4);
        CHECK(ratio <= 0.6);
    }

    RemainderProfile lin = remainder_profile(parse("3*x + 1"), 1.25, 3.0, hs);
    for (const auto& row : lin.rows) CHECK(std::fabs(row.R) <= 1e-12);

    // wrong slope: R/h tends to f'(a) - k
    RemainderProfile wrong = remainder_profile(parse("exp(x)"), 0.3, 1.0, hs);
    double limit = std::exp(0.3) - 1.0;
    CHECK(std::fabs(wrong.rows.back().R_over_h - limit) <= 1e-3);
}

TEST_CASE("remainder profile CSV serialization") {
    RemainderProfile prof = remainder_profile(parse("x^2"), 1.0, 2.0, {0.5, 0.25});
    std::string csv = prof.to_csv();
    CHECK(csv.rfind("h,R,R_over_h\n", 0) == 0);
    CHECK(csv.find("0.5,0.25,0.5") != std::string::npos);
    // h strictly decreasing across rows
    for (std::size_t i = 0; i + 1 < prof.rows.size(); ++i)
        CHECK(prof.rows[i].h > prof.rows[i + 1].h);
}

TEST_CASE("check_exp_tangency") {
    CHECK(check_exp_tangency(0.0, 10000));
    CHECK(check_exp_tangency(1.7, 10000));
    for (double x0 : {-2.0, 0.5, 3.0}) CHECK(check_exp_tangency(x0, 10000));
    // a perturbed slope line crosses the graph
    CHECK_FALSE(check_exp_tangency(0.0, 10000, 1.01));
    CHECK_FALSE(check_exp_tangency(1.7, 10000, 0.99));
}

TEST_CASE("check_circle_orthogonality") {
    CHECK(check_circle_orthogonality(0.0) == 0.0);
    CHECK(std::fabs(check_circle_orthogonality(std::numbers::pi / 4)) <= 1e-16);
    CHECK(std::fabs(check_circle_orthogonality(2.5)) <= 1e-12);
}

TEST_CASE("verification sweep passes") {
    for (const auto& res : run_verification_sweep()) {
        CAPTURE(res.name);
        CAPTURE(res.detail);
        CHECK(res.passed);
    }
}
