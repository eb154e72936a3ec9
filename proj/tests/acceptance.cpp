// Acceptance suite: one line per criterion, "PASS"/"FAIL" verdicts,
// nonzero exit if anything fails.

#include "tangent/analysis.hpp"
#include "tangent/corpus.hpp"
#include "tangent/parser.hpp"
#include "tangent/polynomial.hpp"
#include "tangent/rules.hpp"
#include "tangent/verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace tangent;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool passed, const std::string& detail = "") {
    std::cout << (passed ? "PASS" : "FAIL") << "  criterion " << index << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!passed) ++g_failures;
}

// 1. Exact agreement of the power rule with the tangency criterion on
// 1,000 random polynomials, under 10 seconds.
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0xacce);
    auto coeff = [&] {
        long n = static_cast<long>(rng() % 201) - 100;
        long d = static_cast<long>(rng() % 100) + 1;
        return Rational(n, d);
    };
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        std::size_t deg = rng() % 13;
        std::vector<Rational> c(deg + 1);
        for (auto& x : c) x = coeff();
        Polynomial p(std::move(c));
        Rational a = coeff();
        ok = derivative_poly(p)(a) == tangent_slope(p, a);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream detail;
    detail << "1000 polynomials in " << secs << " s";
    report(1, "criterion/power-rule exact equivalence", ok && secs < 10.0, detail.str());
}

// 2. The full derivative formula table, up to 20-point equivalence at
// rel_tol 1e-9.
void criterion_2() {
    bool ok = true;
    std::string failed;
    auto expect = [&](const ExprPtr& f, const ExprPtr& want) {
        ExprPtr got = differentiate(f).first;
        bool pass = false;
        try {
            pass = equiv(got, canonicalize(want), 20, 1e-9);
        } catch (const std::exception&) {
        }
        if (!pass) {
            ok = false;
            if (!failed.empty()) failed += ", ";
            failed += print(canonicalize(f));
        }
    };
    ExprPtr x = var();
    for (long p = 1; p <= 6; ++p)
        for (long q = 1; q <= 6; ++q) {
            Rational r(p, q);
            expect(pow_rat(x, r), mul({num(r), pow_rat(x, r - 1)}));
        }
    expect(exp_(x), exp_(x));
    for (Rational a : {Rational(2), Rational(10), Rational(1, 3)}) {
        ExprPtr ax = exp_(mul({x, ln_(num(a))}));
        expect(ax, mul({ax, ln_(num(a))}));
    }
    expect(ln_(x), div(num(1), x));
    for (long a : {2L, 10L})
        expect(log_base(Rational(a), x), div(num(1), mul({x, ln_(num(a))})));
    expect(sin_(x), cos_(x));
    expect(cos_(x), neg(sin_(x)));
    expect(tan_(x), div(num(1), pow_rat(cos_(x), 2)));
    expect(cot_(x), neg(div(num(1), pow_rat(sin_(x), 2))));
    ExprPtr sqrt1mx2 = pow_rat(add({num(1), neg(pow_rat(x, 2))}), Rational(1, 2));
    expect(arcsin_(x), div(num(1), sqrt1mx2));
    expect(arccos_(x), neg(div(num(1), sqrt1mx2)));
    expect(arctan_(x), div(num(1), add({num(1), pow_rat(x, 2)})));
    expect(arccot_(x), neg(div(num(1), add({num(1), pow_rat(x, 2)}))));
    report(2, "paper formula table reproduced by differentiate", ok, failed);
}

// 3. Symbolic vs finite-difference oracle on the 40-expression corpus:
// at least 99% of pairs within 1e-6 relative, failures enumerated.
void criterion_3() {
    int pairs = 0, failures = 0;
    std::string list;
    for (const auto& e : verification_corpus()) {
        auto [d, tr] = differentiate(e);
        for (double xv : sample_points(e, d, 20)) {
            ++pairs;
            double sym = eval_float(d, xv);
            double fd = fd_oracle(e, xv);
            if (std::fabs(sym - fd) > 1e-6 * std::max(1.0, std::fabs(fd))) {
                ++failures;
                std::ostringstream os;
                os << (list.empty() ? "" : "; ") << print(e) << " at " << xv;
                list += os.str();
            }
        }
    }
    bool ok = pairs > 0 && failures <= pairs / 100;
    std::ostringstream detail;
    detail << pairs - failures << "/" << pairs << " pairs within 1e-6";
    if (!list.empty()) detail << "; failures: " << list;
    report(3, "numeric oracle agreement on corpus", ok, detail.str());
}

// 4. Exact corner at |x|, x = 0.
void criterion_4() {
    DiffVerdict v = diagnose(abs_(var()), 0.0);
    bool ok = v.kind == DiffVerdict::Kind::Corner &&
              std::fabs(v.left_slope - (-1.0)) <= 1e-12 &&
              std::fabs(v.right_slope - 1.0) <= 1e-12;
    std::ostringstream detail;
    if (v.kind == DiffVerdict::Kind::Corner)
        detail << "left=" << v.left_slope << " right=" << v.right_slope;
    report(4, "corner diagnosis of |x| at 0", ok, detail.str());
}

// 5. Exponential tangency inequality at four base points.
void criterion_5() {
    bool ok = true;
    for (double x0 : {-2.0, 0.0, 0.5, 3.0}) ok = ok && check_exp_tangency(x0, 10000);
    report(5, "exponential tangency inequality", ok);
}

// 6. Remainder decay for exp at 0.3 with the true slope, and a nonzero
// limit with the wrong slope.
void criterion_6() {
    ExprPtr e = exp_(var());
    std::vector<double> hs;
    for (double h = 1e-1; h >= 0.9e-5; h /= 2) hs.push_back(h);

    double k = std::exp(0.3);
    auto prof = remainder_profile(e, 0.3, k, hs);
    bool decay = true;
    for (std::size_t i = 0; i + 1 < prof.rows.size(); ++i) {
        double ratio = prof.rows[i + 1].R_over_h / prof.rows[i].R_over_h;
        decay = decay && ratio >= 0.35 && ratio <= 0.65;
    }
    auto wrong = remainder_profile(e, 0.3, 1.0, hs);
    double limit = std::exp(0.3) - 1.0;
    bool converges = std::fabs(wrong.rows.back().R_over_h - limit) <= 1e-3;
    std::ostringstream detail;
    detail << "wrong-slope R/h -> " << wrong.rows.back().R_over_h << " vs " << limit;
    report(6, "remainder second-order decay at exp(0.3)", decay && converges, detail.str());
}

// 7. Unit-circle orthogonality at 1,000 angles.
void criterion_7() {
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
        double t = 2 * std::numbers::pi * i / 1000.0;
        ok = ok && std::fabs(check_circle_orthogonality(t)) <= 1e-12;
    }
    report(7, "unit-circle tangent orthogonality", ok);
}

std::pair<int, std::string> run_cli(const std::string& args) {
    std::string cmd = std::string(TANGENT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// 8. Round-trip identity on 1,000 random canonical expressions, plus
// byte-exact CLI determinism across two runs of every subcommand.
void criterion_8() {
    bool round_trip = true;
    ExprGen gen(0x8c8c8);
    for (int i = 0; i < 1000 && round_trip; ++i) {
        ExprPtr e = gen.canonical(6);
        round_trip = struct_equal(parse(print(e)), e);
    }

    bool deterministic = true;
    std::string which;
    for (const char* args : {
             "diff \"x^(3/5)\"",
             "trace \"sin(x)/cos(x)\" --format json",
             "tangent-at \"x^3 - 2*x + 1\" --at 2",
             "check-tangent \"x^3 - 2*x + 1\" --at 2 --slope 10",
             "diagnose \"abs(x)\" --at 0",
             "verify",
             "plot-data \"sin(x)\" --range 0 3 33 --at 1",
         }) {
        auto a = run_cli(args);
        auto b = run_cli(args);
        if (a.first != b.first || a.second != b.second || a.first == -1) {
            deterministic = false;
            which = args;
        }
    }
    std::ostringstream detail;
    if (!round_trip) detail << "round trip failed";
    if (!deterministic) detail << "nondeterministic: " << which;
    report(8, "round trip and CLI determinism", round_trip && deterministic, detail.str());
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 8 criteria passed\n";
    return 0;
}
