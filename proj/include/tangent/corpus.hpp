#ifndef TANGENT_CORPUS_HPP
#define TANGENT_CORPUS_HPP

#include "tangent/analysis.hpp"
#include "tangent/eval.hpp"
#include "tangent/expr.hpp"
#include "tangent/rules.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace tangent {

// Deterministic random expression generator used by the property suites
// and the built-in verification corpus.
class ExprGen {
public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    // A random canonical expression of the given depth bound. Retries on
    // degenerate constant folds (division by a folded zero).
    ExprPtr canonical(int max_depth) {
        for (;;) {
            try {
                return canonicalize(raw(max_depth));
            } catch (const DivisionByZeroConst&) {
            }
        }
    }

    ExprPtr raw(int depth) {
        if (depth <= 0) return leaf();
        switch (pick(12)) {
        case 0: return leaf();
        case 1: return add({raw(depth - 1), raw(depth - 1)});
        case 2: return mul({raw(depth - 1), raw(depth - 1)});
        case 3: return neg(raw(depth - 1));
        case 4: return div(raw(depth - 1), raw(depth - 1));
        case 5: return pow_rat(raw(depth - 1), small_rat());
        case 6: return exp_(raw(depth - 1));
        case 7: return ln_(raw(depth - 1));
        case 8: return sin_(raw(depth - 1));
        case 9: return cos_(raw(depth - 1));
        case 10: return abs_(raw(depth - 1));
        default:
            switch (pick(6)) {
            case 0: return tan_(raw(depth - 1));
            case 1: return arcsin_(raw(depth - 1));
            case 2: return arccos_(raw(depth - 1));
            case 3: return arctan_(raw(depth - 1));
            case 4: return log_base(Rational(pick(2) ? 2 : 10), raw(depth - 1));
            default: return arccot_(raw(depth - 1));
            }
        }
    }

    Rational small_rat() {
        long n = static_cast<long>(pick(9)) - 4; // -4..4
        long d = static_cast<long>(pick(4)) + 1; // 1..4
        return Rational(n, d);
    }

    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 rng_;

    ExprPtr leaf() {
        switch (pick(6)) {
        case 0:
        case 1:
        case 2: return var();
        case 3: return num(small_rat());
        case 4: return const_e();
        default: return const_pi();
        }
    }
};

// Sample points where the expression, its symbolic derivative, and the
// finite-difference oracle are all well behaved.
inline std::vector<double> sample_points(const ExprPtr& e, const ExprPtr& deriv, int want,
                                         double lo = -6.0, double hi = 6.0) {
    std::vector<double> pts;
    const int grid = 2400;
    for (int i = 1; i < grid && static_cast<int>(pts.size()) < want; ++i) {
        double x = lo + (hi - lo) * i / grid;
        bool ok = true;
        for (double probe : {x, x - 2e-4, x + 2e-4, x - 1e-3, x + 1e-3})
            ok = ok && in_domain(e, probe);
        if (!ok || !in_domain(deriv, x)) continue;
        try {
            double f = eval_float(e, x);
            double d = eval_float(deriv, x);
            double fd = fd_oracle(e, x);
            if (std::fabs(f) > 1e3 || std::fabs(d) > 1e3 || std::fabs(fd) > 1e4) continue;
        } catch (const DomainError&) {
            continue;
        }
        pts.push_back(x);
    }
    return pts;
}

// The fixed verification corpus: every base function plus deterministic
// random compositions of depth <= 4, kept only when they admit 20 usable
// sample points.
inline const std::vector<ExprPtr>& verification_corpus() {
    static const std::vector<ExprPtr> corpus = [] {
        std::vector<ExprPtr> out;
        ExprPtr x = var();
        auto put = [&](ExprPtr e) { out.push_back(canonicalize(std::move(e))); };
        put(pow_rat(x, Rational(1, 2)));
        put(pow_rat(x, Rational(3, 5)));
        put(add({pow_rat(x, 3), mul({num(-2), x}), num(1)}));
        put(exp_(x));
        put(exp_(mul({x, ln_(num(2))}))); // 2^x
        put(ln_(x));
        put(log_base(2, x));
        put(sin_(x));
        put(cos_(x));
        put(tan_(x));
        put(cot_(x));
        put(arcsin_(x));
        put(arccos_(x));
        put(arctan_(x));
        put(arccot_(x));

        ExprGen gen(0x5eedc0de);
        while (out.size() < 40) {
            ExprPtr e = gen.canonical(4);
            if (!contains_var(e)) continue;
            try {
                auto [d, tr] = differentiate(e);
                if (!contains_var(e) || sample_points(e, d, 20).size() < 20) continue;
                out.push_back(e);
            } catch (const std::exception&) {
                continue;
            }
        }
        return out;
    }();
    return corpus;
}

} // namespace tangent

#endif
