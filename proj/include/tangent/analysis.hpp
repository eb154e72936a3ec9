#ifndef TANGENT_ANALYSIS_HPP
#define TANGENT_ANALYSIS_HPP

#include "tangent/eval.hpp"
#include "tangent/expr.hpp"
#include "tangent/polynomial.hpp"
#include "tangent/tangent_line.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tangent {

inline constexpr double kCornerTol = 1e-5;
inline constexpr double kDivergence = 1e8;

struct OutsideDomainError : std::runtime_error {
    OutsideDomainError() : std::runtime_error("point is outside the function's domain") {}
};

enum class BoundarySide { Left, Right, Isolated };
enum class VerticalSign { Positive, Negative, Both };

// Pointwise differentiability outcome.
struct DiffVerdict {
    enum class Kind { Differentiable, Corner, VerticalTangent, DomainBoundary, OutsideDomain };
    Kind kind;
    double slope = 0;             // Differentiable
    TangentLine tangent{};        // Differentiable
    double left_slope = 0;        // Corner
    double right_slope = 0;       // Corner
    VerticalSign sign = VerticalSign::Both;       // VerticalTangent
    BoundarySide side = BoundarySide::Isolated;   // DomainBoundary
};

// Remainder table for R(h) = f(a + h) - f(a) - k h.
struct RemainderProfile {
    double point;
    double slope;
    struct Row {
        double h;
        double R;
        double R_over_h;
    };
    std::vector<Row> rows;

    std::string to_csv() const {
        std::ostringstream os;
        os.precision(17);
        os << "h,R,R_over_h\n";
        for (const auto& r : rows) os << r.h << ',' << r.R << ',' << r.R_over_h << '\n';
        return os.str();
    }
};

// Richardson-extrapolated central difference at h = 1e-4:
// (4 D(h/2) - D(h)) / 3 cancels the leading h^2 error term.
inline double fd_oracle(const ExprPtr& e, double a) {
    const double h = 1e-4;
    auto central = [&](double step) {
        return (eval_float(e, a + step) - eval_float(e, a - step)) / (2 * step);
    };
    double d1 = central(h);
    double d2 = central(h / 2);
    return (4 * d2 - d1) / 3;
}

namespace detail {

// Replaces Abs(u) with +/- u for the side under analysis when u is affine
// and vanishes at a; this makes corner slopes exact. Returns nullopt if no
// kink rewrite applies to this expression.
inline std::optional<ExprPtr> resolve_abs_kink(const ExprPtr& e, double a, int side) {
    if (e->kind == Kind::Abs) {
        const ExprPtr& u = e->kids[0];
        bool affine = true;
        try {
            // affine iff it is a polynomial of degree <= 1
            Polynomial p = poly_from_expr(u);
            affine = p.degree() <= 1;
            if (affine && !p.is_zero() && p.degree() == 1) {
                double u_at = eval_float(u, a);
                if (std::fabs(u_at) < 1e-12) {
                    double lead = to_double(p.coeffs()[1]);
                    // On the chosen side, u has the sign of lead * side.
                    bool positive = (lead > 0) == (side > 0);
                    return positive ? u : canonicalize(neg(u));
                }
            }
        } catch (const NotPolynomial&) {
        } catch (const DomainError&) {
        }
        return std::nullopt;
    }
    bool changed = false;
    std::vector<ExprPtr> kids;
    kids.reserve(e->kids.size());
    for (const auto& k : e->kids) {
        if (auto r = resolve_abs_kink(k, a, side)) {
            kids.push_back(*r);
            changed = true;
        } else {
            kids.push_back(k);
        }
    }
    if (!changed) return std::nullopt;
    return canonicalize(make(e->kind, e->value, std::move(kids)));
}

// One-sided difference quotient, Richardson-extrapolated over the fixed
// step ladder h, h/2, h/4. side = +1 for the right, -1 for the left.
inline double one_sided_fd(const ExprPtr& e, double a, int side) {
    const double h0 = 1e-3;
    double fa = eval_float(e, a);
    auto quot = [&](double h) { return (eval_float(e, a + side * h) - fa) / (side * h); };

    // Divergence scan: shrink h aggressively and watch for unbounded
    // growth of the difference quotient.
    for (double h = h0; h > 1e-14; h *= 1e-2) {
        try {
            double q = quot(h);
            if (std::fabs(q) > kDivergence)
                return q > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
        } catch (const DomainError&) {
            break;
        }
    }

    double d0 = quot(h0);
    double d1 = quot(h0 / 2);
    double d2 = quot(h0 / 4);
    // Two Richardson levels for the first-order one-sided quotient.
    double e1a = 2 * d1 - d0;
    double e1b = 2 * d2 - d1;
    return (4 * e1b - e1a) / 3;
}

// Polynomial slopes go through the exact criterion; doubles are dyadic,
// so the conversion is lossless.
inline std::optional<double> exact_polynomial_slope(const ExprPtr& e, double a) {
    try {
        Polynomial p = poly_from_expr(e);
        return to_double(tangent_slope(p, rat_from_double_exact(a)));
    } catch (const NotPolynomial&) {
        return std::nullopt;
    }
}

inline double side_slope(const ExprPtr& e, double a, int side) {
    ExprPtr target = e;
    if (auto smoothed = resolve_abs_kink(e, a, side)) target = *smoothed;
    if (auto exact = exact_polynomial_slope(target, a)) return *exact;
    return one_sided_fd(target, a, side);
}

} // namespace detail

// Left and right tangent slopes at a; infinities signal divergence.
inline std::pair<double, double> one_sided_slopes(const ExprPtr& e, double a) {
    bool left_ok = in_domain(e, a - 1e-3) && in_domain(e, a - 1e-4);
    bool right_ok = in_domain(e, a + 1e-3) && in_domain(e, a + 1e-4);
    if (!in_domain(e, a) && !left_ok && !right_ok) throw OutsideDomainError();
    double nan = std::numeric_limits<double>::quiet_NaN();
    double l = left_ok && in_domain(e, a) ? detail::side_slope(e, a, -1) : nan;
    double r = right_ok && in_domain(e, a) ? detail::side_slope(e, a, +1) : nan;
    return {l, r};
}

inline DiffVerdict diagnose(const ExprPtr& e, double a, double corner_tol = kCornerTol) {
    bool at_ok = in_domain(e, a);
    bool left_ok = in_domain(e, a - 1e-3) && in_domain(e, a - 1e-4);
    bool right_ok = in_domain(e, a + 1e-3) && in_domain(e, a + 1e-4);

    DiffVerdict v;
    if (!at_ok && !left_ok && !right_ok) {
        v.kind = DiffVerdict::Kind::OutsideDomain;
        return v;
    }
    if (!at_ok) {
        if (left_ok != right_ok) {
            v.kind = DiffVerdict::Kind::DomainBoundary;
            v.side = right_ok ? BoundarySide::Right : BoundarySide::Left;
        } else {
            v.kind = DiffVerdict::Kind::OutsideDomain; // hole in the domain
        }
        return v;
    }
    if (!left_ok || !right_ok) {
        v.kind = DiffVerdict::Kind::DomainBoundary;
        v.side = left_ok ? BoundarySide::Left
                         : right_ok ? BoundarySide::Right : BoundarySide::Isolated;
        return v;
    }

    double l = detail::side_slope(e, a, -1);
    double r = detail::side_slope(e, a, +1);
    bool l_inf = std::isinf(l);
    bool r_inf = std::isinf(r);
    if (l_inf || r_inf) {
        v.kind = DiffVerdict::Kind::VerticalTangent;
        if (l_inf && r_inf)
            v.sign = (l > 0) == (r > 0)
                         ? (l > 0 ? VerticalSign::Positive : VerticalSign::Negative)
                         : VerticalSign::Both;
        else {
            double s = l_inf ? l : r;
            v.sign = s > 0 ? VerticalSign::Positive : VerticalSign::Negative;
        }
        return v;
    }
    if (std::fabs(l - r) > corner_tol) {
        v.kind = DiffVerdict::Kind::Corner;
        v.left_slope = l;
        v.right_slope = r;
        return v;
    }
    v.kind = DiffVerdict::Kind::Differentiable;
    v.slope = (l + r) / 2;
    double fa = eval_float(e, a);
    v.tangent = TangentLine{Point{a}, fa, v.slope};
    return v;
}

inline RemainderProfile remainder_profile(const ExprPtr& e, double a, double k,
                                          const std::vector<double>& hs) {
    RemainderProfile prof{a, k, {}};
    double fa = eval_float(e, a);
    for (double h : hs) {
        double R = eval_float(e, a + h) - fa - k * h;
        prof.rows.push_back({h, R, R / h});
    }
    return prof;
}

// Verifies e^x >= e^{x0} + e^{x0}(x - x0) over [x0 - 5, x0 + 5] with
// equality only at x0. slope_scale perturbs the candidate slope away
// from e^{x0}; any scale other than 1 makes the line cross the graph.
inline bool check_exp_tangency(double x0, int samples, double slope_scale = 1.0) {
    if (samples < 2) throw std::invalid_argument("check_exp_tangency: samples must be >= 2");
    double fx0 = std::exp(x0);
    for (int i = 0; i < samples; ++i) {
        double x = x0 - 5 + 10.0 * i / (samples - 1);
        double diff = std::exp(x) - (fx0 + slope_scale * fx0 * (x - x0));
        double scale = std::max(1.0, std::exp(x));
        if (diff < -1e-12 * scale) return false;
        if (diff <= 1e-12 * scale && std::fabs(x - x0) > 20.0 / samples) return false;
    }
    return true;
}

// Dot product of the radius (cos t, sin t) with the rotated direction
// (-sin t, cos t); identically zero.
inline double check_circle_orthogonality(double t) {
    double c = std::cos(t), s = std::sin(t);
    return c * (-s) + s * c;
}

} // namespace tangent

#endif
