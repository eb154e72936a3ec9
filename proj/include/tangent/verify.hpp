#ifndef TANGENT_VERIFY_HPP
#define TANGENT_VERIFY_HPP

#include "tangent/analysis.hpp"
#include "tangent/corpus.hpp"
#include "tangent/rules.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace tangent {

struct VerifyResult {
    std::string name;
    bool passed;
    std::string detail;
};

namespace detail {

// Interior points where the remainder table sits cleanly in its
// second-order decay regime: f'' bounded away from zero and not swamped
// by the next term.
inline std::vector<double> remainder_points(const ExprPtr& e, int want) {
    std::vector<double> pts;
    ExprPtr d1, d2, d3;
    try {
        d1 = differentiate(e).first;
        d2 = differentiate(d1).first;
        d3 = differentiate(d2).first;
    } catch (const std::exception&) {
        return pts;
    }
    const int grid = 1200;
    for (int i = 1; i < grid && static_cast<int>(pts.size()) < want; ++i) {
        double x = -6.0 + 12.0 * i / grid;
        bool ok = true;
        for (double probe : {x, x + 0.01, x + 0.05, x + 0.12})
            ok = ok && in_domain(e, probe);
        if (!ok || !in_domain(d1, x) || !in_domain(d2, x) || !in_domain(d3, x)) continue;
        try {
            double f = eval_float(e, x);
            double f2 = eval_float(d2, x);
            double f3 = eval_float(d3, x);
            if (std::fabs(f) > 1e3 || std::fabs(f2) < 0.05 || std::fabs(f2) > 1e3) continue;
            if (std::fabs(f3) > 100 * std::fabs(f2)) continue;
        } catch (const DomainError&) {
            continue;
        }
        pts.push_back(x);
    }
    return pts;
}

inline std::vector<double> halving_steps() {
    std::vector<double> hs;
    for (int k = 0; k < 14; ++k) hs.push_back(0.1 / std::pow(2.0, k));
    return hs;
}

} // namespace detail

// Symbolic derivative against the Richardson oracle on the whole corpus.
inline VerifyResult verify_symbolic_vs_fd() {
    int pairs = 0, failures = 0;
    std::ostringstream detail;
    for (const auto& e : verification_corpus()) {
        auto [d, tr] = differentiate(e);
        for (double x : sample_points(e, d, 20)) {
            ++pairs;
            double sym = eval_float(d, x);
            double fd = fd_oracle(e, x);
            if (std::fabs(sym - fd) > 1e-6 * std::max(1.0, std::fabs(fd))) {
                ++failures;
                if (failures <= 5)
                    detail << " [" << print(e) << " at " << x << ": " << sym << " vs " << fd
                           << "]";
            }
        }
    }
    std::ostringstream name;
    name << "symbolic derivative vs finite-difference oracle (" << pairs - failures << "/"
         << pairs << " pairs)";
    return {name.str(), failures == 0, detail.str()};
}

// R/h halves per h-halving once h <= 1e-2, at well-conditioned points.
inline VerifyResult verify_remainder_order() {
    int checked = 0, failures = 0;
    std::ostringstream detail;
    auto hs = detail::halving_steps();
    for (const auto& e : verification_corpus()) {
        auto [d, tr] = differentiate(e);
        for (double a : detail::remainder_points(e, 5)) {
            double k = eval_float(d, a);
            auto prof = remainder_profile(e, a, k, hs);
            for (std::size_t i = 0; i + 1 < prof.rows.size(); ++i) {
                if (prof.rows[i].h > 1e-2) continue;
                if (std::fabs(prof.rows[i].R_over_h) < 1e-12) continue;
                double ratio = prof.rows[i + 1].R_over_h / prof.rows[i].R_over_h;
                ++checked;
                if (ratio < 0.35 || ratio > 0.65) {
                    ++failures;
                    if (failures <= 5)
                        detail << " [" << print(e) << " at " << a << ": ratio " << ratio << "]";
                }
            }
        }
    }
    std::ostringstream name;
    name << "remainder second-order decay (" << checked - failures << "/" << checked
         << " ratios)";
    return {name.str(), failures == 0, detail.str()};
}

inline VerifyResult verify_corner() {
    DiffVerdict v = diagnose(abs_(var()), 0.0);
    bool ok = v.kind == DiffVerdict::Kind::Corner && std::fabs(v.left_slope + 1) <= 1e-12 &&
              std::fabs(v.right_slope - 1) <= 1e-12;
    return {"corner diagnosis of |x| at 0", ok, ""};
}

inline VerifyResult verify_exp_tangency() {
    bool ok = true;
    for (double x0 : {-2.0, 0.0, 0.5, 3.0}) ok = ok && check_exp_tangency(x0, 10000);
    return {"exponential tangency inequality at {-2, 0, 0.5, 3}", ok, ""};
}

inline VerifyResult verify_orthogonality() {
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
        double t = 2 * std::numbers::pi * i / 1000.0;
        if (std::fabs(check_circle_orthogonality(t)) > 1e-12) ok = false;
    }
    return {"unit-circle tangent orthogonality at 1000 angles", ok, ""};
}

inline std::vector<VerifyResult> run_verification_sweep() {
    return {verify_symbolic_vs_fd(), verify_remainder_order(), verify_corner(),
            verify_exp_tangency(), verify_orthogonality()};
}

} // namespace tangent

#endif
