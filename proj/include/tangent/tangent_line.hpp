#ifndef TANGENT_TANGENT_LINE_HPP
#define TANGENT_TANGENT_LINE_HPP

#include "tangent/rational.hpp"

#include <variant>

namespace tangent {

// Abscissa at which tangency is evaluated: exact when the input allows it,
// floating otherwise.
struct Point {
    std::variant<Rational, double> value;

    bool exact() const { return std::holds_alternative<Rational>(value); }
    double as_double() const {
        return exact() ? to_double(std::get<Rational>(value)) : std::get<double>(value);
    }
};

// The line y = f(x0) + k (x - x0); all three fields share the point's
// numeric kind.
struct TangentLine {
    Point point;
    std::variant<Rational, double> f_at_point;
    std::variant<Rational, double> slope;

    bool exact() const { return point.exact(); }
    double slope_double() const {
        return exact() ? to_double(std::get<Rational>(slope)) : std::get<double>(slope);
    }
    double value_double() const {
        return exact() ? to_double(std::get<Rational>(f_at_point)) : std::get<double>(f_at_point);
    }
    double at(double x) const {
        return value_double() + slope_double() * (x - point.as_double());
    }
};

} // namespace tangent

#endif
