#ifndef TANGENT_RATIONAL_HPP
#define TANGENT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tangent {

using BigInt = boost::multiprecision::cpp_int;

// Exact fraction over arbitrary-precision integers. cpp_rational keeps
// gcd(|num|, den) = 1 and den > 0 as class invariants; zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::optional<std::int64_t> to_int64(const Rational& r) {
    if (!is_integer(r)) return std::nullopt;
    BigInt n = rat_num(r);
    if (n > std::numeric_limits<std::int64_t>::max() ||
        n < std::numeric_limits<std::int64_t>::min())
        return std::nullopt;
    return n.convert_to<std::int64_t>();
}

inline std::string rat_to_string(const Rational& r) {
    std::string s = rat_num(r).str();
    if (!is_integer(r)) s += "/" + rat_den(r).str();
    return s;
}

// b^e for integer e; e < 0 inverts (throws on zero base).
inline Rational rat_pow(const Rational& b, std::int64_t e) {
    if (e < 0) {
        if (b == 0) throw std::domain_error("rat_pow: zero base with negative exponent");
        return rat_pow(Rational(1) / b, -e);
    }
    Rational acc(1), base = b;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// Exact conversion of a finite double (every finite double is dyadic).
inline Rational rat_from_double_exact(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rat_from_double_exact: non-finite value");
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [0.5, 1)
    BigInt mant(static_cast<long long>(std::ldexp(m, 53)));
    exp -= 53;
    Rational r(mant);
    BigInt two_abs = BigInt(1) << (exp < 0 ? -exp : exp);
    if (exp >= 0) r *= Rational(two_abs);
    else r /= Rational(two_abs);
    return r;
}

// "0.25" -> 1/4, "3" -> 3. Digits with at most one '.', exact conversion.
inline Rational rat_from_decimal(const std::string& text) {
    // cpp_int's string constructor reads a leading zero as an octal
    // prefix; force decimal by stripping redundant leading zeros.
    auto as_decimal = [](std::string digits) {
        std::size_t first = digits.find_first_not_of('0');
        if (first == std::string::npos) return BigInt(0);
        return BigInt(digits.substr(first));
    };
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(as_decimal(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    Rational den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(as_decimal(digits)) / den;
}

} // namespace tangent

#endif
