#ifndef TANGENT_PARSER_HPP
#define TANGENT_PARSER_HPP

#include "tangent/eval.hpp"
#include "tangent/expr.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace tangent {

struct ParseError : std::runtime_error {
    std::size_t position; // byte offset of the first offending byte
    std::string expected;
    std::string found;
    ParseError(std::size_t pos, std::string exp, std::string fnd)
        : std::runtime_error("parse error at offset " + std::to_string(pos) +
                             ": expected " + exp + ", found " +
                             (fnd.empty() ? "end of input" : "'" + fnd + "'")),
          position(pos), expected(std::move(exp)), found(std::move(fnd)) {}
};

// '^' exponents must fold to a rational constant unless the base is e or a
// positive rational constant != 1 (rewritten through exp/ln).
struct NonRationalExponent : ParseError {
    explicit NonRationalExponent(std::size_t pos, std::string fnd)
        : ParseError(pos, "rational constant exponent (or base e / positive rational base)",
                     std::move(fnd)) {}
};

namespace detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view in) : in_(in) {}

    Token next() {
        while (i_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= in_.size()) return {Tok::End, start, ""};
        char c = in_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[i_]))) ++i_;
            if (i_ < in_.size() && in_[i_] == '.') {
                ++i_;
                if (i_ >= in_.size() || !std::isdigit(static_cast<unsigned char>(in_[i_])))
                    throw ParseError(i_, "digit after decimal point",
                                     i_ < in_.size() ? std::string(1, in_[i_]) : "");
                while (i_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[i_]))) ++i_;
            }
            return {Tok::Number, start, std::string(in_.substr(start, i_ - start))};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i_ < in_.size() &&
                   (std::isalnum(static_cast<unsigned char>(in_[i_])) || in_[i_] == '_'))
                ++i_;
            return {Tok::Ident, start, std::string(in_.substr(start, i_ - start))};
        }
        ++i_;
        switch (c) {
        case '+': return {Tok::Plus, start, "+"};
        case '-': return {Tok::Minus, start, "-"};
        case '*': return {Tok::Star, start, "*"};
        case '/': return {Tok::Slash, start, "/"};
        case '^': return {Tok::Caret, start, "^"};
        case '(': return {Tok::LParen, start, "("};
        case ')': return {Tok::RParen, start, ")"};
        case ',': return {Tok::Comma, start, ","};
        default: throw ParseError(start, "token", std::string(1, c));
        }
    }

private:
    std::string_view in_;
    std::size_t i_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view in) : lex_(in) { advance(); }

    ExprPtr parse_all() {
        ExprPtr e = parse_sum();
        if (cur_.kind != Tok::End)
            throw ParseError(cur_.pos, "end of input or operator", cur_.text);
        return canonicalize(e);
    }

private:
    Lexer lex_;
    Token cur_;

    void advance() { cur_ = lex_.next(); }

    bool accept(Tok k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k) throw ParseError(cur_.pos, what, cur_.text);
        advance();
    }

    // sum := term (('+'|'-') term)*
    ExprPtr parse_sum() {
        std::vector<ExprPtr> terms{parse_term()};
        for (;;) {
            if (accept(Tok::Plus)) terms.push_back(parse_term());
            else if (accept(Tok::Minus)) terms.push_back(neg(parse_term()));
            else break;
        }
        return terms.size() == 1 ? terms[0] : add(std::move(terms));
    }

    // term := unary (('*'|'/') unary)*   (left-associative)
    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (accept(Tok::Star)) {
                ExprPtr rhs = parse_unary();
                if (e->kind == Kind::Mul) {
                    auto kids = e->kids;
                    kids.push_back(rhs);
                    e = mul(std::move(kids));
                } else {
                    e = mul({e, rhs});
                }
            } else if (accept(Tok::Slash)) {
                e = div(e, parse_unary());
            } else {
                break;
            }
        }
        return e;
    }

    // unary := '-' unary | power   (binds tighter than '*', looser than '^')
    ExprPtr parse_unary() {
        if (accept(Tok::Minus)) return neg(parse_unary());
        return parse_power();
    }

    // power := primary ('^' unary)?   ('^' is right-associative via unary)
    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (cur_.kind != Tok::Caret) return base;
        std::size_t caret_pos = cur_.pos;
        advance();
        ExprPtr exponent = canonicalize(parse_unary());
        ExprPtr cbase = canonicalize(base);
        if (cbase->kind == Kind::ConstE) return exp_(exponent);
        if (exponent->kind == Kind::ConstRat) return pow_rat(base, exponent->value);
        if (cbase->kind == Kind::ConstRat && cbase->value > 0 && cbase->value != 1)
            return exp_(mul({ln_(cbase), exponent}));
        throw NonRationalExponent(caret_pos, "^");
    }

    ExprPtr parse_primary() {
        switch (cur_.kind) {
        case Tok::Number: {
            Rational r = rat_from_decimal(cur_.text);
            advance();
            return num(std::move(r));
        }
        case Tok::LParen: {
            advance();
            ExprPtr e = parse_sum();
            expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Ident: {
            Token id = cur_;
            advance();
            if (id.text == "x") return var();
            if (id.text == "e") return const_e();
            if (id.text == "pi") return const_pi();
            if (id.text == "log") return parse_log(id.pos);
            if (ExprPtr f = parse_func_call(id.text)) return f;
            throw ParseError(id.pos, "'x', 'e', 'pi', a number, or a function name", id.text);
        }
        default:
            throw ParseError(cur_.pos, "operand", cur_.text);
        }
    }

    ExprPtr parse_func_call(const std::string& name) {
        Kind k;
        if (name == "exp") k = Kind::Exp;
        else if (name == "ln") k = Kind::Ln;
        else if (name == "sin") k = Kind::Sin;
        else if (name == "cos") k = Kind::Cos;
        else if (name == "tan") k = Kind::Tan;
        else if (name == "cot") k = Kind::Cot;
        else if (name == "asin") k = Kind::Arcsin;
        else if (name == "acos") k = Kind::Arccos;
        else if (name == "atan") k = Kind::Arctan;
        else if (name == "acot") k = Kind::Arccot;
        else if (name == "abs") k = Kind::Abs;
        else return nullptr;
        expect(Tok::LParen, "'('");
        ExprPtr arg = parse_sum();
        expect(Tok::RParen, "')'");
        return make(k, 0, {arg});
    }

    // log(b, u): b must fold to a positive rational constant != 1.
    ExprPtr parse_log(std::size_t call_pos) {
        expect(Tok::LParen, "'('");
        std::size_t base_pos = cur_.pos;
        ExprPtr base = canonicalize(parse_sum());
        if (base->kind != Kind::ConstRat || base->value <= 0 || base->value == 1)
            throw ParseError(base_pos, "positive rational log base != 1", cur_.text);
        expect(Tok::Comma, "','");
        ExprPtr arg = parse_sum();
        expect(Tok::RParen, "')'");
        (void)call_pos;
        return log_base(base->value, arg);
    }
};

} // namespace detail

// Text -> canonical Expr.
inline ExprPtr parse(std::string_view input) { return detail::Parser(input).parse_all(); }

// -- pretty printer --------------------------------------------------------
// Minimal parentheses under the grammar's precedence levels:
//   sum = 1, product/quotient = 2, unary minus = 3, power = 4, atom = 5.
// parse(print(e)) is the identity on canonical expressions.

namespace detail {

inline int node_prec(const ExprPtr& e) {
    switch (e->kind) {
    case Kind::Add: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::PowRat: return 4;
    case Kind::ConstRat:
        if (is_integer(e->value)) return e->value >= 0 ? 5 : 3;
        return 2; // p/q prints as a quotient
    default: return 5;
    }
}

inline void print_to(const ExprPtr& e, int min_prec, std::string& out);

inline void print_wrapped(const ExprPtr& e, int min_prec, std::string& out) {
    if (node_prec(e) < min_prec) {
        out += '(';
        print_to(e, 1, out);
        out += ')';
    } else {
        print_to(e, min_prec, out);
    }
}

inline const char* func_name(Kind k) {
    switch (k) {
    case Kind::Exp: return "exp";
    case Kind::Ln: return "ln";
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Tan: return "tan";
    case Kind::Cot: return "cot";
    case Kind::Arcsin: return "asin";
    case Kind::Arccos: return "acos";
    case Kind::Arctan: return "atan";
    case Kind::Arccot: return "acot";
    case Kind::Abs: return "abs";
    default: return "";
    }
}

inline void print_to(const ExprPtr& e, int min_prec, std::string& out) {
    (void)min_prec;
    switch (e->kind) {
    case Kind::ConstRat: out += rat_to_string(e->value); return;
    case Kind::ConstE: out += 'e'; return;
    case Kind::ConstPi: out += "pi"; return;
    case Kind::Var: out += 'x'; return;
    case Kind::Add: {
        // First term in unary position, later terms after a binary sign.
        const ExprPtr& first = e->kids[0];
        if (first->kind == Kind::Neg) {
            out += '-';
            print_wrapped(first->kids[0], 3, out);
        } else {
            print_wrapped(first, 2, out);
        }
        for (std::size_t i = 1; i < e->kids.size(); ++i) {
            const ExprPtr& t = e->kids[i];
            if (t->kind == Kind::Neg) {
                out += " - ";
                print_wrapped(t->kids[0], 2, out);
            } else if (t->kind == Kind::ConstRat && t->value < 0) {
                out += " - ";
                out += rat_to_string(-t->value);
            } else {
                out += " + ";
                print_wrapped(t, 2, out);
            }
        }
        return;
    }
    case Kind::Mul: {
        print_wrapped(e->kids[0], 2, out);
        for (std::size_t i = 1; i < e->kids.size(); ++i) {
            out += '*';
            print_wrapped(e->kids[i], 3, out);
        }
        return;
    }
    case Kind::Div:
        print_wrapped(e->kids[0], 2, out);
        out += '/';
        print_wrapped(e->kids[1], 3, out);
        return;
    case Kind::Neg:
        out += '-';
        print_wrapped(e->kids[0], 3, out);
        return;
    case Kind::PowRat: {
        print_wrapped(e->kids[0], 5, out);
        out += '^';
        const Rational& r = e->value;
        if (is_integer(r) && r >= 0) {
            out += rat_to_string(r);
        } else {
            out += '(';
            out += rat_to_string(r);
            out += ')';
        }
        return;
    }
    case Kind::LogBase:
        out += "log(";
        out += rat_to_string(e->value);
        out += ", ";
        print_to(e->kids[0], 1, out);
        out += ')';
        return;
    default:
        out += func_name(e->kind);
        out += '(';
        print_to(e->kids[0], 1, out);
        out += ')';
        return;
    }
}

} // namespace detail

inline std::string print(const ExprPtr& e) {
    std::string out;
    detail::print_to(e, 1, out);
    return out;
}

} // namespace tangent

#endif
