#ifndef MAHLER_PARSER_HPP
#define MAHLER_PARSER_HPP

#include <cctype>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mahler/mahler_operator.hpp"
#include "mahler/rational.hpp"

namespace mahler {

// Concrete syntax for operators: an expression over z, M, integer/rational
// literals, + - * ^ and parentheses, where M is the substitution z -> z^ell.
// Normalization respects M * f(z) = f(z^ell) * M.
struct OperatorSpec {
    Int ell;
    std::string expression;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

// Element of the skew polynomial ring: substitution power -> coefficient.
using SkewPoly = std::map<long long, Polynomial<Rational>>;

struct Token {
    enum class Kind { number, z, m, plus, minus, star, caret, lparen, rparen, end };
    Kind kind;
    Rational value;
    std::size_t position;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& current() const { return tok_; }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            tok_ = {Token::Kind::end, Rational(0), start};
            return;
        }
        const char c = text_[pos_];
        switch (c) {
            case '+': tok_ = {Token::Kind::plus, Rational(0), start}; ++pos_; return;
            case '-': tok_ = {Token::Kind::minus, Rational(0), start}; ++pos_; return;
            case '*': tok_ = {Token::Kind::star, Rational(0), start}; ++pos_; return;
            case '^': tok_ = {Token::Kind::caret, Rational(0), start}; ++pos_; return;
            case '(': tok_ = {Token::Kind::lparen, Rational(0), start}; ++pos_; return;
            case ')': tok_ = {Token::Kind::rparen, Rational(0), start}; ++pos_; return;
            case 'z': tok_ = {Token::Kind::z, Rational(0), start}; ++pos_; return;
            case 'M': tok_ = {Token::Kind::m, Rational(0), start}; ++pos_; return;
            case '/':
                throw ParseError(
                    "rational function coefficients are not supported; clear denominators "
                    "(rational literals like 1/2 are fine)",
                    start);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int numerator = read_integer();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    throw ParseError("expected digits after '/' in a rational literal", pos_);
                Int denominator = read_integer();
                if (denominator == 0) throw ParseError("zero denominator in a rational literal", start);
                tok_ = {Token::Kind::number, make_rational(numerator, denominator), start};
            } else {
                tok_ = {Token::Kind::number, Rational(numerator), start};
            }
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    Int read_integer() {
        Int value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token tok_{Token::Kind::end, Rational(0), 0};
};

inline SkewPoly skew_add(SkewPoly a, const SkewPoly& b) {
    for (const auto& [i, p] : b) {
        auto& slot = a[i];
        slot += p;
        if (slot.is_zero()) a.erase(i);
    }
    return a;
}

inline SkewPoly skew_neg(const SkewPoly& a) {
    SkewPoly out;
    for (const auto& [i, p] : a) out.emplace(i, -p);
    return out;
}

// (a M^i)(b M^k) = a * b(z^(ell^i)) M^(i+k)
inline SkewPoly skew_mul(const SkewPoly& a, const SkewPoly& b, const Int& ell, std::size_t position) {
    SkewPoly out;
    for (const auto& [i, p] : a) {
        const Int scale = pow_int(ell, static_cast<unsigned long>(i));
        if (scale > std::numeric_limits<long long>::max())
            throw ParseError("substitution power too large", position);
        const long long scale_ll = static_cast<long long>(scale);
        for (const auto& [k, q] : b) {
            Polynomial<Rational> twisted;
            try {
                twisted = q.substitute_power(scale_ll);
            } catch (const std::overflow_error&) {
                throw ParseError("coefficient exponent overflow", position);
            }
            auto& slot = out[i + k];
            slot += p * twisted;
            if (slot.is_zero()) out.erase(i + k);
        }
    }
    return out;
}

inline SkewPoly skew_pow(const SkewPoly& base, long long exponent, const Int& ell, std::size_t position) {
    SkewPoly out{{0, Polynomial<Rational>(Rational(1))}};
    for (long long k = 0; k < exponent; ++k) out = skew_mul(out, base, ell, position);
    return out;
}

class Parser {
public:
    Parser(std::string_view text, Int ell) : lexer_(text), ell_(std::move(ell)) {}

    SkewPoly run() {
        SkewPoly result = parse_expression();
        expect(Token::Kind::end, "unexpected trailing input");
        return result;
    }

private:
    SkewPoly parse_expression() {
        SkewPoly result = parse_term();
        for (;;) {
            if (accept(Token::Kind::plus)) {
                result = skew_add(std::move(result), parse_term());
            } else if (accept(Token::Kind::minus)) {
                result = skew_add(std::move(result), skew_neg(parse_term()));
            } else {
                return result;
            }
        }
    }

    SkewPoly parse_term() {
        SkewPoly result = parse_factor();
        while (accept(Token::Kind::star)) {
            const std::size_t pos = lexer_.current().position;
            result = skew_mul(result, parse_factor(), ell_, pos);
        }
        return result;
    }

    SkewPoly parse_factor() {
        if (accept(Token::Kind::minus)) return skew_neg(parse_factor());
        SkewPoly base = parse_primary();
        if (accept(Token::Kind::caret)) {
            const Token exp_tok = lexer_.current();
            expect(Token::Kind::number, "expected a nonnegative integer exponent after '^'");
            if (denominator(exp_tok.value) != 1 || exp_tok.value < 0)
                throw ParseError("exponent must be a nonnegative integer", exp_tok.position);
            if (exp_tok.value > 1000000) throw ParseError("exponent too large", exp_tok.position);
            const long long e = static_cast<long long>(numerator(exp_tok.value));
            base = skew_pow(base, e, ell_, exp_tok.position);
        }
        return base;
    }

    SkewPoly parse_primary() {
        const Token tok = lexer_.current();
        switch (tok.kind) {
            case Token::Kind::number:
                lexer_.advance();
                return {{0, Polynomial<Rational>(tok.value)}};
            case Token::Kind::z:
                lexer_.advance();
                return {{0, Polynomial<Rational>::monomial(1)}};
            case Token::Kind::m:
                lexer_.advance();
                return {{1, Polynomial<Rational>(Rational(1))}};
            case Token::Kind::lparen: {
                lexer_.advance();
                SkewPoly inner = parse_expression();
                expect(Token::Kind::rparen, "expected ')'");
                return inner;
            }
            default:
                throw ParseError("expected a number, 'z', 'M' or '('", tok.position);
        }
    }

    bool accept(Token::Kind kind) {
        if (lexer_.current().kind != kind) return false;
        lexer_.advance();
        return true;
    }

    void expect(Token::Kind kind, const std::string& message) {
        if (lexer_.current().kind != kind) throw ParseError(message, lexer_.current().position);
        lexer_.advance();
    }

    Lexer lexer_;
    Int ell_;
};

}  // namespace detail

inline MahlerOperator<Rational> parse_operator(const OperatorSpec& spec) {
    if (spec.ell < 2) throw ParseError("ell must be at least 2", 0);
    detail::Parser parser(spec.expression, spec.ell);
    const detail::SkewPoly skew = parser.run();
    if (skew.empty()) throw ParseError("the zero operator is not a Mahler operator", 0);
    const long long n = skew.rbegin()->first;
    if (n < 1) throw ParseError("order must be at least 1 (no M term present)", 0);
    if (!skew.count(0) || !skew.count(n))
        throw ParseError("a0 and an must be nonzero (a0*an = 0)", 0);
    std::vector<Polynomial<Rational>> coeffs(static_cast<std::size_t>(n) + 1);
    for (const auto& [i, p] : skew) coeffs[static_cast<std::size_t>(i)] = p;
    return MahlerOperator<Rational>(spec.ell, std::move(coeffs));
}

// Coefficient strings in operator files: a polynomial in z alone.
inline Polynomial<Rational> parse_polynomial(const std::string& text) {
    detail::Parser parser(text, 2);
    const detail::SkewPoly skew = parser.run();
    if (skew.empty()) return Polynomial<Rational>();
    if (skew.size() != 1 || skew.begin()->first != 0)
        throw ParseError("expected a polynomial in z (no M allowed here)", 0);
    return skew.begin()->second;
}

inline std::string print_polynomial(const Polynomial<Rational>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : p.terms()) {
        if (!out.empty()) out += " + ";
        if (e == 0) {
            out += to_string(c);
        } else {
            if (c == Rational(-1))
                out += "-";
            else if (c != Rational(1))
                out += to_string(c) + "*";
            out += e == 1 ? "z" : "z^" + std::to_string(e);
        }
    }
    return out;
}

// Canonical normalized form; parse_operator(print_operator(op)) == op.
inline std::string print_operator(const MahlerOperator<Rational>& op) {
    std::string out;
    for (int i = 0; i <= op.order(); ++i) {
        const auto& a = op.coefficient(i);
        if (a.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + print_polynomial(a) + ")";
        if (i == 1) out += "*M";
        if (i > 1) out += "*M^" + std::to_string(i);
    }
    return out;
}

}  // namespace mahler

#endif
