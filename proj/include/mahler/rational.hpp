#ifndef MAHLER_RATIONAL_HPP
#define MAHLER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mahler {

using Int = boost::multiprecision::cpp_int;

// Exact rational numbers. cpp_rational keeps every value reduced with a
// positive denominator, so equality is structural.
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// n/d with any signs, d != 0.
inline Rational make_rational(Int n, Int d) {
    if (d == 0) throw std::invalid_argument("make_rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rational(std::move(n), std::move(d));
}

inline Int pow_int(const Int& base, unsigned long exp) {
    return boost::multiprecision::pow(base, exp);
}

// base^exp for integer base >= 1 and possibly negative exp.
inline Rational pow_rational(const Int& base, long long exp) {
    if (base <= 0) throw std::invalid_argument("pow_rational: base must be positive");
    if (exp >= 0) return Rational(pow_int(base, static_cast<unsigned long>(exp)));
    return make_rational(1, pow_int(base, static_cast<unsigned long>(-exp)));
}

inline Int floor_rational(const Rational& q) {
    Int quot = numerator(q) / denominator(q);
    if (numerator(q) < 0 && quot * denominator(q) != numerator(q)) --quot;
    return quot;
}

// Text form "a/b" or "a", optional leading '-'. Used by the CLI and JSON files.
inline std::string to_string(const Rational& q) { return q.str(); }

inline std::optional<Rational> parse_rational(std::string_view text) {
    auto parse_int = [](std::string_view s) -> std::optional<Int> {
        if (s.empty()) return std::nullopt;
        std::size_t i = 0;
        bool negative = false;
        if (s[0] == '-' || s[0] == '+') {
            negative = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) return std::nullopt;
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') return std::nullopt;
        Int value(std::string(s.substr(i)));
        return negative ? -value : value;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto n = parse_int(text);
        if (!n) return std::nullopt;
        return Rational(*n);
    }
    auto n = parse_int(text.substr(0, slash));
    auto d = parse_int(text.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return make_rational(std::move(*n), std::move(*d));
}

// Rationals extended with the two infinities. Houses the conventions
// val(0) = +inf, min of an empty set = +inf, and the sentinel slopes at the
// ends of the Newton polygon.
class ExtRational {
public:
    enum class Kind { neg_inf, finite, pos_inf };

    ExtRational() : kind_(Kind::finite) {}
    ExtRational(Rational value) : kind_(Kind::finite), value_(std::move(value)) {}
    ExtRational(int value) : kind_(Kind::finite), value_(value) {}

    static ExtRational pos_inf() { return ExtRational(Kind::pos_inf); }
    static ExtRational neg_inf() { return ExtRational(Kind::neg_inf); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

    const Rational& value() const {
        if (!is_finite()) throw std::domain_error("ExtRational: no finite value");
        return value_;
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.kind_ != b.kind_) return false;
        return a.kind_ != Kind::finite || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (a.kind_ == b.kind_) return a.kind_ == Kind::finite && a.value_ < b.value_;
        if (a.kind_ == Kind::neg_inf) return true;
        if (b.kind_ == Kind::neg_inf) return false;
        return b.kind_ == Kind::pos_inf;
    }
    friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
    friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

    ExtRational operator-() const {
        switch (kind_) {
            case Kind::neg_inf: return pos_inf();
            case Kind::pos_inf: return neg_inf();
            default: return ExtRational(-value_);
        }
    }

    // Infinities absorb; opposite infinities are rejected.
    friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
        if (a.is_finite() && b.is_finite()) return ExtRational(a.value_ + b.value_);
        if (!a.is_finite() && !b.is_finite() && a.kind_ != b.kind_)
            throw std::domain_error("ExtRational: inf + (-inf)");
        return a.is_finite() ? b : a;
    }
    friend ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }

    std::string str() const {
        switch (kind_) {
            case Kind::neg_inf: return "-inf";
            case Kind::pos_inf: return "inf";
            default: return value_.str();
        }
    }

private:
    explicit ExtRational(Kind kind) : kind_(kind) {}

    Kind kind_;
    Rational value_;
};

inline const ExtRational& min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }
inline const ExtRational& max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

}  // namespace mahler

#endif
