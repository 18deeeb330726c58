#ifndef MAHLER_JSON_IO_HPP
#define MAHLER_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "mahler/hahn_series.hpp"
#include "mahler/mahler_operator.hpp"
#include "mahler/parser.hpp"
#include "mahler/rational_set.hpp"

namespace mahler {

// All rationals cross the JSON boundary as strings "a/b" so nothing is ever
// rounded. Key order is fixed, keeping outputs byte-for-byte reproducible.
using OrderedJson = nlohmann::ordered_json;

inline OrderedJson series_to_json(const FiniteHahnSeries<Rational>& f) {
    OrderedJson out = OrderedJson::array();
    for (const auto& [e, c] : f.terms()) {
        OrderedJson term;
        term["exponent"] = to_string(e);
        term["coefficient"] = to_string(c);
        out.push_back(std::move(term));
    }
    return out;
}

inline FiniteHahnSeries<Rational> series_from_json(const OrderedJson& j) {
    if (!j.is_array()) throw std::runtime_error("series JSON: expected an array of terms");
    FiniteHahnSeries<Rational> f;
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("exponent") || !term.contains("coefficient"))
            throw std::runtime_error("series JSON: each term needs \"exponent\" and \"coefficient\"");
        const auto e = parse_rational(term["exponent"].get<std::string>());
        const auto c = parse_rational(term["coefficient"].get<std::string>());
        if (!e || !c) throw std::runtime_error("series JSON: malformed rational");
        f.add_term(*e, *c);
    }
    return f;
}

inline OrderedJson operator_to_json(const MahlerOperator<Rational>& op) {
    OrderedJson out;
    out["ell"] = static_cast<long long>(op.ell());
    OrderedJson coeffs = OrderedJson::array();
    for (const auto& a : op.coefficients()) coeffs.push_back(print_polynomial(a));
    out["coefficients"] = std::move(coeffs);
    return out;
}

// {"ell": 2, "coefficients": ["-2", "z-1", "z"]}, index i the coefficient of M^i
inline MahlerOperator<Rational> operator_from_json(const OrderedJson& j) {
    if (!j.is_object() || !j.contains("ell") || !j.contains("coefficients"))
        throw std::runtime_error("operator JSON: expected {\"ell\": ..., \"coefficients\": [...]}");
    const Int ell(j["ell"].get<long long>());
    std::vector<Polynomial<Rational>> coeffs;
    for (const auto& text : j["coefficients"]) coeffs.push_back(parse_polynomial(text.get<std::string>()));
    return MahlerOperator<Rational>(ell, std::move(coeffs));
}

inline OrderedJson rational_set_to_json(const SortedRationalSet& s) {
    OrderedJson out = OrderedJson::array();
    for (const auto& v : s) out.push_back(to_string(v));
    return out;
}

inline std::string print_series(const FiniteHahnSeries<Rational>& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : f.terms()) {
        const bool negative = c < 0;
        const Rational abs_c = negative ? Rational(-c) : c;
        out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
        const bool unit = abs_c == 1 && e != 0;
        if (!unit) out += to_string(abs_c);
        if (e != 0) {
            if (!unit) out += "*";
            const std::string es = to_string(e);
            const bool plain = es.find('/') == std::string::npos && es.find('-') == std::string::npos;
            out += e == 1 ? "z" : (plain ? "z^" + es : "z^(" + es + ")");
        }
    }
    return out;
}

}  // namespace mahler

#endif
