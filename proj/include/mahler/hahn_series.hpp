#ifndef MAHLER_HAHN_SERIES_HPP
#define MAHLER_HAHN_SERIES_HPP

#include <concepts>
#include <map>
#include <utility>

#include "mahler/rational.hpp"
#include "mahler/rational_set.hpp"

namespace mahler {

// Coefficient fields are plain value types with exact arithmetic and
// decidable equality. Rational is the shipped realization; a prime field
// with the same operator surface drops in without touching the algorithms.
template <typename K>
concept FieldScalar = std::regular<K> && requires(K a, K b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    K(0);
    K(1);
};

// A generalized power series with finitely many rational exponents: the
// truncations this library computes and manipulates. Terms are held in an
// ordered map keyed by exponent, and zero coefficients are never stored, so
// the valuation and support read straight off the container.
template <FieldScalar K = Rational>
class FiniteHahnSeries {
public:
    using TermMap = std::map<Rational, K>;

    FiniteHahnSeries() = default;

    static FiniteHahnSeries monomial(const Rational& exponent, K coefficient = K(1)) {
        FiniteHahnSeries f;
        f.add_term(exponent, std::move(coefficient));
        return f;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // min supp, +inf for the zero series
    ExtRational val() const {
        if (terms_.empty()) return ExtRational::pos_inf();
        return ExtRational(terms_.begin()->first);
    }

    SortedRationalSet support() const {
        std::vector<Rational> exps;
        exps.reserve(terms_.size());
        for (const auto& [e, c] : terms_) exps.push_back(e);
        return SortedRationalSet::from_sorted(std::move(exps));
    }

    K coefficient(const Rational& exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? K(0) : it->second;
    }

    void add_term(const Rational& exponent, const K& coefficient) {
        accumulate(exponent, coefficient);
    }

    FiniteHahnSeries& operator+=(const FiniteHahnSeries& other) {
        for (const auto& [e, c] : other.terms_) accumulate(e, c);
        return *this;
    }
    friend FiniteHahnSeries operator+(FiniteHahnSeries a, const FiniteHahnSeries& b) {
        a += b;
        return a;
    }
    FiniteHahnSeries operator-() const {
        FiniteHahnSeries out;
        for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
        return out;
    }
    friend FiniteHahnSeries operator-(const FiniteHahnSeries& a, const FiniteHahnSeries& b) {
        return a + (-b);
    }
    FiniteHahnSeries operator*(const K& scalar) const {
        FiniteHahnSeries out;
        if (scalar == K(0)) return out;
        for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, c * scalar);
        return out;
    }

    friend bool operator==(const FiniteHahnSeries& a, const FiniteHahnSeries& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const FiniteHahnSeries& a, const FiniteHahnSeries& b) {
        return !(a == b);
    }

    // keeps exactly the terms indexed by Q
    FiniteHahnSeries restrict(const SortedRationalSet& index_set) const {
        FiniteHahnSeries out;
        for (const auto& [e, c] : terms_)
            if (index_set.contains(e)) out.terms_.emplace_hint(out.terms_.end(), e, c);
        return out;
    }

    FiniteHahnSeries restrict_leq(const Rational& bound) const {
        FiniteHahnSeries out;
        for (const auto& [e, c] : terms_) {
            if (e > bound) break;
            out.terms_.emplace_hint(out.terms_.end(), e, c);
        }
        return out;
    }

private:
    void accumulate(const Rational& exponent, const K& coefficient) {
        if (coefficient == K(0)) return;
        auto it = terms_.find(exponent);
        if (it == terms_.end()) {
            terms_.emplace(exponent, coefficient);
            return;
        }
        it->second = it->second + coefficient;
        if (it->second == K(0)) terms_.erase(it);
    }

    TermMap terms_;
};

// f(z) -> f(z^(ell^i)): every exponent is scaled by ell^i, coefficients
// unchanged. The scaling is positive so the term order is preserved.
template <FieldScalar K>
FiniteHahnSeries<K> mahler_substitute(const FiniteHahnSeries<K>& f, const Int& ell, long long i) {
    if (ell < 2) throw std::invalid_argument("mahler_substitute: ell >= 2 required");
    if (i < 0) throw std::invalid_argument("mahler_substitute: i >= 0 required");
    if (i == 0) return f;
    const Int scale = pow_int(ell, static_cast<unsigned long>(i));
    FiniteHahnSeries<K> out;
    for (const auto& [e, c] : f.terms()) out.add_term(e * Rational(scale), c);
    return out;
}

}  // namespace mahler

#endif
