#ifndef MAHLER_MAHLER_OPERATOR_HPP
#define MAHLER_MAHLER_OPERATOR_HPP

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mahler/hahn_series.hpp"
#include "mahler/rational.hpp"

namespace mahler {

// Univariate polynomial over K with nonnegative integer exponents, stored
// sparsely. No zero coefficients are kept.
template <FieldScalar K = Rational>
class Polynomial {
public:
    using TermMap = std::map<long long, K>;

    Polynomial() = default;
    Polynomial(const K& constant) { add_term(0, constant); }

    static Polynomial monomial(long long exponent, K coefficient = K(1)) {
        Polynomial p;
        p.add_term(exponent, std::move(coefficient));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    long long val() const {
        if (terms_.empty()) throw std::domain_error("Polynomial::val: zero polynomial");
        return terms_.begin()->first;
    }
    long long degree() const {
        if (terms_.empty()) throw std::domain_error("Polynomial::degree: zero polynomial");
        return terms_.rbegin()->first;
    }

    K coefficient(long long exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? K(0) : it->second;
    }

    void add_term(long long exponent, const K& coefficient) {
        if (exponent < 0) throw std::invalid_argument("Polynomial: negative exponent");
        if (coefficient == K(0)) return;
        auto it = terms_.find(exponent);
        if (it == terms_.end()) {
            terms_.emplace(exponent, coefficient);
        } else {
            it->second = it->second + coefficient;
            if (it->second == K(0)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& other) {
        for (const auto& [e, c] : other.terms_) add_term(e, c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) {
        a += b;
        return a;
    }
    Polynomial operator-() const {
        Polynomial out;
        for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
        return out;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                long long e;
                if (__builtin_add_overflow(ea, eb, &e))
                    throw std::overflow_error("Polynomial: exponent overflow");
                out.add_term(e, ca * cb);
            }
        return out;
    }

    // z -> z^s with s >= 1.
    Polynomial substitute_power(long long s) const {
        Polynomial out;
        for (const auto& [e, c] : terms_) {
            long long scaled;
            if (__builtin_mul_overflow(e, s, &scaled))
                throw std::overflow_error("Polynomial: exponent overflow");
            out.terms_.emplace_hint(out.terms_.end(), scaled, c);
        }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    TermMap terms_;
};

// One nonzero monomial a_{i,j} z^j of the coefficient of the i-th
// substitution power, i.e. a point (ell^i, j) of the operator's support.
template <FieldScalar K = Rational>
struct SupportPointTerm {
    int order;           // i
    Int abscissa;        // ell^i
    long long ordinate;  // j
    K coefficient;       // a_{i,j}
};

// The operator a_n s^n + ... + a_0, where s substitutes z -> z^ell.
// Invariants: ell >= 2, n >= 1, a_0 != 0 and a_n != 0.
template <FieldScalar K = Rational>
class MahlerOperator {
public:
    MahlerOperator(Int ell, std::vector<Polynomial<K>> coefficients)
        : ell_(std::move(ell)), coeffs_(std::move(coefficients)) {
        if (ell_ < 2) throw std::invalid_argument("MahlerOperator: ell >= 2 required");
        if (coeffs_.size() < 2)
            throw std::invalid_argument("MahlerOperator: order n >= 1 required");
        if (coeffs_.front().is_zero() || coeffs_.back().is_zero())
            throw std::invalid_argument("MahlerOperator: a0 and an must be nonzero");
    }

    const Int& ell() const { return ell_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Polynomial<K>>& coefficients() const { return coeffs_; }
    const Polynomial<K>& coefficient(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }

    friend bool operator==(const MahlerOperator& a, const MahlerOperator& b) {
        return a.ell_ == b.ell_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const MahlerOperator& a, const MahlerOperator& b) { return !(a == b); }

private:
    Int ell_;
    std::vector<Polynomial<K>> coeffs_;
};

// One entry per nonzero monomial of each coefficient; the finite point set
// P(L) together with the attached coefficients, ordered by (i, j).
template <FieldScalar K>
std::vector<SupportPointTerm<K>> support_points(const MahlerOperator<K>& op) {
    std::vector<SupportPointTerm<K>> out;
    for (int i = 0; i <= op.order(); ++i) {
        const Int scale = pow_int(op.ell(), static_cast<unsigned long>(i));
        for (const auto& [j, c] : op.coefficient(i).terms())
            out.push_back(SupportPointTerm<K>{i, scale, j, c});
    }
    return out;
}

// L(f) computed exactly, with cancellation between equal exponents.
template <FieldScalar K>
FiniteHahnSeries<K> apply_operator(const MahlerOperator<K>& op, const FiniteHahnSeries<K>& f) {
    FiniteHahnSeries<K> out;
    for (int i = 0; i <= op.order(); ++i) {
        const Int scale = pow_int(op.ell(), static_cast<unsigned long>(i));
        const Rational scale_q(scale);
        for (const auto& [j, a] : op.coefficient(i).terms()) {
            const Rational shift(j);
            for (const auto& [e, c] : f.terms()) out.add_term(e * scale_q + shift, a * c);
        }
    }
    return out;
}

}  // namespace mahler

#endif
