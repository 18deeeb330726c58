#ifndef MAHLER_TESTS_ORACLES_HPP
#define MAHLER_TESTS_ORACLES_HPP

#include <optional>
#include <stdexcept>

#include "mahler/mahler.hpp"

namespace mahler::tests {

// Brute-force counterparts of library operations, written directly from the
// defining formulas and independent of the fast paths they check.

// min over P(L) of v*ell^i + j, scanning the operator's coefficients.
template <FieldScalar K>
Rational oracle_image_min(const MahlerOperator<K>& op, const Rational& v) {
    std::optional<Rational> best;
    for (int i = 0; i <= op.order(); ++i) {
        const Rational scale(pow_int(op.ell(), static_cast<unsigned long>(i)));
        for (const auto& [j, c] : op.coefficient(i).terms()) {
            Rational cand = v * scale + Rational(j);
            if (!best || cand < *best) best = std::move(cand);
        }
    }
    if (!best) throw std::logic_error("oracle_image_min: empty operator");
    return *best;
}

// max over P(L) of (q - j) / ell^i.
template <FieldScalar K>
Rational oracle_image_min_inverse(const MahlerOperator<K>& op, const Rational& q) {
    std::optional<Rational> best;
    for (int i = 0; i <= op.order(); ++i) {
        const Rational scale(pow_int(op.ell(), static_cast<unsigned long>(i)));
        for (const auto& [j, c] : op.coefficient(i).terms()) {
            Rational cand = (q - Rational(j)) / scale;
            if (!best || cand > *best) best = std::move(cand);
        }
    }
    if (!best) throw std::logic_error("oracle_image_min_inverse: empty operator");
    return *best;
}

// d*ell^i*v integral for some i, by direct evaluation of the definition.
inline bool oracle_in_lattice(const Rational& v, const Int& d, const Int& ell, int max_i = 256) {
    Int scale = d;
    for (int i = 0; i <= max_i; ++i) {
        if (denominator(v * Rational(scale)) == 1) return true;
        scale *= ell;
    }
    return false;
}

// The least element of the receptacle above v, witnessed by a depth-limited
// run. A run capped at B enumerates exactly the uncapped level intersected
// with Q_{<=B}, so the first element found above v equals the depth-limited
// minimum; it is an upper witness for the true gap. Returns +inf only when
// the whole receptacle was materialized (the run stabilized uncapped).
inline ExtRational oracle_min_receptacle_above(const NewtonData& nd, const Rational& v,
                                               std::size_t depth) {
    // cheap probe: a receptacle that closes up early is fully materialized
    try {
        const auto uncapped = compute_receptacle(nd, std::min<std::size_t>(depth, 12), std::nullopt, 5000);
        if (uncapped.stabilized_early()) {
            for (const auto& x : uncapped.final_level())
                if (x > v) return ExtRational(x);
            return ExtRational::pos_inf();
        }
    } catch (const budget_exceeded&) {
    }
    Rational cap = v + 1;
    for (int attempt = 0; attempt < 12; ++attempt) {
        const auto run = compute_receptacle(nd, depth, cap);
        for (const auto& x : run.final_level())
            if (x > v) return ExtRational(x);
        cap = cap + (cap - v);
    }
    throw std::logic_error("oracle_min_receptacle_above: no element found above v");
}

// Depth-limited gap value: min of the receptacle above v, minus v.
inline ExtRational oracle_epsilon(const NewtonData& nd, const Rational& v, std::size_t depth) {
    return oracle_min_receptacle_above(nd, v, depth) - ExtRational(v);
}

// Membership of v decided from the defining recursion run to the given
// depth; capping at v is exact for this question.
inline bool oracle_receptacle_contains(const NewtonData& nd, const Rational& v, std::size_t depth) {
    return compute_receptacle(nd, depth, v).final_level().contains(v);
}

// The solving-support recursion of the uncapped theorem, with receptacle
// membership decided point by point through the decision procedure.
inline SortedRationalSet oracle_rset(const NewtonData& nd, const SortedRationalSet& exponents) {
    const MembershipOracle membership(nd);
    std::vector<Rational> seed_elems;
    for (const auto& e : exponents)
        if (membership.contains(e)) seed_elems.push_back(e);
    SortedRationalSet current =
        SortedRationalSet(std::move(seed_elems)).set_union(nd.neg_slopes());
    for (;;) {
        std::vector<Rational> next_elems;
        for (const auto& p : nd.points) {
            for (const auto& r : current) {
                Rational cand = (psi_min(nd, r) - Rational(p.ordinate)) / Rational(p.scale);
                if (membership.contains(cand)) next_elems.push_back(std::move(cand));
            }
        }
        SortedRationalSet next = SortedRationalSet(std::move(next_elems)).set_union(current);
        if (next == current) return current;
        current = std::move(next);
    }
}

}  // namespace mahler::tests

#endif
