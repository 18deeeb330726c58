#ifndef MAHLER_MAPS_HPP
#define MAHLER_MAPS_HPP

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "mahler/newton.hpp"
#include "mahler/rational.hpp"
#include "mahler/rational_set.hpp"

namespace mahler {

// The three maps attached to the support of an operator:
//   psi_set(v): the exponents of L(z^v), that is {v*ell^i + j} over P(L);
//   psi_min(v): their minimum, an increasing bijection of Q;
//   psi_inv(q): its inverse, max (q - j)/ell^i over P(L).
// The direct scans over P(L) are the authoritative definitions; psi_min and
// psi_inv also have vertex-formula fast paths that locate the argument
// between consecutive polygon slopes, cross-checked in debug builds.

inline SortedRationalSet psi_set(const NewtonData& nd, const Rational& v) {
    std::vector<Rational> out;
    out.reserve(nd.points.size());
    for (const auto& p : nd.points) out.push_back(v * Rational(p.scale) + Rational(p.ordinate));
    return SortedRationalSet(std::move(out));
}

inline Rational psi_min_direct(const NewtonData& nd, const Rational& v) {
    bool first = true;
    Rational best;
    for (const auto& p : nd.points) {
        Rational cand = v * Rational(p.scale) + Rational(p.ordinate);
        if (first || cand < best) {
            best = std::move(cand);
            first = false;
        }
    }
    return best;
}

inline Rational psi_inv_direct(const NewtonData& nd, const Rational& q) {
    bool first = true;
    Rational best;
    for (const auto& p : nd.points) {
        Rational cand = (q - Rational(p.ordinate)) / Rational(p.scale);
        if (first || cand > best) {
            best = std::move(cand);
            first = false;
        }
    }
    return best;
}

namespace detail {

// Vertex p_t whose projection realizes the minimum for arguments in the
// slope interval that contains v: the largest t with -mu_{kappa - t} <= v
// mapped to vertex index kappa - t - 1, clamped to the end vertices.
inline std::size_t vertex_for(const NewtonData& nd, const Rational& v,
                              const std::vector<Rational>& increasing_keys) {
    const auto it = std::upper_bound(increasing_keys.begin(), increasing_keys.end(), v);
    const auto t = static_cast<long long>(it - increasing_keys.begin()) - 1;
    return static_cast<std::size_t>(static_cast<long long>(nd.kappa()) - 1 - t);
}

}  // namespace detail

inline Rational psi_min(const NewtonData& nd, const Rational& v) {
    const std::size_t k = detail::vertex_for(nd, v, nd.minus_slopes);
    Rational result = v * Rational(nd.vertex_scales[k]) + Rational(nd.beta[k]);
    assert(result == psi_min_direct(nd, v));
    return result;
}

inline Rational psi_inv(const NewtonData& nd, const Rational& q) {
    const std::size_t k = detail::vertex_for(nd, q, nd.inverse_thresholds);
    Rational result = (q - Rational(nd.beta[k])) / Rational(nd.vertex_scales[k]);
    assert(result == psi_inv_direct(nd, q));
    return result;
}

inline ExtRational psi_min(const NewtonData& nd, const ExtRational& v) {
    if (v.is_pos_inf()) return v;
    if (!v.is_finite()) throw std::invalid_argument("psi_min: -inf argument");
    return ExtRational(psi_min(nd, v.value()));
}

inline ExtRational psi_inv(const NewtonData& nd, const ExtRational& q) {
    if (q.is_pos_inf()) return q;
    if (!q.is_finite()) throw std::invalid_argument("psi_inv: -inf argument");
    return ExtRational(psi_inv(nd, q.value()));
}

// One step of the receptacle recursion: the inverse image of the exponents
// of L(z^v). Its minimum is v itself.
inline SortedRationalSet successor_set(const NewtonData& nd, const Rational& v) {
    std::vector<Rational> out;
    const auto image = psi_set(nd, v);
    out.reserve(image.size());
    for (const auto& q : image) out.push_back(psi_inv(nd, q));
    return SortedRationalSet::from_sorted(std::move(out));  // psi_inv is increasing
}

// Candidate predecessors of w: the v != w whose image set contains the image
// minimum of w, read off P(L) as (psi_min(w) - beta)/ell^alpha.
inline SortedRationalSet predecessor_set(const NewtonData& nd, const Rational& w) {
    const Rational base = psi_min(nd, w);
    std::vector<Rational> out;
    out.reserve(nd.points.size());
    for (const auto& p : nd.points) {
        Rational cand = (base - Rational(p.ordinate)) / Rational(p.scale);
        if (cand != w) out.push_back(std::move(cand));
    }
    return SortedRationalSet(std::move(out));
}

// The least operator index alpha witnessing wprime as a predecessor of w.
inline int predecessor_index(const NewtonData& nd, const Rational& w, const Rational& wprime) {
    const Rational base = psi_min(nd, w);
    if (wprime == w) throw std::invalid_argument("predecessor_index: wprime equals w");
    for (const auto& p : nd.points)  // points are ordered by increasing order index
        if ((base - Rational(p.ordinate)) / Rational(p.scale) == wprime) return p.order;
    throw std::invalid_argument("predecessor_index: wprime is not a predecessor of w");
}

}  // namespace mahler

#endif
