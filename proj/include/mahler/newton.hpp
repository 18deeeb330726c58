#ifndef MAHLER_NEWTON_HPP
#define MAHLER_NEWTON_HPP

#include <cassert>
#include <stdexcept>
#include <vector>

#include "mahler/lattice.hpp"
#include "mahler/mahler_operator.hpp"
#include "mahler/rational.hpp"
#include "mahler/rational_set.hpp"

namespace mahler {

// A point (ell^order, ordinate) of the operator's support, geometry only.
struct GridPoint {
    int order;
    Int scale;  // ell^order
    long long ordinate;
};

// Lower convex hull data of the support of a Mahler operator: vertices
// p_k = (ell^alpha_k, beta_k), the strictly increasing slope list, and the
// least common denominator d of the slopes. Everything downstream of the
// operator (maps, receptacle, gap bounds, solving support) reads this.
class NewtonData {
public:
    Int ell;
    int n = 0;
    std::vector<GridPoint> points;   // all of P(L), ordered by (order, ordinate)
    std::vector<int> alpha;          // alpha_0 = 0, ..., alpha_kappa = n
    std::vector<long long> beta;     // beta_k = val a_{alpha_k}
    std::vector<Rational> slopes;    // mu_1 < ... < mu_kappa
    Int d;                           // lcm of slope denominators

    int kappa() const { return static_cast<int>(slopes.size()); }

    // mu_k for k in 1..kappa
    const Rational& mu(int k) const { return slopes.at(static_cast<std::size_t>(k) - 1); }

    // mu_k for k in 0..kappa+1 with mu_0 = -inf and mu_{kappa+1} = +inf
    ExtRational mu_ext(int k) const {
        if (k == 0) return ExtRational::neg_inf();
        if (k == kappa() + 1) return ExtRational::pos_inf();
        return ExtRational(mu(k));
    }

    const Rational& mu_max() const { return slopes.back(); }

    // -S(L), the valuation candidates of nonzero solutions
    SortedRationalSet neg_slopes() const {
        std::vector<Rational> out;
        out.reserve(slopes.size());
        for (auto it = slopes.rbegin(); it != slopes.rend(); ++it) out.push_back(-*it);
        return SortedRationalSet::from_sorted(std::move(out));
    }

    bool in_lattice(const Rational& v) const { return mahler::in_lattice(v, d, ell); }
    long long lattice_height(const Rational& v) const { return mahler::lattice_height(v, d, ell); }

    // precomputed for the fast map evaluations; see maps.hpp
    std::vector<Rational> minus_slopes;        // -mu_kappa < ... < -mu_1
    std::vector<Rational> inverse_thresholds;  // image minimum at each of the above
    std::vector<Int> vertex_scales;            // ell^alpha_k per vertex
};

namespace detail {

// Strictly increasing abscissas in, lower-hull vertex indices out. Collinear
// interior points are dropped so the vertices are extreme points.
template <typename X, typename Y>
std::vector<std::size_t> lower_hull_indices(const std::vector<X>& xs, const std::vector<Y>& ys) {
    std::vector<std::size_t> hull;
    for (std::size_t p = 0; p < xs.size(); ++p) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull[hull.size() - 1];
            // cross((a->b), (a->p)) <= 0 means b is on or above chord a-p
            const auto cross = (xs[b] - xs[a]) * (ys[p] - ys[a]) - (ys[b] - ys[a]) * (xs[p] - xs[a]);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

}  // namespace detail

template <FieldScalar K>
NewtonData build_polygon(const MahlerOperator<K>& op) {
    NewtonData nd;
    nd.ell = op.ell();
    nd.n = op.order();

    std::vector<int> order_of;       // operator index of each hull candidate
    std::vector<Int> xs;             // ell^i
    std::vector<Int> ys;             // val a_i
    for (int i = 0; i <= op.order(); ++i) {
        const auto& a = op.coefficient(i);
        const Int scale = pow_int(op.ell(), static_cast<unsigned long>(i));
        for (const auto& [j, c] : a.terms()) nd.points.push_back(GridPoint{i, scale, j});
        if (a.is_zero()) continue;
        order_of.push_back(i);
        xs.push_back(scale);
        ys.push_back(Int(a.val()));
    }

    const auto hull = detail::lower_hull_indices(xs, ys);
    assert(hull.size() >= 2);
    for (std::size_t idx : hull) {
        nd.alpha.push_back(order_of[idx]);
        nd.beta.push_back(static_cast<long long>(ys[idx]));
    }

    nd.d = 1;
    for (std::size_t k = 1; k < hull.size(); ++k) {
        Rational mu = make_rational(ys[hull[k]] - ys[hull[k - 1]], xs[hull[k]] - xs[hull[k - 1]]);
        nd.d = boost::multiprecision::lcm(nd.d, denominator(mu));
        nd.slopes.push_back(std::move(mu));
    }

    for (int a : nd.alpha) nd.vertex_scales.push_back(pow_int(nd.ell, static_cast<unsigned long>(a)));

    // thresholds for the fast inverse map: the image minimum at each -mu_k,
    // increasing along the increasing -mu list
    for (int k = nd.kappa(); k >= 1; --k) {
        const std::size_t vk = static_cast<std::size_t>(k);
        nd.minus_slopes.push_back(-nd.mu(k));
        nd.inverse_thresholds.push_back(-nd.mu(k) * Rational(nd.vertex_scales[vk]) + Rational(nd.beta[vk]));
    }
    return nd;
}

// Slopes of the Newton polygon of the equation with monomial right-hand side
// z^q: lower hull of {(0, q)} and the operator's valuation points.
template <FieldScalar K>
SortedRationalSet inhomogeneous_slopes(const MahlerOperator<K>& op, const Rational& q) {
    std::vector<Rational> xs{Rational(0)};
    std::vector<Rational> ys{q};
    for (int i = 0; i <= op.order(); ++i) {
        const auto& a = op.coefficient(i);
        if (a.is_zero()) continue;
        xs.emplace_back(pow_int(op.ell(), static_cast<unsigned long>(i)));
        ys.emplace_back(a.val());
    }
    const auto hull = detail::lower_hull_indices(xs, ys);
    std::vector<Rational> out;
    for (std::size_t k = 1; k < hull.size(); ++k)
        out.push_back((ys[hull[k]] - ys[hull[k - 1]]) / (xs[hull[k]] - xs[hull[k - 1]]));
    return SortedRationalSet::from_sorted(std::move(out));
}

}  // namespace mahler

#endif
