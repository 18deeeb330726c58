#ifndef MAHLER_EPSILON_HPP
#define MAHLER_EPSILON_HPP

#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "mahler/maps.hpp"
#include "mahler/newton.hpp"

namespace mahler {

// Certified positive lower bounds on the gap function
//   epsilon(v) = min of the receptacle elements above v, minus v,
// and on tau, the uniform gap bound at the slope points. The recursion
// follows the predecessor sets: a bound at w is assembled from bounds at the
// elements of predecessor_set(w), with closed forms at and below -mu_kappa.

struct EpsilonContext {
    const NewtonData* newton = nullptr;

    // theta[k]: certified lower bound on epsilon(-mu_k); written once,
    // seeded in descending k before any query that needs it
    std::map<int, Rational> theta;

    std::map<std::pair<int, Rational>, Rational> param_memo;
    std::map<std::pair<int, Rational>, Rational> interval_memo;

    // recursion-height witness for the interval recursion
    bool height_check_active = false;
    Rational height_budget;
    long long depth = 0;

    // when set, every recursion step logs one line
    std::ostream* trace = nullptr;
};

Rational epsilon_lb_param(EpsilonContext& ctx, int kappa0, const Rational& v);
std::pair<Rational, Rational> epsilon_lb_interval(EpsilonContext& ctx, int kappa0, const Rational& w);

namespace detail {

// V_1: one expansion step of the slope set
inline SortedRationalSet level_one(const NewtonData& nd) {
    SortedRationalSet out;
    for (const auto& v : nd.neg_slopes()) out = out.set_union(successor_set(nd, v));
    return out;
}

// least element of successor_set(w) other than w itself, +inf if none
inline ExtRational min_successor_above(const NewtonData& nd, const Rational& w) {
    for (const auto& s : successor_set(nd, w))
        if (s > w) return ExtRational(s);
    return ExtRational::pos_inf();
}

// restores the height-witness state of the enclosing recursion tree
struct TreeScope {
    EpsilonContext& ctx;
    bool saved_active;
    Rational saved_budget;
    long long saved_depth;

    TreeScope(EpsilonContext& c, Rational budget)
        : ctx(c), saved_active(c.height_check_active), saved_budget(c.height_budget), saved_depth(c.depth) {
        ctx.height_check_active = true;
        ctx.height_budget = std::move(budget);
        ctx.depth = 0;
    }
    ~TreeScope() {
        ctx.height_check_active = saved_active;
        ctx.height_budget = std::move(saved_budget);
        ctx.depth = saved_depth;
    }
};

inline void require_theta(const EpsilonContext& ctx, int from_k) {
    for (int k = from_k; k <= ctx.newton->kappa(); ++k)
        if (!ctx.theta.count(k))
            throw std::invalid_argument("epsilon bound: theta_" + std::to_string(k) + " not seeded");
}

}  // namespace detail

// Lower bound on epsilon(v), valid when either kappa0 == kappa and
// v <= -mu_kappa, or kappa0 < kappa, v <= -mu_{kappa0}, and theta_{kappa0+1}
// through theta_kappa hold certified bounds.
inline Rational epsilon_lb_param(EpsilonContext& ctx, int kappa0, const Rational& v) {
    const NewtonData& nd = *ctx.newton;
    const int kappa = nd.kappa();
    if (!nd.in_lattice(v)) throw std::invalid_argument("epsilon_lb_param: v outside the lattice");
    if (kappa0 < 0 || kappa0 > kappa) throw std::invalid_argument("epsilon_lb_param: bad kappa0");
    if (ExtRational(v) > -nd.mu_ext(kappa0))
        throw std::invalid_argument("epsilon_lb_param: v above -mu_{kappa0}");
    if (kappa0 < kappa) detail::require_theta(ctx, kappa0 + 1);

    const auto key = std::make_pair(kappa0, v);
    if (auto it = ctx.param_memo.find(key); it != ctx.param_memo.end()) return it->second;
    if (ctx.trace)
        *ctx.trace << "epsilon_lb_param(kappa0=" << kappa0 << ", v=" << to_string(v) << ")\n";

    Rational result;
    if (v < -nd.mu_max()) {
        result = -nd.mu_max() - v;
    } else if (v == -nd.mu_max()) {
        const auto rest = detail::level_one(nd).set_difference(SortedRationalSet{-nd.mu_max()});
        result = rest.empty() ? Rational(1) : rest.min() + nd.mu_max();
    } else {
        // locate v in (-mu_kappa, -mu_{kappa0}]; exactly one k in
        // {kappa0+1, ..., kappa} puts v at -mu_{k-1} or strictly inside
        // ]-mu_k, -mu_{k-1}[
        int k_at = 0, k_in = 0;
        for (int k = kappa0 + 1; k <= kappa; ++k) {
            if (k >= 2 && v == -nd.mu(k - 1)) {
                k_at = k;
                break;
            }
            if (ExtRational(v) > -nd.mu_ext(k) && ExtRational(v) < -nd.mu_ext(k - 1)) {
                k_in = k;
                break;
            }
        }
        if (k_in != 0) {
            // height witness for the predecessor recursion rooted here
            const Rational step = mahler::min(ExtRational(ctx.theta.at(k_in)),
                                              ExtRational(pow_rational(nd.d * pow_int(nd.ell, static_cast<unsigned long>(nd.n)), -1)))
                                      .value();
            detail::TreeScope scope(ctx, Rational(nd.n + 1) * (v + nd.mu(k_in)) / step +
                                             Rational(nd.lattice_height(v)) + 1);
            result = epsilon_lb_interval(ctx, k_in - 1, v).second;
        } else if (k_at != 0) {
            const int k = k_at;
            ExtRational best = ExtRational::pos_inf();
            for (const auto& wprime : predecessor_set(nd, v)) {
                const Rational m = epsilon_lb_param(ctx, k - 1, wprime);
                const long long shift = predecessor_index(nd, v, wprime) - nd.alpha[static_cast<std::size_t>(k) - 2];
                best = mahler::min(best, ExtRational(m * pow_rational(nd.ell, shift)));
            }
            best = mahler::min(best, nd.mu_ext(k - 1) - nd.mu_ext(k - 2));
            best = mahler::min(best, detail::min_successor_above(nd, v) + ExtRational(nd.mu(k - 1)));
            if (!best.is_finite() || best.value() <= 0)
                throw std::logic_error("epsilon_lb_param: no positive candidate");
            result = best.value();
        } else {
            throw std::invalid_argument("epsilon_lb_param: v could not be located");
        }
    }

    ctx.param_memo.emplace(key, result);
    return result;
}

// Lower bound on epsilon(w) for w < -mu_{kappa0}, kappa0 < kappa, assembled
// over the predecessor tree of w. Returns (w, bound).
inline std::pair<Rational, Rational> epsilon_lb_interval(EpsilonContext& ctx, int kappa0, const Rational& w) {
    const NewtonData& nd = *ctx.newton;
    const int kappa = nd.kappa();
    if (!nd.in_lattice(w)) throw std::invalid_argument("epsilon_lb_interval: w outside the lattice");
    if (kappa0 < 0 || kappa0 >= kappa) throw std::invalid_argument("epsilon_lb_interval: bad kappa0");
    if (!(ExtRational(w) < -nd.mu_ext(kappa0)))
        throw std::invalid_argument("epsilon_lb_interval: w not below -mu_{kappa0}");
    detail::require_theta(ctx, kappa0 + 1);

    const auto key = std::make_pair(kappa0, w);
    if (auto it = ctx.interval_memo.find(key); it != ctx.interval_memo.end()) return {w, it->second};
    if (ctx.trace)
        *ctx.trace << "epsilon_lb_interval(kappa0=" << kappa0 << ", w=" << to_string(w)
                   << ", depth=" << ctx.depth << ")\n";

    ++ctx.depth;
    if (ctx.height_check_active && Rational(ctx.depth - 1) > ctx.height_budget) {
        --ctx.depth;
        throw std::logic_error("epsilon_lb_interval: recursion exceeded its certified height");
    }

    Rational result;
    const Rational& theta_next = ctx.theta.at(kappa0 + 1);
    const Rational leaf_edge = -nd.mu(kappa0 + 1) + theta_next;
    if (w < leaf_edge) {
        if (w < -nd.mu(kappa0 + 1)) {
            result = epsilon_lb_param(ctx, kappa0 + 1, w);
        } else {
            result = leaf_edge - w;
        }
    } else {
        ExtRational best = ExtRational::pos_inf();
        for (const auto& v : predecessor_set(nd, w)) {
            const auto [wprime, m] = epsilon_lb_interval(ctx, kappa0, v);
            const long long shift = predecessor_index(nd, w, wprime) - nd.alpha[static_cast<std::size_t>(kappa0)];
            best = mahler::min(best, ExtRational(m * pow_rational(nd.ell, shift)));
        }
        best = mahler::min(best, -nd.mu_ext(kappa0) - ExtRational(w));
        best = mahler::min(best, detail::min_successor_above(nd, w) - ExtRational(w));
        if (!best.is_finite() || best.value() <= 0)
            throw std::logic_error("epsilon_lb_interval: no positive candidate");
        result = best.value();
    }

    --ctx.depth;
    ctx.interval_memo.emplace(key, result);
    return {w, result};
}

// Seeds theta_kappa, ..., theta_1 in descending order.
inline EpsilonContext make_epsilon_context(const NewtonData& nd) {
    EpsilonContext ctx;
    ctx.newton = &nd;
    for (int k = nd.kappa(); k >= 1; --k) ctx.theta.emplace(k, epsilon_lb_param(ctx, k, -nd.mu(k)));
    return ctx;
}

inline Rational epsilon_lower_bound(const NewtonData& nd, const Rational& v) {
    if (!nd.in_lattice(v)) throw std::invalid_argument("epsilon_lower_bound: v outside the lattice");
    EpsilonContext ctx = make_epsilon_context(nd);
    return epsilon_lb_param(ctx, 0, v);
}

// min over the seeded theta values and 1/(d * ell^n)
inline Rational tau_lower_bound_from(const EpsilonContext& ctx) {
    const NewtonData& nd = *ctx.newton;
    Rational result = pow_rational(nd.d * pow_int(nd.ell, static_cast<unsigned long>(nd.n)), -1);
    for (const auto& [k, t] : ctx.theta)
        if (t < result) result = t;
    return result;
}

inline Rational tau_lower_bound(const NewtonData& nd) {
    EpsilonContext ctx = make_epsilon_context(nd);
    return tau_lower_bound_from(ctx);
}

}  // namespace mahler

#endif
