#ifndef MAHLER_RSET_HPP
#define MAHLER_RSET_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mahler/epsilon.hpp"
#include "mahler/lattice.hpp"
#include "mahler/maps.hpp"
#include "mahler/newton.hpp"
#include "mahler/receptacle.hpp"

namespace mahler {

// The finite solving support R: a superset of E and the slope points, closed
// in the sense that no element outside it maps into it under one successor
// step. Restriction to R is an isomorphism from the solution space onto the
// kernel computed in solver.hpp.
struct RsetRun {
    std::vector<SortedRationalSet> levels;  // strictly growing prefix R_0, ..., R_t
    SortedRationalSet final;                // R = R_t, first repeated level
    SortedRationalSet filtered_exponents;   // E intersected with the lattice
    long long height_h = 0;                 // H
    Rational bound_n;                       // N
    long long receptacle_depth = 0;         // M
    Rational tau_lb;
    std::size_t receptacle_size = 0;  // capped level count at depth M
};

// floor((n+1)(N + mu_kappa)/tau_lb) + H: stabilization index bound.
inline long long rset_step_bound(const NewtonData& nd, const SortedRationalSet& exponents,
                                 const Rational& tau_lb) {
    if (tau_lb <= 0) throw std::invalid_argument("rset_step_bound: tau_lb must be positive");
    long long height = 0;
    Rational max_elem = -nd.mu(1);  // max of -S(L)
    for (const auto& e : exponents) {
        if (!nd.in_lattice(e)) continue;
        height = std::max(height, nd.lattice_height(e));
        if (e > max_elem) max_elem = e;
    }
    Rational n_cap = max_elem < 0 ? Rational(0) : max_elem;
    return static_cast<long long>(floor_rational(Rational(nd.n + 1) * (n_cap + nd.mu_max()) / tau_lb)) +
           height;
}

inline RsetRun compute_rset(const NewtonData& nd, const SortedRationalSet& exponents,
                            std::size_t element_budget = kDefaultElementBudget) {
    RsetRun run;

    // exponents outside the lattice cannot meet the receptacle; they come
    // back as forced-zero coefficients in solver output
    std::vector<Rational> filtered;
    for (const auto& e : exponents)
        if (nd.in_lattice(e)) filtered.push_back(e);
    run.filtered_exponents = SortedRationalSet::from_sorted(std::move(filtered));

    run.height_h = 0;
    for (const auto& e : run.filtered_exponents)
        run.height_h = std::max(run.height_h, nd.lattice_height(e));

    const SortedRationalSet seed = run.filtered_exponents.set_union(nd.neg_slopes());
    run.bound_n = seed.max() < 0 ? Rational(0) : seed.max();

    run.tau_lb = tau_lower_bound(nd);
    const long long step_bound = rset_step_bound(nd, exponents, run.tau_lb);
    run.receptacle_depth = static_cast<long long>(nd.n + 1) * step_bound;

    // capping the receptacle levels at N is exact here: every level of the R
    // recursion stays at or below max(E union -S(L)) <= N
    const auto receptacle = compute_receptacle(nd, static_cast<std::size_t>(run.receptacle_depth),
                                               run.bound_n, element_budget);
    const SortedRationalSet& vhat = receptacle.final_level();
    run.receptacle_size = vhat.size();

    SortedRationalSet current = seed.set_intersection(vhat);
    run.levels.push_back(current);
    for (;;) {
        std::vector<Rational> next_elems;
        for (const auto& p : nd.points) {
            const Rational scale(p.scale);
            const Rational shift(p.ordinate);
            for (const auto& r : current) {
                Rational candidate = (psi_min(nd, r) - shift) / scale;
                if (vhat.contains(candidate)) next_elems.push_back(std::move(candidate));
            }
        }
        SortedRationalSet next = SortedRationalSet(std::move(next_elems)).set_union(current);
        if (next == current) break;
        current = std::move(next);
        run.levels.push_back(current);
        if (static_cast<long long>(run.levels.size()) - 1 > step_bound)
            throw std::logic_error("compute_rset: recursion exceeded its certified step bound");
    }
    run.final = current;
    return run;
}

// Finite probe of the closure property: the slope points lie in R and no
// probe element outside R has a successor inside R.
inline bool check_star_property(const NewtonData& nd, const SortedRationalSet& r_set,
                                const SortedRationalSet& probe) {
    if (!nd.neg_slopes().subset_of(r_set)) return false;
    for (const auto& v : probe.set_difference(r_set))
        if (!successor_set(nd, v).set_intersection(r_set).empty()) return false;
    return true;
}

}  // namespace mahler

#endif
