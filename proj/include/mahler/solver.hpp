#ifndef MAHLER_SOLVER_HPP
#define MAHLER_SOLVER_HPP

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mahler/hahn_series.hpp"
#include "mahler/mahler_operator.hpp"
#include "mahler/maps.hpp"
#include "mahler/newton.hpp"
#include "mahler/rset.hpp"

namespace mahler {

// The square system cutting out the restrictions of solutions: one row per
// element of psi_min(R), one column per element of R, entry(delta, gamma)
// the coefficient of z^delta in L(z^gamma).
template <FieldScalar K = Rational>
struct LinearSystem {
    std::vector<Rational> row_exponents;  // psi_min(R), increasing
    std::vector<Rational> col_exponents;  // R, increasing
    std::vector<std::vector<K>> entries;  // row-major
};

template <FieldScalar K>
LinearSystem<K> assemble_system(const NewtonData& nd, const MahlerOperator<K>& op,
                                const SortedRationalSet& r_set) {
    LinearSystem<K> sys;
    sys.col_exponents.assign(r_set.begin(), r_set.end());
    sys.row_exponents.reserve(r_set.size());
    for (const auto& gamma : r_set) sys.row_exponents.push_back(psi_min(nd, gamma));
    sys.entries.assign(sys.row_exponents.size(), std::vector<K>(sys.col_exponents.size(), K(0)));

    const auto terms = support_points(op);
    for (std::size_t c = 0; c < sys.col_exponents.size(); ++c) {
        const Rational& gamma = sys.col_exponents[c];
        for (const auto& t : terms) {
            const Rational delta = gamma * Rational(t.abscissa) + Rational(t.ordinate);
            const auto it =
                std::lower_bound(sys.row_exponents.begin(), sys.row_exponents.end(), delta);
            if (it == sys.row_exponents.end() || *it != delta) continue;
            const auto r = static_cast<std::size_t>(it - sys.row_exponents.begin());
            sys.entries[r][c] = sys.entries[r][c] + t.coefficient;
        }
    }
    return sys;
}

// Exact nullspace basis. Row-reduces with a sparsest-pivot choice to keep
// coefficient growth down, then reads one vector per free column. Each basis
// vector is scaled so its entry at the smallest nonzero position is 1.
template <FieldScalar K>
std::vector<std::vector<K>> kernel_basis(const LinearSystem<K>& sys) {
    auto m = sys.entries;
    const std::size_t rows = m.size();
    const std::size_t cols = sys.col_exponents.size();

    auto nonzeros = [&](std::size_t r) {
        std::size_t count = 0;
        for (const auto& x : m[r])
            if (!(x == K(0))) ++count;
        return count;
    };

    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < cols && next_row < rows; ++c) {
        std::size_t best = rows;
        std::size_t best_weight = 0;
        for (std::size_t r = next_row; r < rows; ++r) {
            if (m[r][c] == K(0)) continue;
            const std::size_t w = nonzeros(r);
            if (best == rows || w < best_weight) {
                best = r;
                best_weight = w;
            }
        }
        if (best == rows) continue;
        std::swap(m[next_row], m[best]);

        const K inv_pivot = K(1) / m[next_row][c];
        for (std::size_t j = c; j < cols; ++j) m[next_row][j] = m[next_row][j] * inv_pivot;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == next_row || m[r][c] == K(0)) continue;
            const K factor = m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                m[r][j] = m[r][j] - factor * m[next_row][j];
        }
        pivots.emplace_back(next_row, c);
        ++next_row;
    }

    std::vector<bool> is_pivot_col(cols, false);
    for (const auto& [r, c] : pivots) is_pivot_col[c] = true;

    std::vector<std::vector<K>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot_col[f]) continue;
        std::vector<K> vec(cols, K(0));
        vec[f] = K(1);
        for (const auto& [r, c] : pivots) vec[c] = -m[r][f];
        for (const auto& x : vec) {
            if (x == K(0)) continue;
            const K inv = K(1) / x;
            for (auto& y : vec) y = y * inv;
            break;
        }
        basis.push_back(std::move(vec));
    }
    return basis;
}

// Rank of a family of series as vectors over the union of their supports.
template <FieldScalar K>
std::size_t family_rank(const std::vector<FiniteHahnSeries<K>>& family) {
    SortedRationalSet columns;
    for (const auto& f : family) columns = columns.set_union(f.support());
    std::vector<std::vector<K>> m;
    for (const auto& f : family) {
        std::vector<K> row;
        row.reserve(columns.size());
        for (const auto& e : columns) row.push_back(f.coefficient(e));
        m.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < columns.size() && rank < m.size(); ++c) {
        std::size_t r = rank;
        while (r < m.size() && m[r][c] == K(0)) ++r;
        if (r == m.size()) continue;
        std::swap(m[rank], m[r]);
        for (std::size_t other = rank + 1; other < m.size(); ++other) {
            if (m[other][c] == K(0)) continue;
            const K factor = m[other][c] / m[rank][c];
            for (std::size_t j = c; j < columns.size(); ++j)
                m[other][j] = m[other][j] - factor * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Everything a solve produces, kept together so callers can inspect the
// intermediate objects the result certifies against.
template <FieldScalar K = Rational>
struct SolveResult {
    NewtonData newton;
    RsetRun rset;
    LinearSystem<K> system;
    std::vector<FiniteHahnSeries<K>> basis_full;        // supported on R
    std::vector<FiniteHahnSeries<K>> basis_restricted;  // restricted to E

    std::size_t dimension() const { return basis_full.size(); }

    // equals dimension() whenever E covers the slope points; can drop below
    // it otherwise, since restriction is then only surjective
    std::size_t restricted_rank() const { return family_rank(basis_restricted); }
};

// End-to-end: polygon, tau bound, solving support, exact kernel. The
// restricted family generates the restrictions of all solutions to E, and is
// a basis whenever E contains the slope points.
template <FieldScalar K>
SolveResult<K> solve_truncations(const MahlerOperator<K>& op, const SortedRationalSet& exponents,
                                 std::size_t element_budget = kDefaultElementBudget) {
    SolveResult<K> result;
    result.newton = build_polygon(op);
    result.rset = compute_rset(result.newton, exponents, element_budget);
    result.system = assemble_system(result.newton, op, result.rset.final);
    for (const auto& vec : kernel_basis(result.system)) {
        FiniteHahnSeries<K> full;
        for (std::size_t c = 0; c < vec.size(); ++c)
            full.add_term(result.system.col_exponents[c], vec[c]);
        result.basis_restricted.push_back(full.restrict(exponents));
        result.basis_full.push_back(std::move(full));
    }
    return result;
}

template <FieldScalar K = Rational>
struct GreedyResult {
    FiniteHahnSeries<K> series;
    std::size_t steps = 0;
    bool hit_step_cap = false;
};

// Extends initial data supported on -S(L) one exponent at a time: the next
// exponent is the inverse image of the residual valuation, its coefficient
// the unique value killing that residual term. Stops once the next exponent
// passes the bound, the residual vanishes, or the step cap is reached.
template <FieldScalar K>
GreedyResult<K> greedy_extend_run(const MahlerOperator<K>& op, const FiniteHahnSeries<K>& initial,
                                  const Rational& bound, std::size_t max_steps = 100000,
                                  std::ostream* progress = nullptr) {
    const NewtonData nd = build_polygon(op);
    const SortedRationalSet neg_slopes = nd.neg_slopes();

    GreedyResult<K> result;
    result.series = initial;
    FiniteHahnSeries<K> residual = -apply_operator(op, result.series);
    while (!residual.is_zero()) {
        const Rational res_val = residual.val().value();
        const Rational gamma = psi_inv(nd, res_val);
        if (gamma > bound) break;
        if (result.steps >= max_steps) {
            result.hit_step_cap = true;
            break;
        }
        if (neg_slopes.contains(gamma))
            throw std::domain_error("greedy_extend: initial data does not extend");
        const FiniteHahnSeries<K> image = apply_operator(op, FiniteHahnSeries<K>::monomial(gamma));
        const K denom = image.coefficient(res_val);
        if (denom == K(0))
            throw std::domain_error("greedy_extend: initial data does not extend");
        const K coeff = residual.coefficient(res_val) / denom;
        result.series.add_term(gamma, coeff);
        residual = residual - image * coeff;
        ++result.steps;
        if (progress && result.steps % 1000 == 0)
            *progress << "greedy_extend: " << result.steps << " terms, at exponent "
                      << to_string(gamma) << "\n";
    }
    return result;
}

template <FieldScalar K>
FiniteHahnSeries<K> greedy_extend(const MahlerOperator<K>& op, const FiniteHahnSeries<K>& initial,
                                  const Rational& bound) {
    return greedy_extend_run(op, initial, bound).series;
}

// Order-1 equations have a nonzero solution exactly when the trailing
// coefficients of a_0 and a_1 are opposite.
template <FieldScalar K>
bool order_one_has_solution(const MahlerOperator<K>& op) {
    if (op.order() != 1) throw std::invalid_argument("order_one_has_solution: order 1 required");
    const auto& a0 = op.coefficient(0);
    const auto& a1 = op.coefficient(1);
    return a0.coefficient(a0.val()) == -a1.coefficient(a1.val());
}

}  // namespace mahler

#endif
