#ifndef MAHLER_TESTS_FIXTURES_HPP
#define MAHLER_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "mahler/mahler.hpp"

namespace mahler::tests {

inline Rational rat(std::string_view text) {
    auto parsed = parse_rational(text);
    if (!parsed) throw std::invalid_argument("rat: bad literal " + std::string(text));
    return *parsed;
}

inline SortedRationalSet set_of(std::initializer_list<std::string_view> texts) {
    std::vector<Rational> values;
    for (auto t : texts) values.push_back(rat(t));
    return SortedRationalSet(std::move(values));
}

// The order-2 operator with the Rudin-Shapiro twisted equation behind it.
inline MahlerOperator<Rational> rudin_shapiro() {
    return parse_operator({Int(2), "z*M^2 + (z-1)*M - 2"});
}

// Order-2 operator with the two-solution Hahn/constant pair, ell = 2.
inline MahlerOperator<Rational> chain_example() {
    return parse_operator({Int(2), "z^2*M^2 - (z^2+z)*M + z"});
}

inline MahlerOperator<Rational> shift_minus_one() {
    return parse_operator({Int(2), "M - 1"});
}

// The 19 exponent/coefficient pairs of the reference truncation on the height-8 set.
inline FiniteHahnSeries<Rational> rudin_shapiro_truncation() {
    FiniteHahnSeries<Rational> f;
    auto term = [&f](long long a, long long b, long long p, long long q) {
        f.add_term(make_rational(a, b), make_rational(p, q));
    };
    term(-1, 2, 1, 1);
    term(-1, 4, -2, 1);
    term(-1, 8, 4, 1);
    term(0, 1, -1, 3);
    term(1, 2, 1, 1);
    term(3, 4, -2, 1);
    term(7, 8, 4, 1);
    term(1, 1, -5, 6);
    term(3, 2, 1, 1);
    term(7, 4, -2, 1);
    term(2, 1, 11, 12);
    term(5, 2, -1, 1);
    term(3, 1, -5, 12);
    term(7, 2, 1, 1);
    term(4, 1, -23, 24);
    term(5, 1, 13, 24);
    term(6, 1, -7, 24);
    term(7, 1, -5, 24);
    term(8, 1, -1, 48);
    return f;
}

// Deterministic random operators: order <= max_order, coefficient degree
// <= max_degree, small integer coefficients, a_0 and a_n forced nonzero.
inline MahlerOperator<Rational> random_operator(std::mt19937_64& rng, int max_order = 3,
                                                int max_degree = 4, long long ell_choices = 2) {
    std::uniform_int_distribution<int> order_dist(1, max_order);
    std::uniform_int_distribution<int> degree_dist(0, max_degree);
    std::uniform_int_distribution<long long> coeff_dist(-4, 4);
    std::uniform_int_distribution<long long> ell_dist(0, ell_choices - 1);

    const Int ell(2 + ell_dist(rng));
    const int order = order_dist(rng);
    std::vector<Polynomial<Rational>> coeffs(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) {
        Polynomial<Rational> p;
        for (int tries = 0; p.is_zero() && tries < 8; ++tries) {
            p = Polynomial<Rational>();
            const int deg = degree_dist(rng);
            for (int e = 0; e <= deg; ++e) p.add_term(e, Rational(coeff_dist(rng)));
        }
        if (p.is_zero()) p = Polynomial<Rational>(Rational(1));
        coeffs[static_cast<std::size_t>(i)] = std::move(p);
    }
    // middle coefficients may be zero; ends may not
    if (coeffs.front().is_zero()) coeffs.front() = Polynomial<Rational>(Rational(1));
    if (coeffs.back().is_zero()) coeffs.back() = Polynomial<Rational>(Rational(1));
    return MahlerOperator<Rational>(ell, std::move(coeffs));
}

inline Rational random_rational(std::mt19937_64& rng, long long num_range = 64,
                                long long den_range = 32) {
    std::uniform_int_distribution<long long> num_dist(-num_range, num_range);
    std::uniform_int_distribution<long long> den_dist(1, den_range);
    return make_rational(num_dist(rng), den_dist(rng));
}

// Random finite-support series with exponents from the given pool.
inline FiniteHahnSeries<Rational> random_series(std::mt19937_64& rng, int max_terms = 6) {
    std::uniform_int_distribution<int> count_dist(1, max_terms);
    std::uniform_int_distribution<long long> coeff_dist(-5, 5);
    FiniteHahnSeries<Rational> f;
    const int count = count_dist(rng);
    for (int t = 0; t < count; ++t) f.add_term(random_rational(rng), Rational(coeff_dist(rng)));
    return f;
}

}  // namespace mahler::tests

#endif
