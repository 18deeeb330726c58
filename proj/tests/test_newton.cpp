#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mahler;
using mahler::tests::rat;

TEST_CASE("polygon of the order-2 fixture", "[newton]") {
    const auto nd = build_polygon(tests::rudin_shapiro());
    REQUIRE(nd.alpha == std::vector<int>{0, 1, 2});
    REQUIRE(nd.beta == std::vector<long long>{0, 0, 1});
    REQUIRE(nd.slopes == std::vector<Rational>{Rational(0), rat("1/2")});
    REQUIRE(nd.d == 2);
    REQUIRE(nd.kappa() == 2);
    REQUIRE(nd.n == 2);
    REQUIRE(nd.neg_slopes() == tests::set_of({"-1/2", "0"}));
    REQUIRE(nd.points.size() == 4);
}

TEST_CASE("polygon of the shift fixture has a single flat slope", "[newton]") {
    const auto nd = build_polygon(tests::shift_minus_one());
    REQUIRE(nd.slopes == std::vector<Rational>{Rational(0)});
    REQUIRE(nd.alpha == std::vector<int>{0, 1});
    REQUIRE(nd.beta == std::vector<long long>{0, 0});
    REQUIRE(nd.d == 1);
}

TEST_CASE("polygon of the chain fixture drops the interior point", "[newton]") {
    const auto nd = build_polygon(tests::chain_example());
    REQUIRE(nd.alpha == std::vector<int>{0, 1, 2});
    REQUIRE(nd.beta == std::vector<long long>{1, 1, 2});
    REQUIRE(nd.slopes == std::vector<Rational>{Rational(0), rat("1/2")});
    REQUIRE(nd.d == 2);
}

TEST_CASE("vanishing middle coefficients leave no support points", "[newton]") {
    const auto op = parse_operator({Int(2), "z*M^2 - 1"});
    const auto nd = build_polygon(op);
    REQUIRE(nd.points.size() == 2);
    REQUIRE(nd.alpha == std::vector<int>{0, 2});
    REQUIRE(nd.slopes == std::vector<Rational>{rat("1/3")});
    REQUIRE(nd.d == 3);
    REQUIRE(nd.in_lattice(rat("-1/3")));
    REQUIRE(nd.in_lattice(rat("1/6")));
    REQUIRE_FALSE(nd.in_lattice(rat("1/5")));
}

TEST_CASE("slopes satisfy the two-witness characterization", "[newton]") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 120; ++t) {
        const auto op = tests::random_operator(rng);
        const auto nd = build_polygon(op);

        for (const auto& mu : nd.slopes) {
            // minimum of val a_i - ell^i * mu over i, attained at >= 2 indices
            std::optional<Rational> min_value;
            int attained = 0;
            std::vector<Rational> projections;
            for (int i = 0; i <= op.order(); ++i) {
                if (op.coefficient(i).is_zero()) continue;
                const Rational proj = Rational(op.coefficient(i).val()) -
                                      Rational(pow_int(op.ell(), static_cast<unsigned long>(i))) * mu;
                projections.push_back(proj);
                if (!min_value || proj < *min_value) min_value = proj;
            }
            for (const auto& proj : projections)
                if (proj == *min_value) ++attained;
            REQUIRE(attained >= 2);
        }

        // every support point projects at or above the edge through p_{k-1}, p_k
        for (std::size_t k = 1; k < nd.alpha.size(); ++k) {
            const Rational& mu = nd.slopes[k - 1];
            const Rational edge = Rational(nd.beta[k]) - Rational(nd.vertex_scales[k]) * mu;
            REQUIRE(edge == Rational(nd.beta[k - 1]) - Rational(nd.vertex_scales[k - 1]) * mu);
            for (const auto& p : nd.points)
                REQUIRE(Rational(p.ordinate) - Rational(p.scale) * mu >= edge);
        }
    }
}

TEST_CASE("inhomogeneous slopes on fixtures", "[newton]") {
    const auto rs = tests::rudin_shapiro();
    REQUIRE(inhomogeneous_slopes(rs, rat("-1/2")).min() == rat("1/4"));
    REQUIRE(inhomogeneous_slopes(rs, Rational(0)).min() == Rational(0));
    REQUIRE(inhomogeneous_slopes(tests::shift_minus_one(), Rational(1)).min() == Rational(-1));
}

TEST_CASE("the least inhomogeneous slope inverts the image minimum", "[newton]") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 300; ++t) {
        const auto op = tests::random_operator(rng);
        const auto nd = build_polygon(op);
        const Rational q = tests::random_rational(rng);
        REQUIRE(-inhomogeneous_slopes(op, q).min() == psi_inv(nd, q));
    }
}
