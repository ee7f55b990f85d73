#include <doctest.h>

#include <random>

#include "entire/series.hpp"
#include "helpers.hpp"

using namespace entire;
using testing::gaussian_1d;

TEST_CASE("make_series")
{
    SUBCASE("non-polynomial literal is exact to its cutoff")
    {
        const auto f = make_series(1, 3, {{MultiIndex{0}, 1.0}, {MultiIndex{2}, 0.5}}, false);
        CHECK(f.exact_degree() == 3);
        CHECK_FALSE(f.is_polynomial());
        CHECK(f.coeff(MultiIndex{2}) == Complex{0.5});
        CHECK(f.coeff(MultiIndex{1}) == Complex{});
    }
    SUBCASE("monomial")
    {
        const auto f = make_series(2, 2, {{MultiIndex{1, 1}, 1.0}}, true);
        CHECK(f.exact_degree() == 2);
        CHECK(f.is_polynomial());
        CHECK(f.entries().size() == 1);
    }
    SUBCASE("contract violations")
    {
        CHECK_THROWS_WITH_AS(make_series(1, 1, {{MultiIndex{2}, 1.0}}, false), doctest::Contains("index exceeds cutoff"),
                             Error);
        CHECK_THROWS_AS(make_series(1, 2, {{MultiIndex{1}, 1.0}, {MultiIndex{1}, 2.0}}, false), Error);
        CHECK_THROWS_AS(make_series(2, 2, {{MultiIndex{1}, 1.0}}, false), Error);
    }
}

TEST_CASE("linear_combine")
{
    const auto one_plus_z = make_series(1, 2, {{MultiIndex{0}, 1.0}, {MultiIndex{1}, 1.0}}, true);
    const auto z = make_series(1, 2, {{MultiIndex{1}, 1.0}}, true);
    const auto sum = linear_combine({{1.0, one_plus_z}, {1.0, z}});
    CHECK(sum.coeff(MultiIndex{0}) == Complex{1.0});
    CHECK(sum.coeff(MultiIndex{1}) == Complex{2.0});

    const auto z2 = make_series(1, 2, {{MultiIndex{2}, 1.0}}, false);
    const auto zero = linear_combine({{2.0, z2}, {-2.0, z2}});
    CHECK(zero.entries().empty());
    CHECK(zero.exact_degree() == 2);

    const auto mixed = linear_combine({{1.0, gaussian_1d(6)}, {1.0, make_series(1, 6, {}, true)}});
    CHECK_FALSE(mixed.is_polynomial());

    CHECK_THROWS_AS(linear_combine({{1.0, z}, {1.0, gaussian_1d(3)}}), Error);
    CHECK_THROWS_AS(linear_combine(std::span<const std::pair<Complex, TruncatedSeries>>{}), Error);
}

TEST_CASE("differentiate")
{
    SUBCASE("Gaussian derivative equals z times the Gaussian")
    {
        const auto f = gaussian_1d(6);
        const auto df = differentiate(f, MultiIndex{1});
        CHECK(df.exact_degree() == 5);
        // Oracle: f' = z f, coefficientwise (z f)_m = f_{m-1}.
        for (int m = 0; m <= 5; ++m) {
            const double expected = m == 0 ? 0.0 : testing::gaussian_coeff(m - 1);
            CHECK(std::abs(df.coeff(MultiIndex{m}) - expected) < 1e-15);
        }
        CHECK(df.coeff(MultiIndex{1}) == Complex{1.0});
        CHECK(df.coeff(MultiIndex{3}) == Complex{0.5});
        CHECK(df.coeff(MultiIndex{5}) == Complex{0.125});
    }
    SUBCASE("mixed partial of a monomial")
    {
        const auto f = make_series(2, 2, {{MultiIndex{1, 1}, 1.0}}, true);
        const auto g = differentiate(f, MultiIndex{1, 1});
        CHECK(g.coeff(MultiIndex{0, 0}) == Complex{1.0});
        CHECK(g.entries().size() == 1);
        CHECK(g.is_polynomial());
    }
    SUBCASE("past the degree of a polynomial")
    {
        const auto f = make_series(1, 3, {{MultiIndex{3}, 1.0}}, true);
        const auto g = differentiate(f, MultiIndex{4});
        CHECK(g.entries().empty());
        CHECK(g.is_polynomial());
        CHECK(g.exact_degree() == 3);
    }
    SUBCASE("exactness floors at -1")
    {
        const auto g = differentiate(gaussian_1d(2), MultiIndex{5});
        CHECK(g.exact_degree() == -1);
    }
}

TEST_CASE("multiply_coordinate")
{
    const auto f = make_series(1, 3, {{MultiIndex{0}, 1.0}, {MultiIndex{1}, 1.0}}, true);
    const auto g = multiply_coordinate(f, 0);
    CHECK(g.coeff(MultiIndex{1}) == Complex{1.0});
    CHECK(g.coeff(MultiIndex{2}) == Complex{1.0});
    CHECK(g.is_polynomial());

    const auto top = make_series(1, 3, {{MultiIndex{3}, 1.0}}, true);
    const auto dropped = multiply_coordinate(top, 0);
    CHECK(dropped.entries().empty());
    CHECK_FALSE(dropped.is_polynomial());
    CHECK(dropped.exact_degree() == 3);

    const auto z1 = make_series(2, 2, {{MultiIndex{1, 0}, 1.0}}, true);
    CHECK(multiply_coordinate(z1, 1).coeff(MultiIndex{1, 1}) == Complex{1.0});
    CHECK_THROWS_AS(multiply_coordinate(z1, 2), Error);

    const auto h = multiply_coordinate(gaussian_1d(6), 0);
    CHECK(h.exact_degree() == 6);
    const auto d = differentiate(gaussian_1d(6), MultiIndex{2});
    CHECK(multiply_coordinate(d, 0).exact_degree() == 5);
}

TEST_CASE("translate")
{
    const auto z2 = make_series(1, 2, {{MultiIndex{2}, 1.0}}, true);
    const auto t = translate(z2, {1.0});
    CHECK(t.coeff(MultiIndex{0}) == Complex{1.0});
    CHECK(t.coeff(MultiIndex{1}) == Complex{2.0});
    CHECK(t.coeff(MultiIndex{2}) == Complex{1.0});

    const auto z1z2 = make_series(2, 2, {{MultiIndex{1, 1}, 1.0}}, true);
    const auto u = translate(z1z2, {1.0, 0.0});
    CHECK(u.coeff(MultiIndex{0, 1}) == Complex{1.0});
    CHECK(u.coeff(MultiIndex{1, 1}) == Complex{1.0});
    CHECK(u.entries().size() == 2);

    const auto g = gaussian_1d(6);
    const auto same = translate(g, {0.0});
    CHECK(same.exact_degree() == 6);
    CHECK(testing::max_abs_diff(same, g, 6) == 0.0);

    const auto approx = translate(g, {0.5});
    CHECK(approx.is_approximate());
    CHECK(approx.exact_degree() == -1);

    CHECK_THROWS_AS(translate(g, {1.0, 1.0}), Error);
}

TEST_CASE("evaluate")
{
    CHECK(std::abs(evaluate(gaussian_1d(6), {1.0}) - 79.0 / 48.0) < 1e-15);
    const auto g = gaussian_1d(6);
    CHECK(evaluate(g, {0.0}) == g.coeff(MultiIndex{0}));
    const auto f = make_series(2, 3, {{MultiIndex{2, 1}, 1.0}}, true);
    CHECK(evaluate(f, {2.0, 3.0}) == Complex{12.0});
    CHECK_THROWS_AS(evaluate(f, {1.0}), Error);
}

TEST_CASE("seminorm_bound")
{
    const auto z = make_series(1, 1, {{MultiIndex{1}, 1.0}}, true);
    auto b = seminorm_bound(z, {1, 2.0});
    CHECK(b.lower == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-12));

    const auto one_plus_z = make_series(1, 1, {{MultiIndex{0}, 1.0}, {MultiIndex{1}, 1.0}}, true);
    b = seminorm_bound(one_plus_z, {1, 1.0});
    CHECK(b.upper == doctest::Approx(2.0));
    CHECK(b.lower == doctest::Approx(2.0).epsilon(1e-12));

    b = seminorm_bound(gaussian_1d(6), {1, 2.0});
    CHECK(b.upper == doctest::Approx(19.0 / 3.0).epsilon(1e-14));
    CHECK(b.lower <= b.upper);
    // All coefficients are positive, so the sup is attained at z = 2.
    CHECK(b.lower == doctest::Approx(19.0 / 3.0).epsilon(1e-12));

    SUBCASE("grid is skipped above three variables")
    {
        const auto f = make_series(4, 2, {{MultiIndex{1, 0, 0, 1}, 1.0}, {MultiIndex{0, 0, 0, 0}, -3.0}}, true);
        const auto w = seminorm_bound(f, {2, 1.0});
        CHECK(w.upper == doctest::Approx(7.0));
        CHECK(w.lower == doctest::Approx(4.0)); // Cauchy bound |a_n| r^||n||
    }
}

TEST_CASE("series invariants on random inputs")
{
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 1 + trial % 3;
        const auto f = testing::random_polynomial(rng, d, 4, 6);

        // Derivative composition.
        MultiIndex m(d), k(d);
        m[0] = 1;
        k[d - 1] += 2;
        const auto lhs = differentiate(differentiate(f, m), k);
        const auto rhs = differentiate(f, m + k);
        CHECK(testing::max_abs_diff(lhs, rhs, 6) < 1e-12);

        // Translation composition and evaluation shift.
        const auto lam = testing::random_point(rng, d);
        const auto mu = testing::random_point(rng, d);
        Point sum(d);
        for (std::size_t i = 0; i < d; ++i) {
            sum[i] = lam[i] + mu[i];
        }
        CHECK(testing::max_abs_diff(translate(translate(f, lam), mu), translate(f, sum), 6) < 1e-12);
        const auto z = testing::random_point(rng, d);
        Point shifted(d);
        for (std::size_t i = 0; i < d; ++i) {
            shifted[i] = z[i] + lam[i];
        }
        CHECK(std::abs(evaluate(translate(f, lam), z) - evaluate(f, shifted)) < 1e-12);

        // Sampled lower bound never exceeds the coefficient bound.
        const auto b = seminorm_bound(f, {1, 0.7});
        CHECK(b.lower <= b.upper);

        // a_n = D^n f(0) / n!.
        for (const auto& n : monomials(d, 4)) {
            const Complex via_derivative = evaluate(differentiate(f, n), Point(d)) / n.factorial();
            CHECK(std::abs(via_derivative - f.coeff(n)) < 1e-12);
        }
    }
}

TEST_CASE("single monomial bounds coincide")
{
    std::mt19937_64 rng(7);
    for (const auto& n : monomials(2, 5)) {
        const auto f = make_series(2, 5, {{n, testing::random_complex(rng)}}, true);
        const auto b = seminorm_bound(f, {2, 0.75});
        CHECK(std::abs(b.upper - b.lower) <= 1e-12 * std::max(1.0, b.upper));
    }
}

TEST_CASE("with_cutoff and exact_part")
{
    const auto g = gaussian_1d(8);
    const auto small = with_cutoff(g, 4);
    CHECK(small.cutoff() == 4);
    CHECK(small.exact_degree() == 4);
    const auto poly = make_series(1, 2, {{MultiIndex{2}, 1.0}}, true);
    const auto bigger = with_cutoff(poly, 5);
    CHECK(bigger.is_polynomial());
    CHECK(bigger.exact_degree() == 5);
    CHECK_FALSE(with_cutoff(poly, 1).is_polynomial());

    const auto d = differentiate(g, MultiIndex{3});
    const auto e = exact_part(d);
    CHECK(e.exact_degree() == 5);
    CHECK(e.coeff(MultiIndex{6}) == Complex{});
}
