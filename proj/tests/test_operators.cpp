#include <doctest.h>

#include <random>

#include "entire/kernel.hpp"
#include "entire/operators.hpp"
#include "helpers.hpp"

using namespace entire;
using testing::gaussian_1d;

namespace {

CROperator d_minus_z(std::size_t dim, std::size_t axis, Complex a = 1.0)
{
    ConvolutionSymbol s(dim);
    s.set(MultiIndex::unit(dim, axis), 1.0);
    return CROperator(axis, a, s);
}

CROperator d2_minus_z(std::size_t dim, std::size_t axis)
{
    ConvolutionSymbol s(dim);
    MultiIndex n(dim);
    n[axis] = 2;
    s.set(n, 2.0); // b_2 / 2! = 1
    return CROperator(axis, 1.0, s);
}

WeylOperator random_weyl(std::mt19937_64& rng, std::size_t dim)
{
    WeylOperator op(dim);
    std::uniform_int_distribution<int> pow(0, 2);
    for (int t = 0; t < 4; ++t) {
        MultiIndex a(dim), b(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            a[i] = pow(rng);
            b[i] = pow(rng);
        }
        op.add_term(a, b, testing::random_complex(rng));
    }
    return op;
}

} // namespace

TEST_CASE("commutator")
{
    SUBCASE("canonical relation [D, z] = I")
    {
        const auto c = commutator(WeylOperator::derivative(1, 0), WeylOperator::coordinate(1, 0));
        CHECK(c == WeylOperator::identity(1));
    }
    SUBCASE("[D - z, D] = I")
    {
        const auto c = commutator(d_minus_z(1, 0).to_weyl(), WeylOperator::derivative(1, 0));
        CHECK(c == WeylOperator::identity(1));
    }
    SUBCASE("[D1 - z1, D2] = 0 in two variables")
    {
        const auto c = commutator(d_minus_z(2, 0).to_weyl(), WeylOperator::derivative(2, 1));
        CHECK(c.is_zero());
    }
    SUBCASE("dimension mismatch")
    {
        CHECK_THROWS_AS(commutator(WeylOperator::identity(1), WeylOperator::identity(2)), Error);
    }
}

TEST_CASE("commutator is bilinear and antisymmetric")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 1 + trial % 2;
        const auto a = random_weyl(rng, d);
        const auto b = random_weyl(rng, d);
        const auto c = random_weyl(rng, d);
        CHECK(commutator(a, a).is_zero());
        CHECK((commutator(a, b) + commutator(b, a)).max_abs_coeff() < 1e-12);
        const Complex s = testing::random_complex(rng);
        const auto lhs = commutator(s * a + c, b);
        const auto rhs = s * commutator(a, b) + commutator(c, b);
        CHECK((lhs - rhs).max_abs_coeff() < 1e-12);
    }
}

TEST_CASE("symbolic composition agrees with applying operators in sequence")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + trial % 2;
        const auto a = random_weyl(rng, d);
        const auto b = random_weyl(rng, d);
        const auto f = testing::random_polynomial(rng, d, 4, 12);
        const auto seq = apply_weyl(a, apply_weyl(b, f));
        const auto comp = apply_weyl(a * b, f);
        CHECK(testing::max_abs_diff(seq, comp, 12) < 1e-11);
    }
}

TEST_CASE("apply_weyl")
{
    const auto g = gaussian_1d(6);
    const auto r = apply_weyl(d_minus_z(1, 0).to_weyl(), g);
    CHECK(r.exact_degree() == 5);
    CHECK(r.max_abs_coeff(5) < 1e-15);

    CHECK(testing::max_abs_diff(apply_weyl(WeylOperator::identity(1), g), g, 6) == 0.0);

    WeylOperator euler(1);
    euler.add_term(MultiIndex{1}, MultiIndex{1}, 1.0);
    const auto z3 = make_series(1, 4, {{MultiIndex{3}, 1.0}}, true);
    const auto e = apply_weyl(euler, z3);
    CHECK(e.coeff(MultiIndex{3}) == Complex{3.0});
    CHECK(e.entries().size() == 1);

    CHECK_THROWS_AS(apply_weyl(euler, make_series(2, 2, {}, true)), Error);
}

TEST_CASE("verify_cr")
{
    const std::vector<CROperator> gauss{d_minus_z(2, 0), d_minus_z(2, 1)};
    const auto r1 = verify_cr(gauss, 8);
    CHECK(r1.pass);
    CHECK(r1.max_residual <= 1e-12);
    CHECK(r1.residuals.size() == 4);

    const std::vector<CROperator> airy{d2_minus_z(2, 0), d2_minus_z(2, 1)};
    const auto r2 = verify_cr(airy, 8);
    CHECK(r2.pass);
    CHECK(r2.max_residual <= 1e-12);

    SUBCASE("mismatched constant shows up as |a_true - a_claimed|")
    {
        const Complex claimed{1.5, 0.0};
        const std::vector<CommutationClaim> claims{{d_minus_z(2, 0).to_weyl(), 0, claimed}};
        const auto r = verify_commutation(claims, 8);
        CHECK_FALSE(r.pass);
        CHECK(r.max_residual == doctest::Approx(std::abs(Complex{1.0} - claimed)));
        CHECK(r.residuals[0].numeric == doctest::Approx(0.5));
        CHECK(r.residuals[0].symbolic == doctest::Approx(0.5));
        CHECK(r.residuals[1].numeric == 0.0);
    }
    SUBCASE("adding any polynomial symbol keeps the relations")
    {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 10; ++trial) {
            ConvolutionSymbol s(2);
            for (const auto& n : monomials(2, 3)) {
                s.set(n, testing::random_complex(rng));
            }
            const Complex a = testing::random_complex(rng);
            const std::vector<CROperator> ops{CROperator(0, a, s), CROperator(1, 2.0 * a, s)};
            CHECK(verify_cr(ops, 8).max_residual <= 1e-12);
        }
    }
}

TEST_CASE("apply_convolution")
{
    std::mt19937_64 rng(9);
    const auto f = testing::random_polynomial(rng, 1, 5, 6);
    const ConvolutionSymbol dirac(1, {{MultiIndex{0}, 1.0}});
    CHECK(testing::max_abs_diff(apply_convolution(dirac, f), f, 6) == 0.0);

    const ConvolutionSymbol lambda(1, {{MultiIndex{1}, 1.0}});
    CHECK(testing::max_abs_diff(apply_convolution(lambda, f), differentiate(f, MultiIndex{1}), 6) == 0.0);

    const ConvolutionSymbol lambda2(1, {{MultiIndex{2}, 2.0}});
    const auto z3 = make_series(1, 3, {{MultiIndex{3}, 1.0}}, true);
    const auto r = apply_convolution(lambda2, z3);
    CHECK(r.coeff(MultiIndex{1}) == Complex{6.0});
    CHECK(r.entries().size() == 1);

    const auto g = apply_convolution(lambda2, gaussian_1d(8));
    CHECK(g.exact_degree() == 6);
}

TEST_CASE("dual_pairing")
{
    const ConvolutionSymbol dirac(1, {{MultiIndex{0}, 1.0}});
    CHECK(dual_pairing(dirac, gaussian_1d(6)) == Complex{1.0});

    const ConvolutionSymbol lambda(1, {{MultiIndex{1}, 1.0}});
    const auto f = make_series(1, 2, {{MultiIndex{1}, 3.0}, {MultiIndex{2}, 1.0}}, true);
    CHECK(dual_pairing(lambda, f) == Complex{3.0});

    const ConvolutionSymbol lambda2(1, {{MultiIndex{2}, 2.0}});
    const auto z3 = make_series(1, 3, {{MultiIndex{3}, 1.0}}, true);
    CHECK(dual_pairing(lambda2, translate(z3, {1.0})) == Complex{6.0});

    const auto rough = differentiate(gaussian_1d(3), MultiIndex{2});
    CHECK_THROWS_WITH_AS(dual_pairing(lambda2, rough), doctest::Contains("pairing not determined"), Error);
}

TEST_CASE("characteristic_roundtrip")
{
    CHECK(characteristic_roundtrip(ConvolutionSymbol(1, {{MultiIndex{0}, 1.0}}), {Complex{0.3, 2.0}}) ==
          Complex{1.0});
    CHECK(characteristic_roundtrip(ConvolutionSymbol(1, {{MultiIndex{1}, 1.0}}), {2.0}) == Complex{2.0});
    CHECK(characteristic_roundtrip(ConvolutionSymbol(1, {{MultiIndex{2}, 2.0}}), {3.0}) == Complex{9.0});
}

TEST_CASE("Laplace consistency: pairing against exp<w,z> reproduces the symbol")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        ConvolutionSymbol s(2);
        for (const auto& n : monomials(2, 3)) {
            s.set(n, testing::random_complex(rng));
        }
        const Point w = testing::random_point(rng, 2);
        std::vector<TruncatedSeries::Entry> e;
        for (const auto& n : monomials(2, 3)) {
            e.emplace_back(n, power(w, n) / n.factorial());
        }
        const auto exp_wz = make_series(2, 3, e, false);
        CHECK(std::abs(dual_pairing(s, exp_wz) - characteristic_roundtrip(s, w)) < 1e-14);
    }
}

TEST_CASE("route equality between the two convolution representations")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = 1 + trial % 2;
        const auto f = testing::random_polynomial(rng, d, 5, 5);
        ConvolutionSymbol s(d);
        for (const auto& n : monomials(d, 3)) {
            s.set(n, testing::random_complex(rng));
        }
        const auto mf = apply_convolution(s, f);
        for (int k = 0; k < 20; ++k) {
            const Point lambda = testing::random_point(rng, d);
            CHECK(std::abs(evaluate(mf, lambda) - dual_pairing(s, translate(f, lambda))) < 1e-10);
        }
    }
}

TEST_CASE("convolution part commutes with translation")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = testing::random_polynomial(rng, 2, 4, 6);
        ConvolutionSymbol s(2);
        for (const auto& n : monomials(2, 2)) {
            s.set(n, testing::random_complex(rng));
        }
        const Point lambda = testing::random_point(rng, 2);
        const auto a = apply_convolution(s, translate(f, lambda));
        const auto b = translate(apply_convolution(s, f), lambda);
        CHECK(testing::max_abs_diff(a, b, 6) < 1e-12);
    }
}

TEST_CASE("apply_cr_operator")
{
    const auto gauss = apply_cr_operator(d_minus_z(1, 0), gaussian_1d(8));
    CHECK(gauss.max_abs_coeff(gauss.exact_degree()) < 1e-15);

    const auto airy = solve_kernel_axis(testing::airy_problem(12));
    const auto r = apply_cr_operator(d2_minus_z(1, 0), airy);
    CHECK(r.exact_degree() == 10);
    CHECK(r.max_abs_coeff(10) < 1e-15);

    const auto z = make_series(1, 3, {{MultiIndex{1}, 1.0}}, true);
    const auto t = apply_cr_operator(d_minus_z(1, 0), z);
    CHECK(t.coeff(MultiIndex{0}) == Complex{1.0});
    CHECK(t.coeff(MultiIndex{2}) == Complex{-1.0});
    CHECK(t.entries().size() == 2);

    CHECK_THROWS_AS(CROperator(0, 0.0, ConvolutionSymbol(1)), Error);
    CHECK_THROWS_AS(CROperator(1, 1.0, ConvolutionSymbol(1)), Error);
}
