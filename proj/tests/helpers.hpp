#ifndef ENTIRE_TESTS_HELPERS_HPP
#define ENTIRE_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "entire/fhc.hpp"
#include "entire/series.hpp"

namespace testing {

using entire::Complex;
using entire::MultiIndex;
using entire::TruncatedSeries;

// Closed-form Taylor coefficient of exp(z^2/2).
inline double gaussian_coeff(int n)
{
    if (n % 2) {
        return 0.0;
    }
    double r = 1.0;
    for (int m = 1; m <= n / 2; ++m) {
        r /= 2.0 * m;
    }
    return r;
}

// Coefficient of the f'' = z f solution with f(0) = 1, f'(0) = 0:
// f_{3j} = prod_{i<=j} 1 / ((3i)(3i-1)), all other coefficients zero.
inline double airy_coeff(int n)
{
    if (n % 3) {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= n / 3; ++i) {
        r /= (3.0 * i) * (3.0 * i - 1.0);
    }
    return r;
}

inline TruncatedSeries gaussian_1d(int cutoff)
{
    std::vector<TruncatedSeries::Entry> e;
    for (int n = 0; n <= cutoff; ++n) {
        if (gaussian_coeff(n) != 0.0) {
            e.emplace_back(MultiIndex{n}, gaussian_coeff(n));
        }
    }
    return entire::make_series(1, cutoff, e, false);
}

// exp(z1^2/2) viewed in two variables.
inline TruncatedSeries gaussian_in_z1(int cutoff)
{
    std::vector<TruncatedSeries::Entry> e;
    for (int n = 0; n <= cutoff; n += 2) {
        e.emplace_back(MultiIndex{n, 0}, gaussian_coeff(n));
    }
    return entire::make_series(2, cutoff, e, false);
}

inline entire::AxisKernelProblem gaussian_problem(int degree, Complex a = 1.0)
{
    return {{0.0, 1.0}, a, {1.0}, degree};
}

inline entire::AxisKernelProblem airy_problem(int degree, Complex a = 1.0)
{
    return {{0.0, 0.0, 1.0}, a, {1.0, 0.0}, degree};
}

// Seeds Ai(0) = 3^(-2/3)/Gamma(2/3) and Ai'(0) = -3^(-1/3)/Gamma(1/3) of the Airy function itself.
inline entire::AxisKernelProblem airy_ai_problem(int degree)
{
    const double ai0 = 1.0 / (std::cbrt(9.0) * std::tgamma(2.0 / 3.0));
    const double ai1 = -1.0 / (std::cbrt(3.0) * std::tgamma(1.0 / 3.0));
    return {{0.0, 0.0, 1.0}, 1.0, {ai0, ai1}, degree};
}

inline std::vector<entire::AxisKernelProblem> gaussian_family(std::size_t d, int degree)
{
    return std::vector<entire::AxisKernelProblem>(d, gaussian_problem(degree));
}

inline std::vector<entire::AxisKernelProblem> airy_family(std::size_t d, int degree)
{
    return std::vector<entire::AxisKernelProblem>(d, airy_problem(degree));
}

inline std::vector<entire::AxisKernelProblem> airy_ai_family(std::size_t d, int degree)
{
    return std::vector<entire::AxisKernelProblem>(d, airy_ai_problem(degree));
}

inline double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b, int degree)
{
    double r = 0.0;
    for (const auto& n : entire::monomials(a.dim(), degree)) {
        r = std::max(r, std::abs(a.coeff(n) - b.coeff(n)));
    }
    return r;
}

inline Complex random_complex(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(rng);
    const double im = u(rng);
    return {re, im};
}

// Polynomial of total degree <= degree with random coefficients, stored at `cutoff`.
inline TruncatedSeries random_polynomial(std::mt19937_64& rng, std::size_t dim, int degree, int cutoff)
{
    std::vector<TruncatedSeries::Entry> e;
    for (const auto& n : entire::monomials(dim, degree)) {
        e.emplace_back(n, random_complex(rng));
    }
    return entire::make_series(dim, cutoff, e, true);
}

inline entire::Point random_point(std::mt19937_64& rng, std::size_t dim)
{
    entire::Point p(dim);
    for (auto& v : p) {
        v = random_complex(rng);
    }
    return p;
}

// Multi-indices with every entry <= bound.
inline std::vector<MultiIndex> box_indices(std::size_t dim, int bound)
{
    std::vector<MultiIndex> out;
    for (const auto& n : entire::monomials(dim, static_cast<int>(dim) * bound)) {
        bool inside = true;
        for (std::size_t i = 0; i < dim; ++i) {
            inside = inside && n[i] <= bound;
        }
        if (inside) {
            out.push_back(n);
        }
    }
    return out;
}

struct LadderDeviation {
    double deviation = 0.0; // max |brute - symbolic| on the exact region
    double scale = 0.0;     // largest coefficient of D^(n + p k) f, the deepest derivative the route expands
    int exact_degree = -1;
};

// Brute force: realize D^n f, apply T_1^k1 ... T_d^kd as series. Symbolic: the
// ladder formula realized as a series. Realized with `margin` exact degrees left over.
inline LadderDeviation ladder_deviation(const entire::KernelGenerator& g, const MultiIndex& n, const MultiIndex& k,
                                        int margin)
{
    int consumed = 0;
    for (std::size_t j = 0; j < g.dim(); ++j) {
        consumed += g.problems()[j].order() * k[j];
    }
    const int degree = margin + consumed;
    const auto gen = std::make_shared<const entire::KernelGenerator>(g);
    const auto ops = g.operators();

    LadderDeviation r;
    auto deepest = n;
    for (std::size_t j = 0; j < g.dim(); ++j) {
        deepest[j] += g.problems()[j].order() * k[j];
    }
    const auto top = entire::H0Vector::basis(gen, deepest).realize(margin);
    for (const auto& m : entire::monomials(g.dim(), margin)) {
        r.scale = std::max(r.scale, std::abs(top.coeff(m)));
    }
    auto brute = entire::H0Vector::basis(gen, n).realize(degree);
    for (std::size_t j = 0; j < g.dim(); ++j) {
        for (int i = 0; i < k[j]; ++i) {
            brute = entire::apply_cr_operator(ops[j], brute);
        }
    }
    const auto a = g.a();
    const auto t = entire::t_power_on_basis(k, n, a);
    entire::H0Vector sym(gen);
    if (t.index) {
        sym.add(*t.index, t.scalar);
    }
    const auto expected = sym.realize(degree);
    r.exact_degree = brute.exact_degree();
    r.deviation = max_abs_diff(brute, expected, brute.exact_degree());
    return r;
}

} // namespace testing

#endif
