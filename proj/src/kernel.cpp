#include "entire/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entire {

int AxisKernelProblem::order() const
{
    int p = static_cast<int>(charpoly.size()) - 1;
    while (p >= 0 && charpoly[static_cast<std::size_t>(p)] == Complex{}) {
        --p;
    }
    return p;
}

CROperator AxisKernelProblem::to_operator(std::size_t dim, std::size_t axis) const
{
    return CROperator(axis, a, ConvolutionSymbol::from_axis_polynomial(dim, axis, charpoly));
}

AxisKernelProblem AxisKernelProblem::from_operator(const CROperator& t, int degree, std::vector<Complex> seeds)
{
    AxisKernelProblem p;
    p.a = t.a();
    p.degree = degree;
    for (const auto& [n, b] : t.conv().bcoeffs()) {
        if (n.order() != n[t.axis()]) {
            throw Error("kernel solver needs a convolution part acting on axis " + std::to_string(t.axis() + 1) +
                        " only; got term D^" + n.to_string());
        }
        const auto k = static_cast<std::size_t>(n[t.axis()]);
        if (p.charpoly.size() <= k) {
            p.charpoly.resize(k + 1);
        }
        p.charpoly[k] = b / n.factorial();
    }
    const int order = p.order();
    if (seeds.empty() && order > 0) {
        seeds.assign(static_cast<std::size_t>(order), Complex{});
        seeds[0] = 1.0;
    }
    p.seeds = std::move(seeds);
    return p;
}

TruncatedSeries solve_kernel_axis(const AxisKernelProblem& p)
{
    const int order = p.order();
    if (order <= 0) {
        throw Error("kernel is trivial (order-zero convolution part)");
    }
    if (p.a == Complex{}) {
        throw Error("kernel problem needs a nonzero constant a");
    }
    if (p.seeds.size() != static_cast<std::size_t>(order)) {
        throw Error("kernel problem needs " + std::to_string(order) + " seeds");
    }
    if (std::all_of(p.seeds.begin(), p.seeds.end(), [](Complex s) { return s == Complex{}; })) {
        throw Error("zero seed yields f == 0, violating f != 0");
    }
    if (p.degree < 0) {
        throw Error("kernel degree must be non-negative");
    }

    const auto n_coeffs = static_cast<std::size_t>(std::max(p.degree, order - 1) + 1);
    std::vector<Complex> f(n_coeffs);
    std::copy(p.seeds.begin(), p.seeds.end(), f.begin());
    const Complex lead = p.charpoly[static_cast<std::size_t>(order)];

    // sum_{n=0}^{p} c_n (k+n)!/k! f_{k+n} = a f_{k-1}, solved for f_{k+p}.
    for (std::size_t k = 0; k + static_cast<std::size_t>(order) < n_coeffs; ++k) {
        Complex rhs = (k > 0) ? p.a * f[k - 1] : Complex{};
        double rising = 1.0; // (k+n)!/k!
        for (int n = 0; n < order; ++n) {
            if (n > 0) {
                rising *= static_cast<double>(k + static_cast<std::size_t>(n));
            }
            rhs -= p.charpoly[static_cast<std::size_t>(n)] * rising * f[k + static_cast<std::size_t>(n)];
        }
        rising *= static_cast<double>(k + static_cast<std::size_t>(order));
        const Complex next = rhs / (lead * rising);
        if (!(std::abs(next) <= kernel_growth_limit)) {
            throw Error("kernel coefficient f_" + std::to_string(k + static_cast<std::size_t>(order)) +
                        " exceeds growth limit");
        }
        f[k + static_cast<std::size_t>(order)] = next;
    }

    std::vector<TruncatedSeries::Entry> entries;
    for (int k = 0; k <= p.degree; ++k) {
        if (f[static_cast<std::size_t>(k)] != Complex{}) {
            entries.emplace_back(MultiIndex{k}, f[static_cast<std::size_t>(k)]);
        }
    }
    return make_series(1, p.degree, entries, false);
}

TruncatedSeries joint_kernel(std::span<const AxisKernelProblem> problems)
{
    if (problems.empty()) {
        throw Error("joint kernel needs one problem per axis");
    }
    const int degree = problems.front().degree;
    std::vector<TruncatedSeries> factors;
    for (const auto& p : problems) {
        if (p.degree != degree) {
            throw Error("joint kernel problems must share one degree");
        }
        factors.push_back(solve_kernel_axis(p));
    }
    const std::size_t d = problems.size();
    auto basis = MonomialBasis::make(d, degree);
    std::vector<Complex> c(basis->size());
    for (std::size_t i = 0; i < basis->size(); ++i) {
        Complex v{1.0, 0.0};
        for (std::size_t ax = 0; ax < d && v != Complex{}; ++ax) {
            v *= factors[ax].coeff(MultiIndex{(*basis)[i][ax]});
        }
        c[i] = v;
    }
    return TruncatedSeries(std::move(basis), std::move(c), degree, false);
}

TruncatedSeries joint_kernel(std::span<const AxisKernelProblem> problems, std::size_t dim)
{
    if (problems.size() != dim) {
        throw Error("joint kernel needs one problem for every axis: got " + std::to_string(problems.size()) +
                    " for dimension " + std::to_string(dim));
    }
    return joint_kernel(problems);
}

KernelReport verify_kernel(std::span<const CROperator> ops, const TruncatedSeries& f, double tolerance)
{
    KernelReport report;
    report.tolerance = tolerance;
    report.pass = true;
    for (const auto& t : ops) {
        const TruncatedSeries r = apply_cr_operator(t, f);
        // An empty exact region certifies nothing.
        const double residual = r.exact_degree() < 0 ? std::numeric_limits<double>::infinity()
                                                     : r.max_abs_coeff(r.exact_degree());
        report.residuals.push_back(residual);
        report.pass = report.pass && residual <= tolerance;
    }
    return report;
}

} // namespace entire
