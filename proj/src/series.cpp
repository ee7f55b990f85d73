#include "entire/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace entire {

TruncatedSeries::TruncatedSeries(std::shared_ptr<const MonomialBasis> basis, std::vector<Complex> coeffs,
                                 int exact_degree, bool is_polynomial)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)), exact_degree_(exact_degree), is_polynomial_(is_polynomial)
{
    if (!basis_) {
        throw Error("series needs a monomial basis");
    }
    if (coeffs_.size() != basis_->size()) {
        throw Error("coefficient vector does not match basis size");
    }
    if (exact_degree_ < -1 || exact_degree_ > basis_->cutoff()) {
        throw Error("exact degree out of range");
    }
    if (is_polynomial_ && exact_degree_ != basis_->cutoff()) {
        throw Error("a polynomial series must be exact up to its cutoff");
    }
}

TruncatedSeries TruncatedSeries::zero(std::size_t dim, int cutoff, int exact_degree, bool is_polynomial)
{
    auto basis = MonomialBasis::make(dim, cutoff);
    std::vector<Complex> c(basis->size());
    return TruncatedSeries(std::move(basis), std::move(c), exact_degree, is_polynomial);
}

Complex TruncatedSeries::coeff(const MultiIndex& n) const
{
    if (n.dim() != dim()) {
        throw Error("dim mismatch");
    }
    if (n.order() > cutoff()) {
        return {};
    }
    return coeffs_[basis_->index_of(n)];
}

std::vector<TruncatedSeries::Entry> TruncatedSeries::entries() const
{
    std::vector<Entry> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != Complex{}) {
            out.emplace_back((*basis_)[i], coeffs_[i]);
        }
    }
    return out;
}

double TruncatedSeries::max_abs_coeff(int degree) const
{
    const std::size_t end = basis_->degree_offset(std::min(degree, cutoff()) + 1);
    double r = 0.0;
    for (std::size_t i = 0; i < end; ++i) {
        r = std::max(r, std::abs(coeffs_[i]));
    }
    return r;
}

TruncatedSeries make_series(std::size_t dim, int cutoff, std::span<const TruncatedSeries::Entry> entries,
                            bool is_polynomial)
{
    auto basis = MonomialBasis::make(dim, cutoff);
    std::vector<Complex> c(basis->size());
    std::vector<bool> seen(basis->size(), false);
    for (const auto& [idx, value] : entries) {
        if (idx.dim() != dim) {
            throw Error("dim mismatch: index " + idx.to_string() + " in dimension " + std::to_string(dim));
        }
        if (idx.order() > cutoff) {
            throw Error("index exceeds cutoff: " + idx.to_string());
        }
        const std::size_t pos = basis->index_of(idx);
        if (seen[pos]) {
            throw Error("duplicate index " + idx.to_string());
        }
        seen[pos] = true;
        c[pos] = value;
    }
    return TruncatedSeries(std::move(basis), std::move(c), cutoff, is_polynomial);
}

TruncatedSeries make_series(std::size_t dim, int cutoff, std::initializer_list<TruncatedSeries::Entry> entries,
                            bool is_polynomial)
{
    return make_series(dim, cutoff, std::span<const TruncatedSeries::Entry>(entries.begin(), entries.size()),
                       is_polynomial);
}

TruncatedSeries linear_combine(std::span<const std::pair<Complex, TruncatedSeries>> terms)
{
    if (terms.empty()) {
        throw Error("linear_combine needs at least one term");
    }
    const auto& first = terms.front().second;
    std::vector<Complex> c(first.basis().size());
    int exact = first.cutoff();
    bool poly = true;
    for (const auto& [scale, f] : terms) {
        if (f.dim() != first.dim() || f.cutoff() != first.cutoff()) {
            throw Error("shape mismatch in linear_combine");
        }
        const auto src = f.coefficients();
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] += scale * src[i];
        }
        exact = std::min(exact, f.exact_degree());
        poly = poly && f.is_polynomial();
    }
    return TruncatedSeries(first.basis_ptr(), std::move(c), exact, poly);
}

TruncatedSeries linear_combine(std::initializer_list<std::pair<Complex, TruncatedSeries>> terms)
{
    return linear_combine(std::span<const std::pair<Complex, TruncatedSeries>>(terms.begin(), terms.size()));
}

TruncatedSeries differentiate(const TruncatedSeries& f, const MultiIndex& order)
{
    if (order.dim() != f.dim()) {
        throw Error("dim mismatch");
    }
    const auto& basis = f.basis();
    const auto src = f.coefficients();
    std::vector<Complex> c(basis.size());
    const int shift = order.order();
    const std::size_t end = basis.degree_offset(f.cutoff() - shift + 1);
    for (std::size_t i = 0; i < end; ++i) {
        const MultiIndex source = basis[i] + order;
        c[i] = falling_factorial(source, order) * src[basis.index_of(source)];
    }
    const int exact = f.is_polynomial() ? f.cutoff() : std::max(-1, f.exact_degree() - shift);
    return TruncatedSeries(f.basis_ptr(), std::move(c), exact, f.is_polynomial());
}

TruncatedSeries multiply_coordinate(const TruncatedSeries& f, std::size_t axis)
{
    if (axis >= f.dim()) {
        throw Error("axis out of range");
    }
    const auto& basis = f.basis();
    const auto src = f.coefficients();
    std::vector<Complex> c(basis.size());
    const MultiIndex e = MultiIndex::unit(f.dim(), axis);
    bool dropped = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (src[i] == Complex{}) {
            continue;
        }
        if (basis[i].order() == f.cutoff()) {
            dropped = true;
            continue;
        }
        c[basis.index_of(basis[i] + e)] = src[i];
    }
    const bool poly = f.is_polynomial() && !dropped;
    const int exact = std::min(f.cutoff(), f.exact_degree() + 1);
    return TruncatedSeries(f.basis_ptr(), std::move(c), exact, poly);
}

TruncatedSeries translate(const TruncatedSeries& f, const Point& lambda)
{
    if (lambda.size() != f.dim()) {
        throw Error("dimension mismatch in translate");
    }
    const bool zero_shift = std::all_of(lambda.begin(), lambda.end(), [](Complex v) { return v == Complex{}; });
    if (zero_shift) {
        return f;
    }
    const auto& basis = f.basis();
    const auto src = f.coefficients();
    std::vector<Complex> c(basis.size());
    const std::size_t d = f.dim();
    // Powers lambda_i^t for t <= cutoff.
    std::vector<std::vector<Complex>> pw(d, std::vector<Complex>(f.cutoff() + 1));
    for (std::size_t i = 0; i < d; ++i) {
        pw[i][0] = 1.0;
        for (int t = 1; t <= f.cutoff(); ++t) {
            pw[i][t] = pw[i][t - 1] * lambda[i];
        }
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (src[i] == Complex{}) {
            continue;
        }
        const MultiIndex& n = basis[i];
        // Every m <= n componentwise receives binom(n, m) a_n lambda^(n-m).
        const std::size_t end = basis.degree_offset(n.order() + 1);
        for (std::size_t j = 0; j < end; ++j) {
            const MultiIndex& m = basis[j];
            if (!m.divides(n)) {
                continue;
            }
            Complex term = src[i] * multi_binomial(n, m);
            for (std::size_t ax = 0; ax < d; ++ax) {
                term *= pw[ax][n[ax] - m[ax]];
            }
            c[j] += term;
        }
    }
    const int exact = f.is_polynomial() ? f.cutoff() : -1;
    return TruncatedSeries(f.basis_ptr(), std::move(c), exact, f.is_polynomial());
}

Complex evaluate(const TruncatedSeries& f, const Point& z)
{
    if (z.size() != f.dim()) {
        throw Error("dimension mismatch in evaluate");
    }
    const auto& basis = f.basis();
    const auto src = f.coefficients();
    std::vector<std::vector<Complex>> pw(f.dim(), std::vector<Complex>(f.cutoff() + 1));
    for (std::size_t i = 0; i < f.dim(); ++i) {
        pw[i][0] = 1.0;
        for (int t = 1; t <= f.cutoff(); ++t) {
            pw[i][t] = pw[i][t - 1] * z[i];
        }
    }
    Complex sum{};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (src[i] == Complex{}) {
            continue;
        }
        Complex term = src[i];
        for (std::size_t ax = 0; ax < f.dim(); ++ax) {
            term *= pw[ax][basis[i][ax]];
        }
        sum += term;
    }
    return sum;
}

TruncatedSeries with_cutoff(const TruncatedSeries& f, int cutoff)
{
    if (cutoff == f.cutoff()) {
        return f;
    }
    auto basis = MonomialBasis::make(f.dim(), cutoff);
    std::vector<Complex> c(basis->size());
    const auto src = f.coefficients();
    bool dropped = false;
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (f.basis()[i].order() <= cutoff) {
            c[basis->index_of(f.basis()[i])] = src[i];
        } else if (src[i] != Complex{}) {
            dropped = true;
        }
    }
    const bool poly = f.is_polynomial() && !dropped;
    const int exact = poly ? cutoff : std::min(f.exact_degree(), cutoff);
    return TruncatedSeries(std::move(basis), std::move(c), exact, poly);
}

TruncatedSeries exact_part(const TruncatedSeries& f)
{
    if (f.is_polynomial() || f.exact_degree() == f.cutoff()) {
        return f;
    }
    const auto src = f.coefficients();
    std::vector<Complex> c(src.begin(), src.end());
    const std::size_t keep = f.basis().degree_offset(f.exact_degree() + 1);
    std::fill(c.begin() + static_cast<std::ptrdiff_t>(keep), c.end(), Complex{});
    return TruncatedSeries(f.basis_ptr(), std::move(c), f.exact_degree(), false);
}

double seminorm_upper(const TruncatedSeries& f, const SemiNormSpec& spec)
{
    const double r = spec.radius();
    const auto& basis = f.basis();
    const auto src = f.coefficients();
    std::vector<double> rp(f.cutoff() + 1, 1.0);
    for (int t = 1; t <= f.cutoff(); ++t) {
        rp[t] = rp[t - 1] * r;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        sum += std::abs(src[i]) * rp[basis[i].order()];
    }
    return sum;
}

namespace {

// max |f| over the grid (r e^{i theta_1}, ..., r e^{i theta_d}), contracting
// one axis at a time over a dense (cutoff+1)^d coefficient tensor.
double grid_max(const TruncatedSeries& f, double r)
{
    const std::size_t d = f.dim();
    const std::size_t side = static_cast<std::size_t>(f.cutoff()) + 1;
    const std::size_t angles = seminorm_grid_angles;

    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        total *= side;
    }
    std::vector<Complex> tensor(total);
    const auto& basis = f.basis();
    const auto src = f.coefficients();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::size_t flat = 0;
        for (std::size_t ax = 0; ax < d; ++ax) {
            flat = flat * side + static_cast<std::size_t>(basis[i][ax]);
        }
        tensor[flat] = src[i];
    }

    // phase[t][k] = (r e^{i theta_t})^k
    std::vector<std::vector<Complex>> phase(angles, std::vector<Complex>(side));
    for (std::size_t t = 0; t < angles; ++t) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(angles);
        const Complex w = std::polar(r, theta);
        phase[t][0] = 1.0;
        for (std::size_t k = 1; k < side; ++k) {
            phase[t][k] = phase[t][k - 1] * w;
        }
    }

    // Layout: prefix (side^(ax)) x axis (side) x suffix (angles^(d-1-ax)).
    std::size_t suffix = 1;
    for (std::size_t ax = d; ax-- > 0;) {
        std::size_t prefix = 1;
        for (std::size_t i = 0; i < ax; ++i) {
            prefix *= side;
        }
        std::vector<Complex> next(prefix * angles * suffix);
        for (std::size_t p = 0; p < prefix; ++p) {
            for (std::size_t t = 0; t < angles; ++t) {
                for (std::size_t s = 0; s < suffix; ++s) {
                    Complex acc{};
                    for (std::size_t k = 0; k < side; ++k) {
                        acc += tensor[(p * side + k) * suffix + s] * phase[t][k];
                    }
                    next[(p * angles + t) * suffix + s] = acc;
                }
            }
        }
        tensor = std::move(next);
        suffix *= angles;
    }

    double best = 0.0;
    for (const Complex& v : tensor) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

} // namespace

Interval seminorm_bound(const TruncatedSeries& f, const SemiNormSpec& spec)
{
    if (spec.m < 1 || !(spec.epsilon > 0.0)) {
        throw Error("semi-norm needs m >= 1 and epsilon > 0");
    }
    Interval out;
    out.upper = seminorm_upper(f, spec);

    // Cauchy inequality: |a_n| r^||n|| <= sup over the polydisc.
    const double r = spec.radius();
    const auto& basis = f.basis();
    const auto src = f.coefficients();
    double lower = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        lower = std::max(lower, std::abs(src[i]) * std::pow(r, basis[i].order()));
    }
    if (f.dim() <= seminorm_grid_max_dim) {
        lower = std::max(lower, grid_max(f, r));
    }
    out.lower = std::min(lower, out.upper);
    return out;
}

} // namespace entire
