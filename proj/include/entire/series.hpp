#ifndef ENTIRE_SERIES_HPP
#define ENTIRE_SERIES_HPP

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "entire/multi_index.hpp"

namespace entire {

/// Total-degree truncated Taylor series f = sum a_n z^n of an entire function
/// on C^d.
///
/// Besides the stored coefficients (all multi-indices with ||n|| <= cutoff),
/// a series carries an exactness bookkeeping pair:
///  - exact_degree E: coefficients with ||n|| <= E are the true Taylor
///    coefficients of the represented function (E = -1: no guarantee);
///  - is_polynomial: the stored coefficients are the whole function.
/// A polynomial series always has E = cutoff.
class TruncatedSeries {
public:
    using Entry = std::pair<MultiIndex, Complex>;

    TruncatedSeries(std::shared_ptr<const MonomialBasis> basis, std::vector<Complex> coeffs, int exact_degree,
                    bool is_polynomial);

    static TruncatedSeries zero(std::size_t dim, int cutoff, int exact_degree, bool is_polynomial);

    std::size_t dim() const noexcept { return basis_->dim(); }
    int cutoff() const noexcept { return basis_->cutoff(); }
    int exact_degree() const noexcept { return exact_degree_; }
    bool is_polynomial() const noexcept { return is_polynomial_; }
    /// True for results of translating a non-polynomial series: no coefficient is guaranteed.
    bool is_approximate() const noexcept { return exact_degree_ < 0; }

    const MonomialBasis& basis() const noexcept { return *basis_; }
    const std::shared_ptr<const MonomialBasis>& basis_ptr() const noexcept { return basis_; }
    std::span<const Complex> coefficients() const noexcept { return coeffs_; }

    /// Coefficient of z^n; zero when ||n|| exceeds the cutoff.
    Complex coeff(const MultiIndex& n) const;

    /// Nonzero entries in graded-lex order.
    std::vector<Entry> entries() const;

    /// Largest |a_n| with ||n|| <= degree (and <= cutoff).
    double max_abs_coeff(int degree) const;

private:
    std::shared_ptr<const MonomialBasis> basis_;
    std::vector<Complex> coeffs_;
    int exact_degree_;
    bool is_polynomial_;
};

/// Direct construction. Indices must be distinct and within the cutoff; the
/// series is declared exact up to the cutoff.
TruncatedSeries make_series(std::size_t dim, int cutoff, std::span<const TruncatedSeries::Entry> entries,
                            bool is_polynomial);
TruncatedSeries make_series(std::size_t dim, int cutoff, std::initializer_list<TruncatedSeries::Entry> entries,
                            bool is_polynomial);

/// sum c_i f_i. All terms share dim and cutoff; exactness is the weakest among the terms.
TruncatedSeries linear_combine(std::span<const std::pair<Complex, TruncatedSeries>> terms);
TruncatedSeries linear_combine(std::initializer_list<std::pair<Complex, TruncatedSeries>> terms);

TruncatedSeries differentiate(const TruncatedSeries& f, const MultiIndex& order);

/// z_axis * f (axis is zero-based). Terms pushed past the cutoff are dropped.
TruncatedSeries multiply_coordinate(const TruncatedSeries& f, std::size_t axis);

/// f(z + lambda). Exact for polynomials; for other series the result is a
/// truncation approximation with exact_degree = -1 (except lambda = 0).
TruncatedSeries translate(const TruncatedSeries& f, const Point& lambda);

/// Value of the stored polynomial at z.
Complex evaluate(const TruncatedSeries& f, const Point& z);

/// Same function viewed at another cutoff. Shrinking keeps only ||n|| <= cutoff.
TruncatedSeries with_cutoff(const TruncatedSeries& f, int cutoff);

/// Drop every coefficient outside the exact region (cutoff kept).
TruncatedSeries exact_part(const TruncatedSeries& f);

struct SemiNormSpec {
    int m = 1;
    double epsilon = 1.0;

    double radius() const { return m * epsilon; }
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Angles per axis used for the sampled lower bound.
inline constexpr int seminorm_grid_angles = 64;
/// Above this dimension the lower bound is the Cauchy coefficient bound only.
inline constexpr std::size_t seminorm_grid_max_dim = 3;

/// Bracket for sup |f| over the polydisc |z| <= m*epsilon of the stored polynomial.
Interval seminorm_bound(const TruncatedSeries& f, const SemiNormSpec& spec);

/// Upper half of seminorm_bound, without sampling.
double seminorm_upper(const TruncatedSeries& f, const SemiNormSpec& spec);

} // namespace entire

#endif
