#ifndef ENTIRE_COMPLETENESS_HPP
#define ENTIRE_COMPLETENESS_HPP

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "entire/series.hpp"

namespace entire {

/// Rows are degree-<=N coefficient vectors in graded-lex layout, each labelled
/// by the derivative order n (rows D^n f) or translation point lambda (rows S_lambda f).
struct SpanMatrix {
    using Label = std::variant<MultiIndex, Point>;

    std::size_t dim = 0;
    int truncation = 0;
    std::vector<std::vector<Complex>> rows;
    std::vector<Label> labels;

    std::size_t ambient() const { return monomial_count(dim, truncation); }
};

struct CompletenessReport {
    std::size_t rank = 0;
    std::size_t ambient = 0;
    bool complete_at_truncation = false;
    std::vector<double> singular_values; // of the row-normalized matrix, descending
    double tolerance = 0.0;
};

inline constexpr double default_rank_tolerance = 1e-8;

/// Rows D^n f truncated to degree N for all ||n|| <= max_order.
/// Needs f exact up to N + max_order unless f is a polynomial.
SpanMatrix derivative_span(const TruncatedSeries& f, int truncation, int max_order);

/// Rows f(z + lambda) truncated to degree N for each sample point.
SpanMatrix translate_span(const TruncatedSeries& f, int truncation, std::span<const Point> samples);

/// Seeded uniform draw of `count` points from the real box [-1, 1]^dim.
std::vector<Point> sample_real_box(std::size_t dim, std::size_t count, std::uint64_t seed);

/// Numerical rank after scaling each row to unit max-magnitude; singular
/// values below tolerance * sigma_max count as zero.
CompletenessReport rank_report(const SpanMatrix& m, double tolerance = default_rank_tolerance);

struct Approximation {
    std::vector<std::pair<MultiIndex, Complex>> coefficients; // c_n for each row D^n f
    double residual = 0.0;                                    // || sum c_n D^n f - target ||_2 over degree <= N
};

/// Least-squares fit of a polynomial target by sum_n c_n D^n f in the degree-<=N coefficients.
Approximation approximate_target(const TruncatedSeries& f, const TruncatedSeries& target, int truncation,
                                 int max_order);

} // namespace entire

#endif
