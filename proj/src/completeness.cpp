#include "entire/completeness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace entire {

namespace {

std::vector<Complex> truncated_row(const TruncatedSeries& g, const MonomialBasis& layout)
{
    std::vector<Complex> row(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        row[i] = g.coeff(layout[i]);
    }
    return row;
}

Eigen::MatrixXcd to_matrix(const SpanMatrix& m)
{
    const auto cols = static_cast<Eigen::Index>(m.ambient());
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(m.rows.size()), cols);
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        if (m.rows[r].size() != m.ambient()) {
            throw Error("span matrix row has wrong length");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            a(static_cast<Eigen::Index>(r), c) = m.rows[r][static_cast<std::size_t>(c)];
        }
    }
    return a;
}

} // namespace

SpanMatrix derivative_span(const TruncatedSeries& f, int truncation, int max_order)
{
    if (truncation < 0 || max_order < 0) {
        throw Error("truncation and max_order must be non-negative");
    }
    const int required = truncation + max_order;
    if (!f.is_polynomial() && f.exact_degree() < required) {
        throw Error("derivative span needs exact_degree >= " + std::to_string(required) + ", got " +
                    std::to_string(f.exact_degree()));
    }
    const MonomialBasis layout(f.dim(), truncation);
    const MonomialBasis orders(f.dim(), max_order);
    SpanMatrix m{f.dim(), truncation, {}, {}};
    m.rows.reserve(orders.size());
    for (const MultiIndex& n : orders.monomials()) {
        m.rows.push_back(truncated_row(differentiate(f, n), layout));
        m.labels.emplace_back(n);
    }
    return m;
}

SpanMatrix translate_span(const TruncatedSeries& f, int truncation, std::span<const Point> samples)
{
    if (samples.empty()) {
        throw Error("translate span needs at least one sample");
    }
    if (truncation < 0) {
        throw Error("truncation must be non-negative");
    }
    const MonomialBasis layout(f.dim(), truncation);
    SpanMatrix m{f.dim(), truncation, {}, {}};
    m.rows.reserve(samples.size());
    for (const Point& lambda : samples) {
        m.rows.push_back(truncated_row(translate(f, lambda), layout));
        m.labels.emplace_back(lambda);
    }
    return m;
}

std::vector<Point> sample_real_box(std::size_t dim, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<Point> out(count, Point(dim));
    for (auto& p : out) {
        for (auto& v : p) {
            v = coord(rng);
        }
    }
    return out;
}

CompletenessReport rank_report(const SpanMatrix& m, double tolerance)
{
    if (!(tolerance > 0.0)) {
        throw Error("rank tolerance must be positive");
    }
    if (m.rows.empty()) {
        throw Error("empty span matrix");
    }
    Eigen::MatrixXcd a = to_matrix(m);
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        const double scale = a.row(r).cwiseAbs().maxCoeff();
        if (scale > 0.0) {
            a.row(r) /= scale;
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const Eigen::VectorXd& sigma = svd.singularValues();

    CompletenessReport report;
    report.ambient = m.ambient();
    report.tolerance = tolerance;
    report.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    const double top = sigma.size() > 0 ? sigma(0) : 0.0;
    if (top > 0.0) {
        for (Eigen::Index i = 0; i < sigma.size(); ++i) {
            if (sigma(i) > tolerance * top) {
                ++report.rank;
            }
        }
    }
    report.complete_at_truncation = report.rank == report.ambient;
    return report;
}

Approximation approximate_target(const TruncatedSeries& f, const TruncatedSeries& target, int truncation,
                                 int max_order)
{
    if (target.dim() != f.dim()) {
        throw Error("dim mismatch in approximate_target");
    }
    if (!target.is_polynomial()) {
        throw Error("approximation target must be a polynomial");
    }
    for (const auto& [n, c] : target.entries()) {
        if (n.order() > truncation) {
            throw Error("target degree exceeds truncation");
        }
    }
    const SpanMatrix m = derivative_span(f, truncation, max_order);
    const MonomialBasis layout(f.dim(), truncation);
    const Eigen::MatrixXcd raw = to_matrix(m).transpose();
    Eigen::VectorXcd t(raw.rows());
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        t(i) = target.coeff(layout[static_cast<std::size_t>(i)]);
    }

    // Columns grow like n!; fit on unit-scaled columns and undo the scaling.
    Eigen::MatrixXcd scaled = raw;
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(raw.cols());
    for (Eigen::Index c = 0; c < raw.cols(); ++c) {
        const double s = raw.col(c).cwiseAbs().maxCoeff();
        if (s > 0.0) {
            scale(c) = s;
            scaled.col(c) /= s;
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXcd y = svd.solve(t);
    for (Eigen::Index c = 0; c < y.size(); ++c) {
        y(c) /= scale(c);
    }

    Approximation out;
    out.residual = (raw * y - t).norm();
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        out.coefficients.emplace_back(std::get<MultiIndex>(m.labels[i]), y(static_cast<Eigen::Index>(i)));
    }
    return out;
}

} // namespace entire
