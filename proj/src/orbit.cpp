#include "entire/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entire {

namespace {

TruncatedSeries magnitudes(const TruncatedSeries& f)
{
    std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
    for (auto& v : c) {
        v = std::abs(v);
    }
    return TruncatedSeries(f.basis_ptr(), std::move(c), f.exact_degree(), f.is_polynomial());
}

// T x with every coefficient that lies inside its own cancellation error bound
// set to exactly zero. The bound comes from applying |T| to |x|. Without this,
// each step multiplies earlier rounding by the differentiation factors, and a
// kernel orbit that is zero in exact arithmetic drifts away from zero.
TruncatedSeries step(const CROperator& t, const CROperator& abs_t, const TruncatedSeries& x)
{
    const TruncatedSeries next = apply_cr_operator(t, x);
    const TruncatedSeries bound = apply_cr_operator(abs_t, magnitudes(x));
    const double slack = 16.0 * std::numeric_limits<double>::epsilon();
    std::vector<Complex> c(next.coefficients().begin(), next.coefficients().end());
    const auto b = bound.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (std::abs(c[i]) <= slack * std::abs(b[i])) {
            c[i] = 0.0;
        }
    }
    return TruncatedSeries(next.basis_ptr(), std::move(c), next.exact_degree(), next.is_polynomial());
}

} // namespace

OrbitRecord iterate_orbit(const CROperator& t, const TruncatedSeries& x, int steps)
{
    if (steps < 0) {
        throw Error("steps must be non-negative");
    }
    if (t.dim() != x.dim()) {
        throw Error("dim mismatch in iterate_orbit");
    }
    const int cost = std::max(0, t.conv().support_degree());
    ConvolutionSymbol abs_conv(t.dim());
    for (const auto& [n, b] : t.conv().bcoeffs()) {
        abs_conv.set(n, std::abs(b));
    }
    // M_|F| - (-|a|) z = M_|F| + |a| z, the termwise magnitude of T.
    const CROperator abs_t(t.axis(), -std::abs(t.a()), abs_conv);
    OrbitRecord rec;
    rec.iterates.reserve(static_cast<std::size_t>(steps) + 1);
    rec.iterates.push_back(x);
    for (int s = 1; s <= steps; ++s) {
        const TruncatedSeries& cur = rec.iterates.back();
        if (!cur.is_polynomial() && cur.exact_degree() < cost) {
            throw Error("exactness exhausted at step " + std::to_string(s) + ": iterate exact to degree " +
                        std::to_string(cur.exact_degree()) + " but each step consumes " + std::to_string(cost));
        }
        rec.iterates.push_back(step(t, abs_t, cur));
    }
    return rec;
}

OrbitRecord with_visits(const OrbitRecord& rec, const TruncatedSeries& target, double delta,
                        const SemiNormSpec& spec)
{
    if (!(delta > 0.0)) {
        throw Error("delta must be positive");
    }
    OrbitRecord out = rec;
    out.hits.clear();
    std::vector<double> distances;
    for (std::size_t k = 0; k < rec.iterates.size(); ++k) {
        const TruncatedSeries& it = rec.iterates[k];
        if (target.dim() != it.dim()) {
            throw Error("dimension mismatch between orbit and target");
        }
        const TruncatedSeries aligned = with_cutoff(target, it.cutoff());
        const TruncatedSeries diff = exact_part(linear_combine({{1.0, it}, {-1.0, aligned}}));
        const double dist = seminorm_upper(diff, spec);
        distances.push_back(dist);
        if (k > 0 && dist < delta) {
            out.hits.push_back(static_cast<int>(k));
        }
    }
    out.distances = std::move(distances);
    const int horizon = rec.steps();
    out.density_proxy = horizon > 0 ? static_cast<double>(out.hits.size()) / horizon : 0.0;
    return out;
}

double visit_density(const OrbitRecord& rec, const TruncatedSeries& target, double delta, const SemiNormSpec& spec)
{
    return with_visits(rec, target, delta, spec).density_proxy;
}

} // namespace entire
