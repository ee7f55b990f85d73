#include "entire/fhc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entire {

KernelGenerator::KernelGenerator(std::vector<AxisKernelProblem> problems) : problems_(std::move(problems))
{
    if (problems_.empty()) {
        throw Error("generator needs one kernel problem per axis");
    }
    for (const auto& p : problems_) {
        if (p.a == Complex{}) {
            throw Error("generator constants a_j must be nonzero");
        }
    }
}

std::vector<Complex> KernelGenerator::a() const
{
    std::vector<Complex> out;
    for (const auto& p : problems_) {
        out.push_back(p.a);
    }
    return out;
}

std::vector<CROperator> KernelGenerator::operators() const
{
    std::vector<CROperator> out;
    for (std::size_t j = 0; j < problems_.size(); ++j) {
        out.push_back(problems_[j].to_operator(dim(), j));
    }
    return out;
}

TruncatedSeries KernelGenerator::realize(int degree) const
{
    std::vector<AxisKernelProblem> problems = problems_;
    for (auto& p : problems) {
        p.degree = degree;
    }
    return joint_kernel(problems);
}

H0Vector::H0Vector(std::shared_ptr<const KernelGenerator> generator) : generator_(std::move(generator))
{
    if (!generator_) {
        throw Error("H0 vector needs a generator");
    }
}

H0Vector::H0Vector(std::shared_ptr<const KernelGenerator> generator, std::map<MultiIndex, Complex> terms)
    : H0Vector(std::move(generator))
{
    for (const auto& [n, c] : terms) {
        add(n, c);
    }
}

H0Vector H0Vector::basis(std::shared_ptr<const KernelGenerator> generator, const MultiIndex& n)
{
    H0Vector x(std::move(generator));
    x.add(n, 1.0);
    return x;
}

void H0Vector::add(const MultiIndex& n, Complex c)
{
    if (n.dim() != dim()) {
        throw Error("dim mismatch in H0 vector");
    }
    if (c == Complex{}) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(n, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{}) {
            terms_.erase(it);
        }
    }
}

Complex H0Vector::coeff(const MultiIndex& n) const
{
    auto it = terms_.find(n);
    return it == terms_.end() ? Complex{} : it->second;
}

int H0Vector::max_order() const
{
    int r = -1;
    for (const auto& [n, c] : terms_) {
        r = std::max(r, n.order());
    }
    return r;
}

TruncatedSeries H0Vector::realize(int realization_degree) const
{
    const int extra = std::max(0, max_order());
    const TruncatedSeries f = generator_->realize(realization_degree + extra);
    std::vector<std::pair<Complex, TruncatedSeries>> parts;
    for (const auto& [n, c] : terms_) {
        parts.emplace_back(c, with_cutoff(differentiate(f, n), realization_degree));
    }
    if (parts.empty()) {
        return TruncatedSeries::zero(dim(), realization_degree, realization_degree, true);
    }
    return linear_combine(parts);
}

LadderTerm t_power_on_basis(const MultiIndex& k, const MultiIndex& n, std::span<const Complex> a)
{
    if (k.dim() != n.dim() || a.size() != n.dim()) {
        throw Error("dim mismatch in t_power_on_basis");
    }
    if (!k.divides(n)) {
        return {Complex{}, std::nullopt};
    }
    Complex scalar = falling_factorial(n, k);
    for (std::size_t j = 0; j < n.dim(); ++j) {
        scalar *= std::pow(a[j], k[j]);
    }
    return {scalar, n - k};
}

H0Vector apply_t(const H0Vector& x, std::size_t axis)
{
    if (axis >= x.dim()) {
        throw Error("axis out of range");
    }
    const Complex a = x.generator().problems()[axis].a;
    H0Vector out(x.generator_ptr());
    for (const auto& [n, c] : x.terms()) {
        if (n[axis] == 0) {
            continue;
        }
        MultiIndex lowered = n;
        lowered[axis] -= 1;
        out.add(lowered, c * a * static_cast<double>(n[axis]));
    }
    return out;
}

H0Vector apply_s(const H0Vector& x, std::size_t axis)
{
    if (axis >= x.dim()) {
        throw Error("axis out of range");
    }
    const Complex a = x.generator().problems()[axis].a;
    H0Vector out(x.generator_ptr());
    for (const auto& [n, c] : x.terms()) {
        MultiIndex raised = n;
        raised[axis] += 1;
        out.add(raised, c / (a * static_cast<double>(raised[axis])));
    }
    return out;
}

namespace {

bool same_vector(const H0Vector& lhs, const H0Vector& rhs)
{
    constexpr double rel = 1e-14;
    std::map<MultiIndex, Complex> all = lhs.terms();
    for (const auto& [n, c] : rhs.terms()) {
        all.try_emplace(n, c);
    }
    for (const auto& [n, unused] : all) {
        const Complex a = lhs.coeff(n);
        const Complex b = rhs.coeff(n);
        if (std::abs(a - b) > rel * std::max(std::abs(a), std::abs(b))) {
            return false;
        }
    }
    return true;
}

} // namespace

bool verify_right_inverse(const H0Vector& x, std::size_t axis)
{
    return same_vector(apply_t(apply_s(x, axis), axis), x);
}

bool verify_left_inverse(const H0Vector& x, std::size_t axis)
{
    return same_vector(apply_s(apply_t(x, axis), axis), x);
}

int nilpotency_index(const H0Vector& x, std::size_t axis)
{
    if (x.is_zero()) {
        throw Error("nilpotency index undefined for the zero vector");
    }
    if (axis >= x.dim()) {
        throw Error("axis out of range");
    }
    int k = 0;
    for (H0Vector y = x; !y.is_zero(); y = apply_t(y, axis)) {
        ++k;
    }
    return k;
}

double default_epsilon(std::span<const Complex> a)
{
    double worst = 0.0;
    for (Complex v : a) {
        worst = std::max(worst, 1.0 / std::abs(v));
    }
    return 2.0 * worst;
}

namespace {

struct Majorants {
    std::vector<double> u;
    std::vector<double> ratios;
};

Majorants majorants(const H0Vector& x, std::size_t axis, const SemiNormSpec& spec, int kmax, int degree)
{
    Majorants out;
    // One realization of f serves every S_j^k x; S_j^kmax x has the largest order.
    const int extra = std::max(0, x.max_order()) + kmax;
    const TruncatedSeries f = x.generator().realize(degree + extra);
    H0Vector y = x;
    for (int k = 0; k <= kmax; ++k) {
        std::vector<std::pair<Complex, TruncatedSeries>> parts;
        for (const auto& [n, c] : y.terms()) {
            parts.emplace_back(c, with_cutoff(differentiate(f, n), degree));
        }
        const double u = parts.empty() ? 0.0 : seminorm_upper(linear_combine(parts), spec);
        out.u.push_back(u);
        if (k > 0) {
            const double prev = out.u[static_cast<std::size_t>(k - 1)];
            out.ratios.push_back(prev > 0.0 ? u / prev : std::numeric_limits<double>::quiet_NaN());
        }
        y = apply_s(y, axis);
    }
    return out;
}

} // namespace

ConvergenceReport convergence_report(const H0Vector& x, std::size_t axis, const SemiNormSpec& spec, int kmax,
                                     int realization_degree)
{
    if (axis >= x.dim()) {
        throw Error("axis out of range");
    }
    if (x.is_zero()) {
        throw Error("convergence report needs a nonzero vector");
    }
    if (kmax < 1 || realization_degree < 0 || spec.m < 1) {
        throw Error("convergence report needs kmax >= 1, m >= 1 and a non-negative realization degree");
    }
    const auto a = x.generator().a();
    double worst = 0.0;
    for (Complex v : a) {
        worst = std::max(worst, 1.0 / std::abs(v));
    }
    if (!(spec.epsilon > worst)) {
        throw Error("epsilon violates the radius condition epsilon > max_s 1/|a_s| = " + std::to_string(worst));
    }

    ConvergenceReport r;
    r.axis = axis;
    r.m = spec.m;
    r.epsilon = spec.epsilon;
    r.bound = 1.0 / (std::abs(a[axis]) * spec.radius());
    r.realization_degree = realization_degree;

    Majorants base = majorants(x, axis, spec, kmax, realization_degree);
    r.u = std::move(base.u);
    r.ratios = std::move(base.ratios);
    double sum = 0.0;
    for (std::size_t k = 0; k < r.u.size(); ++k) {
        sum += r.u[k];
        r.partial_sums.push_back(sum);
        if (k > 0) {
            r.kth_roots.push_back(std::pow(r.u[k], 1.0 / static_cast<double>(k)));
        }
    }
    r.ratio_trend = r.ratios.back();
    r.kth_root_trend = r.kth_roots.back();

    const Majorants extended = majorants(x, axis, spec, kmax, realization_degree + stability_degree_step);
    r.ratio_trend_extended = extended.ratios.back();
    r.stable = std::isfinite(r.ratio_trend) && std::isfinite(r.ratio_trend_extended) &&
               std::abs(r.ratio_trend - r.ratio_trend_extended) <=
                   stability_tolerance * std::max(std::abs(r.ratio_trend), std::abs(r.ratio_trend_extended));
    return r;
}

} // namespace entire
