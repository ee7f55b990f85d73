#include "entire/operators.hpp"

#include <algorithm>
#include <cmath>

namespace entire {

WeylOperator WeylOperator::identity(std::size_t dim)
{
    WeylOperator op(dim);
    op.add_term(MultiIndex(dim), MultiIndex(dim), 1.0);
    return op;
}

WeylOperator WeylOperator::coordinate(std::size_t dim, std::size_t axis)
{
    WeylOperator op(dim);
    op.add_term(MultiIndex::unit(dim, axis), MultiIndex(dim), 1.0);
    return op;
}

WeylOperator WeylOperator::derivative(std::size_t dim, std::size_t axis)
{
    return derivative(MultiIndex::unit(dim, axis));
}

WeylOperator WeylOperator::derivative(const MultiIndex& order)
{
    WeylOperator op(order.dim());
    op.add_term(MultiIndex(order.dim()), order, 1.0);
    return op;
}

void WeylOperator::add_term(const MultiIndex& zpow, const MultiIndex& dpow, Complex c)
{
    if (zpow.dim() != dim_ || dpow.dim() != dim_) {
        throw Error("dim mismatch in Weyl term");
    }
    if (c == Complex{}) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(Key{zpow, dpow}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{}) {
            terms_.erase(it);
        }
    }
}

double WeylOperator::max_abs_coeff() const
{
    double r = 0.0;
    for (const auto& [key, c] : terms_) {
        r = std::max(r, std::abs(c));
    }
    return r;
}

WeylOperator& WeylOperator::operator+=(const WeylOperator& other)
{
    if (other.dim_ != dim_) {
        throw Error("dim mismatch");
    }
    for (const auto& [key, c] : other.terms_) {
        add_term(key.first, key.second, c);
    }
    return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& other)
{
    if (other.dim_ != dim_) {
        throw Error("dim mismatch");
    }
    for (const auto& [key, c] : other.terms_) {
        add_term(key.first, key.second, -c);
    }
    return *this;
}

WeylOperator& WeylOperator::operator*=(Complex s)
{
    if (s == Complex{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_) {
        c *= s;
    }
    return *this;
}

namespace {

// Every kappa with kappa <= bound componentwise.
std::vector<MultiIndex> sub_indices(const MultiIndex& bound)
{
    std::vector<MultiIndex> out{MultiIndex(bound.dim())};
    for (std::size_t ax = 0; ax < bound.dim(); ++ax) {
        std::vector<MultiIndex> next;
        for (const auto& base : out) {
            for (int t = 0; t <= bound[ax]; ++t) {
                MultiIndex m = base;
                m[ax] = t;
                next.push_back(std::move(m));
            }
        }
        out = std::move(next);
    }
    return out;
}

MultiIndex componentwise_min(const MultiIndex& a, const MultiIndex& b)
{
    MultiIndex r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        r[i] = std::min(a[i], b[i]);
    }
    return r;
}

} // namespace

WeylOperator operator*(const WeylOperator& a, const WeylOperator& b)
{
    if (a.dim() != b.dim()) {
        throw Error("dim mismatch in composition");
    }
    WeylOperator out(a.dim());
    for (const auto& [ka, ca] : a.terms()) {
        const auto& [alpha, beta] = ka;
        for (const auto& [kb, cb] : b.terms()) {
            const auto& [gamma, delta] = kb;
            // D^beta z^gamma = sum_kappa binom(beta, kappa) gamma!/(gamma-kappa)! z^(gamma-kappa) D^(beta-kappa)
            for (const MultiIndex& kappa : sub_indices(componentwise_min(beta, gamma))) {
                const double w = multi_binomial(beta, kappa) * falling_factorial(gamma, kappa);
                out.add_term(alpha + (gamma - kappa), (beta - kappa) + delta, w * ca * cb);
            }
        }
    }
    return out;
}

WeylOperator commutator(const WeylOperator& a, const WeylOperator& b)
{
    if (a.dim() != b.dim()) {
        throw Error("dim mismatch in commutator");
    }
    return a * b - b * a;
}

TruncatedSeries apply_weyl(const WeylOperator& op, const TruncatedSeries& f)
{
    if (op.dim() != f.dim()) {
        throw Error("dim mismatch in apply_weyl");
    }
    if (op.is_zero()) {
        return TruncatedSeries::zero(f.dim(), f.cutoff(), f.cutoff(), true);
    }
    std::vector<std::pair<Complex, TruncatedSeries>> parts;
    parts.reserve(op.terms().size());
    for (const auto& [key, c] : op.terms()) {
        const auto& [zpow, dpow] = key;
        TruncatedSeries g = differentiate(f, dpow);
        for (std::size_t ax = 0; ax < f.dim(); ++ax) {
            for (int t = 0; t < zpow[ax]; ++t) {
                g = multiply_coordinate(g, ax);
            }
        }
        parts.emplace_back(c, std::move(g));
    }
    return linear_combine(parts);
}

ConvolutionSymbol::ConvolutionSymbol(std::size_t dim, std::span<const std::pair<MultiIndex, Complex>> bcoeffs)
    : dim_(dim)
{
    for (const auto& [n, b] : bcoeffs) {
        if (b_.contains(n)) {
            throw Error("duplicate symbol index " + n.to_string());
        }
        set(n, b);
    }
}

ConvolutionSymbol::ConvolutionSymbol(std::size_t dim, std::initializer_list<std::pair<MultiIndex, Complex>> bcoeffs)
    : ConvolutionSymbol(dim, std::span<const std::pair<MultiIndex, Complex>>(bcoeffs.begin(), bcoeffs.size()))
{
}

ConvolutionSymbol ConvolutionSymbol::from_axis_polynomial(std::size_t dim, std::size_t axis,
                                                          std::span<const Complex> c)
{
    ConvolutionSymbol sym(dim);
    double fact = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0) {
            fact *= static_cast<double>(k);
        }
        MultiIndex n(dim);
        if (axis >= dim) {
            throw Error("axis out of range");
        }
        n[axis] = static_cast<int>(k);
        sym.set(n, c[k] * fact);
    }
    return sym;
}

int ConvolutionSymbol::support_degree() const
{
    int deg = -1;
    for (const auto& [n, b] : b_) {
        deg = std::max(deg, n.order());
    }
    return deg;
}

void ConvolutionSymbol::set(const MultiIndex& n, Complex b)
{
    if (n.dim() != dim_) {
        throw Error("dim mismatch in symbol index");
    }
    if (b == Complex{}) {
        b_.erase(n);
    } else {
        b_[n] = b;
    }
}

Complex ConvolutionSymbol::b(const MultiIndex& n) const
{
    auto it = b_.find(n);
    return it == b_.end() ? Complex{} : it->second;
}

WeylOperator ConvolutionSymbol::to_weyl() const
{
    WeylOperator op(dim_);
    for (const auto& [n, b] : b_) {
        op.add_term(MultiIndex(dim_), n, b / n.factorial());
    }
    return op;
}

TruncatedSeries apply_convolution(const ConvolutionSymbol& sym, const TruncatedSeries& f)
{
    if (sym.dim() != f.dim()) {
        throw Error("dim mismatch in apply_convolution");
    }
    return apply_weyl(sym.to_weyl(), f);
}

Complex dual_pairing(const ConvolutionSymbol& sym, const TruncatedSeries& f)
{
    if (sym.dim() != f.dim()) {
        throw Error("dim mismatch in dual_pairing");
    }
    if (!f.is_polynomial() && sym.support_degree() > f.exact_degree()) {
        throw Error("pairing not determined at this truncation: symbol degree " +
                    std::to_string(sym.support_degree()) + " exceeds exact degree " +
                    std::to_string(f.exact_degree()));
    }
    Complex sum{};
    for (const auto& [n, b] : sym.bcoeffs()) {
        sum += b * f.coeff(n);
    }
    return sum;
}

Complex characteristic_roundtrip(const ConvolutionSymbol& sym, const Point& lambda)
{
    if (lambda.size() != sym.dim()) {
        throw Error("dim mismatch in characteristic_roundtrip");
    }
    Complex sum{};
    for (const auto& [n, b] : sym.bcoeffs()) {
        sum += b * power(lambda, n) / n.factorial();
    }
    return sum;
}

CROperator::CROperator(std::size_t axis, Complex a, ConvolutionSymbol conv)
    : axis_(axis), a_(a), conv_(std::move(conv))
{
    if (axis_ >= conv_.dim()) {
        throw Error("axis out of range");
    }
    if (a_ == Complex{}) {
        throw Error("CR operator constant a must be nonzero");
    }
}

WeylOperator CROperator::to_weyl() const
{
    WeylOperator op = conv_.to_weyl();
    op.add_term(MultiIndex::unit(dim(), axis_), MultiIndex(dim()), -a_);
    return op;
}

TruncatedSeries apply_cr_operator(const CROperator& t, const TruncatedSeries& f)
{
    if (t.dim() != f.dim()) {
        throw Error("dim mismatch in apply_cr_operator");
    }
    const TruncatedSeries conv = apply_convolution(t.conv(), f);
    const TruncatedSeries shifted = multiply_coordinate(f, t.axis());
    return linear_combine({{1.0, conv}, {-t.a(), shifted}});
}

namespace {

int max_z_order(const WeylOperator& op)
{
    int r = 0;
    for (const auto& [key, c] : op.terms()) {
        r = std::max(r, key.first.order());
    }
    return r;
}

} // namespace

CrReport verify_commutation(std::span<const CommutationClaim> claims, int probe_degree, double tolerance)
{
    if (probe_degree < 0) {
        throw Error("probe degree must be non-negative");
    }
    CrReport report;
    report.probe_degree = probe_degree;
    report.tolerance = tolerance;
    for (const auto& claim : claims) {
        const std::size_t d = claim.op.dim();
        if (claim.axis >= d) {
            throw Error("axis out of range");
        }
        const int cutoff = probe_degree + max_z_order(claim.op);
        const auto basis = MonomialBasis::make(d, cutoff);
        const std::size_t probes = basis->degree_offset(probe_degree + 1);
        for (std::size_t k = 0; k < d; ++k) {
            const Complex expected = (k == claim.axis) ? claim.a : Complex{};
            CommutationResidual res{claim.axis, k};

            WeylOperator defect = commutator(claim.op, WeylOperator::derivative(d, k));
            defect -= expected * WeylOperator::identity(d);
            res.symbolic = defect.max_abs_coeff();

            const MultiIndex dk = MultiIndex::unit(d, k);
            for (std::size_t p = 0; p < probes; ++p) {
                std::vector<Complex> c(basis->size());
                c[p] = 1.0;
                const TruncatedSeries mono(basis, std::move(c), cutoff, true);
                const TruncatedSeries lhs = apply_weyl(claim.op, differentiate(mono, dk));
                const TruncatedSeries rhs = differentiate(apply_weyl(claim.op, mono), dk);
                const TruncatedSeries r = linear_combine({{1.0, lhs}, {-1.0, rhs}, {-expected, mono}});
                res.numeric = std::max(res.numeric, r.max_abs_coeff(r.exact_degree()));
            }
            report.max_residual = std::max({report.max_residual, res.numeric, res.symbolic});
            report.residuals.push_back(res);
        }
    }
    report.pass = report.max_residual <= tolerance;
    return report;
}

CrReport verify_cr(std::span<const CROperator> ops, int probe_degree, double tolerance)
{
    std::vector<CommutationClaim> claims;
    claims.reserve(ops.size());
    for (const auto& t : ops) {
        claims.push_back({t.to_weyl(), t.axis(), t.a()});
    }
    return verify_commutation(claims, probe_degree, tolerance);
}

} // namespace entire
