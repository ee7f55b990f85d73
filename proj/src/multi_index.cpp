#include "entire/multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace entire {

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries))
{
    for (int e : entries_) {
        if (e < 0) {
            throw Error("multi-index entries must be non-negative");
        }
    }
}

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t axis)
{
    if (axis >= dim) {
        throw Error("axis out of range");
    }
    MultiIndex e(dim);
    e.entries_[axis] = 1;
    return e;
}

int MultiIndex::order() const noexcept
{
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

bool MultiIndex::divides(const MultiIndex& other) const
{
    if (dim() != other.dim()) {
        throw Error("multi-index dimension mismatch");
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        if (entries_[i] > other.entries_[i]) {
            return false;
        }
    }
    return true;
}

double MultiIndex::factorial() const
{
    double r = 1.0;
    for (int e : entries_) {
        for (int i = 2; i <= e; ++i) {
            r *= i;
        }
    }
    return r;
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& other)
{
    if (dim() != other.dim()) {
        throw Error("multi-index dimension mismatch");
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

MultiIndex& MultiIndex::operator-=(const MultiIndex& other)
{
    if (!other.divides(*this)) {
        throw Error("multi-index subtraction would go negative");
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

bool operator<(const MultiIndex& a, const MultiIndex& b)
{
    const int oa = a.order();
    const int ob = b.order();
    if (oa != ob) {
        return oa < ob;
    }
    // Same order: larger leading exponent sorts first.
    return std::lexicographical_compare(b.entries_.begin(), b.entries_.end(), a.entries_.begin(),
                                        a.entries_.end());
}

std::string MultiIndex::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << entries_[i];
    }
    os << ')';
    return os.str();
}

double binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

double falling_factorial(const MultiIndex& n, const MultiIndex& k)
{
    if (!k.divides(n)) {
        throw Error("falling factorial needs k <= n");
    }
    double r = 1.0;
    for (std::size_t i = 0; i < n.dim(); ++i) {
        for (int t = 0; t < k[i]; ++t) {
            r *= n[i] - t;
        }
    }
    return r;
}

double multi_binomial(const MultiIndex& n, const MultiIndex& k)
{
    double r = 1.0;
    for (std::size_t i = 0; i < n.dim(); ++i) {
        r *= binomial(n[i], k[i]);
    }
    return r;
}

Complex power(const Point& z, const MultiIndex& n)
{
    if (z.size() != n.dim()) {
        throw Error("point dimension mismatch");
    }
    Complex r{1.0, 0.0};
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (int t = 0; t < n[i]; ++t) {
            r *= z[i];
        }
    }
    return r;
}

namespace {

// Monomials of exact degree `total` in `vars` variables.
std::size_t count_exact(std::size_t vars, int total)
{
    if (vars == 0) {
        return total == 0 ? 1 : 0;
    }
    return static_cast<std::size_t>(binomial(total + static_cast<int>(vars) - 1, static_cast<int>(vars) - 1) + 0.5);
}

void enumerate_degree(std::vector<int>& cur, std::size_t pos, int remaining, std::vector<MultiIndex>& out)
{
    if (pos + 1 == cur.size()) {
        cur[pos] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int t = remaining; t >= 0; --t) {
        cur[pos] = t;
        enumerate_degree(cur, pos + 1, remaining - t, out);
    }
}

} // namespace

std::size_t monomial_count(std::size_t dim, int cutoff)
{
    if (cutoff < 0) {
        return 0;
    }
    return static_cast<std::size_t>(binomial(cutoff + static_cast<int>(dim), static_cast<int>(dim)) + 0.5);
}

MonomialBasis::MonomialBasis(std::size_t dim, int cutoff) : dim_(dim), cutoff_(cutoff)
{
    if (dim == 0) {
        throw Error("dimension must be positive");
    }
    if (cutoff < 0) {
        throw Error("cutoff must be non-negative");
    }
    monomials_.reserve(monomial_count(dim, cutoff));
    std::vector<int> cur(dim, 0);
    for (int s = 0; s <= cutoff; ++s) {
        enumerate_degree(cur, 0, s, monomials_);
    }
}

std::vector<MultiIndex> monomials(std::size_t dim, int cutoff)
{
    return MonomialBasis(dim, cutoff).monomials();
}

std::shared_ptr<const MonomialBasis> MonomialBasis::make(std::size_t dim, int cutoff)
{
    return std::make_shared<const MonomialBasis>(dim, cutoff);
}

std::size_t MonomialBasis::degree_offset(int degree) const
{
    return monomial_count(dim_, degree - 1);
}

std::size_t MonomialBasis::index_of(const MultiIndex& n) const
{
    if (n.dim() != dim_) {
        throw Error("multi-index dimension mismatch");
    }
    int remaining = n.order();
    if (remaining > cutoff_) {
        throw Error("index exceeds cutoff");
    }
    std::size_t idx = degree_offset(remaining);
    for (std::size_t pos = 0; pos + 1 < dim_; ++pos) {
        const std::size_t rest = dim_ - pos - 1;
        for (int t = remaining; t > n[pos]; --t) {
            idx += count_exact(rest, remaining - t);
        }
        remaining -= n[pos];
    }
    return idx;
}

} // namespace entire
