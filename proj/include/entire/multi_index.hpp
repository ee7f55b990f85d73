#ifndef ENTIRE_MULTI_INDEX_HPP
#define ENTIRE_MULTI_INDEX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace entire {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

/// Contract violation raised by any library operation.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exponent tuple n = (n_1, ..., n_d) of a monomial z^n or derivative D^n.
///
/// Comparison is graded lexicographic: lower total order first, and within
/// the same order larger leading exponents first, so that in two variables
/// the degree-2 block reads z1^2, z1 z2, z2^2.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t dim) : entries_(dim, 0) {}
    MultiIndex(std::initializer_list<int> entries);
    explicit MultiIndex(std::vector<int> entries);

    static MultiIndex unit(std::size_t dim, std::size_t axis);

    std::size_t dim() const noexcept { return entries_.size(); }
    int order() const noexcept;
    int operator[](std::size_t i) const { return entries_[i]; }
    int& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<int>& entries() const noexcept { return entries_; }

    /// Componentwise n <= m.
    bool divides(const MultiIndex& other) const;

    /// n! = n_1! ... n_d!
    double factorial() const;

    MultiIndex& operator+=(const MultiIndex& other);
    /// Throws unless other <= *this componentwise.
    MultiIndex& operator-=(const MultiIndex& other);

    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator<(const MultiIndex& a, const MultiIndex& b);
    friend bool operator>(const MultiIndex& a, const MultiIndex& b) { return b < a; }

    std::string to_string() const;

private:
    std::vector<int> entries_;
};

/// binom(n, k) as a double; zero outside 0 <= k <= n.
double binomial(int n, int k);

/// n!/(n-k)! for each axis multiplied together; requires k <= n.
double falling_factorial(const MultiIndex& n, const MultiIndex& k);

/// Product of componentwise binomials binom(n_i, k_i).
double multi_binomial(const MultiIndex& n, const MultiIndex& k);

/// z^n for a point z of matching dimension.
Complex power(const Point& z, const MultiIndex& n);

/// All monomials of total degree <= cutoff in `dim` variables, laid out in
/// graded-lex order, with an O(d) closed-form rank.
class MonomialBasis {
public:
    MonomialBasis(std::size_t dim, int cutoff);

    static std::shared_ptr<const MonomialBasis> make(std::size_t dim, int cutoff);

    std::size_t dim() const noexcept { return dim_; }
    int cutoff() const noexcept { return cutoff_; }
    std::size_t size() const noexcept { return monomials_.size(); }
    const MultiIndex& operator[](std::size_t i) const { return monomials_[i]; }
    const std::vector<MultiIndex>& monomials() const noexcept { return monomials_; }

    /// Number of monomials of total degree strictly below `degree`.
    std::size_t degree_offset(int degree) const;

    /// Position of n in the layout; n must have order <= cutoff.
    std::size_t index_of(const MultiIndex& n) const;

private:
    std::size_t dim_;
    int cutoff_;
    std::vector<MultiIndex> monomials_;
};

/// Number of monomials of total degree <= cutoff in dim variables.
std::size_t monomial_count(std::size_t dim, int cutoff);

/// The graded-lex monomial list of MonomialBasis(dim, cutoff), by value.
std::vector<MultiIndex> monomials(std::size_t dim, int cutoff);

} // namespace entire

#endif
