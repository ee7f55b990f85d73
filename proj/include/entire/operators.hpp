#ifndef ENTIRE_OPERATORS_HPP
#define ENTIRE_OPERATORS_HPP

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "entire/series.hpp"

namespace entire {

/// Finite sum  sum c * z^alpha * D^beta  in normal order (z-powers to the left).
///
/// A term acts by differentiating with beta, then multiplying by z^alpha.
/// Storage keeps at most one term per (alpha, beta) and never stores zeros.
class WeylOperator {
public:
    using Key = std::pair<MultiIndex, MultiIndex>; // (zpow, dpow)

    explicit WeylOperator(std::size_t dim) : dim_(dim) {}

    static WeylOperator identity(std::size_t dim);
    static WeylOperator coordinate(std::size_t dim, std::size_t axis);
    static WeylOperator derivative(std::size_t dim, std::size_t axis);
    static WeylOperator derivative(const MultiIndex& order);

    std::size_t dim() const noexcept { return dim_; }
    const std::map<Key, Complex>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds c * z^zpow * D^dpow, merging with an existing term.
    void add_term(const MultiIndex& zpow, const MultiIndex& dpow, Complex c);

    /// Largest |c| among stored terms (0 for the zero operator).
    double max_abs_coeff() const;

    WeylOperator& operator+=(const WeylOperator& other);
    WeylOperator& operator-=(const WeylOperator& other);
    WeylOperator& operator*=(Complex s);

    friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
    friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
    friend WeylOperator operator*(Complex s, WeylOperator a) { return a *= s; }
    /// Composition: (A * B) f = A (B f), normal ordered.
    friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);
    friend bool operator==(const WeylOperator&, const WeylOperator&) = default;

private:
    std::size_t dim_;
    std::map<Key, Complex> terms_;
};

/// [A, B] = AB - BA, computed symbolically.
WeylOperator commutator(const WeylOperator& a, const WeylOperator& b);

TruncatedSeries apply_weyl(const WeylOperator& op, const TruncatedSeries& f);

/// Characteristic data of a convolution operator M_F with polynomial symbol
/// F^(lambda) = sum b_n lambda^n / n!, acting as M_F f = sum b_n D^n f / n!.
class ConvolutionSymbol {
public:
    explicit ConvolutionSymbol(std::size_t dim) : dim_(dim) {}
    ConvolutionSymbol(std::size_t dim, std::span<const std::pair<MultiIndex, Complex>> bcoeffs);
    ConvolutionSymbol(std::size_t dim, std::initializer_list<std::pair<MultiIndex, Complex>> bcoeffs);

    /// Symbol of the differential operator sum_k c_k D^k acting on one axis.
    static ConvolutionSymbol from_axis_polynomial(std::size_t dim, std::size_t axis, std::span<const Complex> c);

    std::size_t dim() const noexcept { return dim_; }
    const std::map<MultiIndex, Complex>& bcoeffs() const noexcept { return b_; }
    /// Always true: only finitely supported symbols are representable.
    bool polynomial() const noexcept { return true; }
    /// Largest ||n|| with b_n != 0 (-1 for the zero symbol).
    int support_degree() const;

    void set(const MultiIndex& n, Complex b);
    Complex b(const MultiIndex& n) const;

    WeylOperator to_weyl() const;

    friend bool operator==(const ConvolutionSymbol&, const ConvolutionSymbol&) = default;

private:
    std::size_t dim_;
    std::map<MultiIndex, Complex> b_;
};

TruncatedSeries apply_convolution(const ConvolutionSymbol& sym, const TruncatedSeries& f);

/// (F, f) = sum a_n b_n. Throws when the symbol reaches past f's exact region.
Complex dual_pairing(const ConvolutionSymbol& sym, const TruncatedSeries& f);

/// F^(lambda) = sum b_n lambda^n / n!.
Complex characteristic_roundtrip(const ConvolutionSymbol& sym, const Point& lambda);

/// T = M_C - a z_axis; satisfies [T, d/dz_k] = delta_{axis,k} a I by construction.
class CROperator {
public:
    CROperator(std::size_t axis, Complex a, ConvolutionSymbol conv);

    std::size_t dim() const noexcept { return conv_.dim(); }
    /// Zero-based axis.
    std::size_t axis() const noexcept { return axis_; }
    Complex a() const noexcept { return a_; }
    const ConvolutionSymbol& conv() const noexcept { return conv_; }

    WeylOperator to_weyl() const;

    friend bool operator==(const CROperator&, const CROperator&) = default;

private:
    std::size_t axis_;
    Complex a_;
    ConvolutionSymbol conv_;
};

TruncatedSeries apply_cr_operator(const CROperator& t, const TruncatedSeries& f);

/// An operator together with the constant it is claimed to satisfy the
/// commutation relations with, on the given axis.
struct CommutationClaim {
    WeylOperator op;
    std::size_t axis;
    Complex a;
};

struct CommutationResidual {
    std::size_t j; // operator axis
    std::size_t k; // derivative axis
    double numeric = 0.0;   // max coefficient of ([T,D_k] - delta a I) m over probe monomials
    double symbolic = 0.0;  // max coefficient of the symbolic operator [T,D_k] - delta a I
};

struct CrReport {
    int probe_degree = 0;
    double tolerance = 0.0;
    std::vector<CommutationResidual> residuals;
    double max_residual = 0.0;
    bool pass = false;
};

inline constexpr double default_cr_tolerance = 1e-12;

CrReport verify_commutation(std::span<const CommutationClaim> claims, int probe_degree,
                            double tolerance = default_cr_tolerance);
CrReport verify_cr(std::span<const CROperator> ops, int probe_degree, double tolerance = default_cr_tolerance);

} // namespace entire

#endif
