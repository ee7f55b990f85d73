#ifndef ENTIRE_KERNEL_HPP
#define ENTIRE_KERNEL_HPP

#include <span>
#include <vector>

#include "entire/operators.hpp"

namespace entire {

/// Univariate equation C(D) f = a z f with C(D) = sum_k c_k D^k, i.e. T f = 0
/// for T = C(D) - a z. The seeds fix f_0, ..., f_{p-1} where p = deg C.
struct AxisKernelProblem {
    std::vector<Complex> charpoly;
    Complex a{1.0, 0.0};
    std::vector<Complex> seeds;
    int degree = 0;

    /// p = deg C (trailing zero coefficients ignored).
    int order() const;

    /// The CR operator this problem solves, acting on `axis` of C^dim.
    CROperator to_operator(std::size_t dim, std::size_t axis) const;

    /// Problem for an operator whose convolution part acts on its own axis only.
    /// Seeds default to (1, 0, ..., 0).
    static AxisKernelProblem from_operator(const CROperator& t, int degree, std::vector<Complex> seeds = {});
};

/// Coefficients past this magnitude abort the solve.
inline constexpr double kernel_growth_limit = 1e150;

TruncatedSeries solve_kernel_axis(const AxisKernelProblem& p);

/// f(z) = prod_j f_j(z_j) truncated to total degree; one problem per axis,
/// all with the same degree.
TruncatedSeries joint_kernel(std::span<const AxisKernelProblem> problems);
/// As above, checking that exactly `dim` problems were supplied.
TruncatedSeries joint_kernel(std::span<const AxisKernelProblem> problems, std::size_t dim);

struct KernelReport {
    std::vector<double> residuals; // per operator, max |T_j f| on the exact region
    double tolerance = 0.0;
    bool pass = false;
};

inline constexpr double default_kernel_tolerance = 1e-12;

KernelReport verify_kernel(std::span<const CROperator> ops, const TruncatedSeries& f,
                           double tolerance = default_kernel_tolerance);

} // namespace entire

#endif
