#ifndef ENTIRE_FHC_HPP
#define ENTIRE_FHC_HPP

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "entire/kernel.hpp"

namespace entire {

/// A joint-kernel element f of T_1, ..., T_d, realizable at any truncation
/// degree from its per-axis problems.
class KernelGenerator {
public:
    explicit KernelGenerator(std::vector<AxisKernelProblem> problems);

    std::size_t dim() const noexcept { return problems_.size(); }
    const std::vector<AxisKernelProblem>& problems() const noexcept { return problems_; }
    /// The constants a_j of the operator family.
    std::vector<Complex> a() const;
    std::vector<CROperator> operators() const;

    /// f truncated to total degree `degree`, exact throughout.
    TruncatedSeries realize(int degree) const;

private:
    std::vector<AxisKernelProblem> problems_;
};

/// Finite combination x = sum c_n D^n f over the generator's derivatives.
class H0Vector {
public:
    explicit H0Vector(std::shared_ptr<const KernelGenerator> generator);
    H0Vector(std::shared_ptr<const KernelGenerator> generator, std::map<MultiIndex, Complex> terms);

    /// The single basis element D^n f.
    static H0Vector basis(std::shared_ptr<const KernelGenerator> generator, const MultiIndex& n);

    std::size_t dim() const noexcept { return generator_->dim(); }
    const KernelGenerator& generator() const noexcept { return *generator_; }
    const std::shared_ptr<const KernelGenerator>& generator_ptr() const noexcept { return generator_; }
    const std::map<MultiIndex, Complex>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add(const MultiIndex& n, Complex c);
    Complex coeff(const MultiIndex& n) const;

    /// Largest ||n|| in the support (-1 when zero).
    int max_order() const;

    /// sum c_n D^n f realized from f at degree realization_degree + max_order(),
    /// returned truncated to realization_degree and exact there.
    TruncatedSeries realize(int realization_degree) const;

private:
    std::shared_ptr<const KernelGenerator> generator_;
    std::map<MultiIndex, Complex> terms_;
};

/// T^k D^n f = a^k n!/(n-k)! D^(n-k) f when k <= n, otherwise 0.
struct LadderTerm {
    Complex scalar;
    std::optional<MultiIndex> index; // nullopt: the zero vector
};

LadderTerm t_power_on_basis(const MultiIndex& k, const MultiIndex& n, std::span<const Complex> a);

/// T_j x (zero-based axis).
H0Vector apply_t(const H0Vector& x, std::size_t axis);

/// S_j x with S_j D^n f = D^(n + e_j) f / (a_j (n_j + 1)).
H0Vector apply_s(const H0Vector& x, std::size_t axis);

/// Whether T_j S_j x == x, coefficients compared to relative 1e-14.
bool verify_right_inverse(const H0Vector& x, std::size_t axis);
/// Whether S_j T_j x == x (false whenever x has a component in ker T_j).
bool verify_left_inverse(const H0Vector& x, std::size_t axis);

/// Smallest K with T_j^K x = 0.
int nilpotency_index(const H0Vector& x, std::size_t axis);

struct ConvergenceReport {
    std::size_t axis = 0;
    int m = 1;
    double epsilon = 0.0;
    double bound = 0.0;                   // 1 / (|a_j| m epsilon)
    int realization_degree = 0;
    std::vector<double> u;                // upper semi-norm of S_j^k x, k = 0..kmax
    std::vector<double> ratios;           // u_{k+1} / u_k
    std::vector<double> kth_roots;        // u_k^(1/k), k = 1..kmax
    std::vector<double> partial_sums;     // sum_{i<=k} u_i
    double ratio_trend = 0.0;             // last ratio
    double kth_root_trend = 0.0;          // last k-th root
    double ratio_trend_extended = 0.0;    // last ratio at realization_degree + 4
    bool stable = false;                  // the two ratio trends agree within 5%
};

inline constexpr int stability_degree_step = 4;
inline constexpr double stability_tolerance = 0.05;

/// Semi-norm majorants of sum_k S_j^k x. Requires epsilon > max_s 1/|a_s|.
ConvergenceReport convergence_report(const H0Vector& x, std::size_t axis, const SemiNormSpec& spec, int kmax,
                                     int realization_degree);

/// 2 * max_s 1/|a_s|.
double default_epsilon(std::span<const Complex> a);

} // namespace entire

#endif
