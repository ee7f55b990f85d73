#ifndef ENTIRE_ORBIT_HPP
#define ENTIRE_ORBIT_HPP

#include <optional>
#include <vector>

#include "entire/operators.hpp"

namespace entire {

/// Finite orbit x, Tx, T^2 x, ... with optional visit statistics.
///
/// distances[k] bounds the semi-norm of T^k x - target for every k = 0..steps;
/// hits and the density proxy only count the iterates k = 1..steps, so the
/// proxy is #hits / steps.
struct OrbitRecord {
    std::vector<TruncatedSeries> iterates;
    std::optional<std::vector<double>> distances;
    std::vector<int> hits;
    double density_proxy = 0.0;

    int steps() const { return static_cast<int>(iterates.size()) - 1; }
};

/// Fixed disclaimer printed with every density proxy.
inline constexpr const char* density_disclaimer =
    "PROXY: finite-horizon visit frequency; it does not certify frequent hypercyclicity";

/// Needs x exact to steps * (symbol degree) unless x is a polynomial.
OrbitRecord iterate_orbit(const CROperator& t, const TruncatedSeries& x, int steps);

/// Record with distances, hits and density filled in.
OrbitRecord with_visits(const OrbitRecord& rec, const TruncatedSeries& target, double delta,
                        const SemiNormSpec& spec);

/// #{1 <= k <= steps : p_m-upper(T^k x - target) < delta} / steps; 0 for an empty horizon.
double visit_density(const OrbitRecord& rec, const TruncatedSeries& target, double delta, const SemiNormSpec& spec);

} // namespace entire

#endif
