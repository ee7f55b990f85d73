#ifndef ENTIRE_JSON_IO_HPP
#define ENTIRE_JSON_IO_HPP

#include <ostream>
#include <string>

#include <json.hpp>

#include "entire/completeness.hpp"
#include "entire/fhc.hpp"
#include "entire/kernel.hpp"
#include "entire/operators.hpp"
#include "entire/orbit.hpp"

// JSON forms of the library's values. Axes are one-based on the wire.
// Every parser throws entire::Error on schema violations.

namespace entire::io {

using Json = nlohmann::ordered_json;

Json complex_pair(Complex c);
Complex parse_complex_pair(const Json& j);

Json multi_index(const MultiIndex& n);
MultiIndex parse_multi_index(const Json& j);

/// {"dim", "cutoff", "polynomial", "coeffs": [{"idx", "re", "im"}...]}, graded-lex
/// sorted; "exact_degree" is added only when it differs from the cutoff.
Json series(const TruncatedSeries& f);
TruncatedSeries parse_series(const Json& j);

Json symbol_entries(const ConvolutionSymbol& s);
ConvolutionSymbol parse_symbol(std::size_t dim, const Json& entries);

/// {"dim", "axis", "a": [re, im], "symbol": [{"idx", "re", "im"}...]}
Json cr_operator(const CROperator& t);
CROperator parse_cr_operator(const Json& j);

/// {"dim", "terms": [{"zpow", "dpow", "re", "im"}...]}
Json weyl_operator(const WeylOperator& op);
WeylOperator parse_weyl_operator(const Json& j);

/// {"charpoly": [[re, im]...], "a": [re, im], "seeds": [[re, im]...], "degree": N}
Json kernel_problem(const AxisKernelProblem& p);
AxisKernelProblem parse_kernel_problem(const Json& j);

Json cr_report(const CrReport& r);
Json kernel_report(const KernelReport& r);
Json completeness_report(const CompletenessReport& r, int truncation, int max_order);
Json approximation(const Approximation& a, int truncation, int max_order);
Json convergence_report(const ConvergenceReport& r);
Json orbit_record(const OrbitRecord& r);

/// Deterministic text: keys in insertion order, floats with 17 significant
/// digits, non-finite numbers as null. indent < 0 gives one line.
void write_json(std::ostream& os, const Json& j, int indent = 2);
std::string to_text(const Json& j, int indent = 2);

} // namespace entire::io

#endif
