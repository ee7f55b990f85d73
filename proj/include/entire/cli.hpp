#ifndef ENTIRE_CLI_HPP
#define ENTIRE_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entire/json_io.hpp"

namespace entire::cli {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_task_failed = 1,
    exit_parse_error = 2,
    exit_internal_error = 3,
};

/// Malformed scenario, task or command line.
class ScenarioError : public Error {
public:
    using Error::Error;
};

struct Scenario {
    std::size_t dim = 0;
    int truncation = 4;
    double tolerance = default_rank_tolerance;
    std::uint64_t rng_seed = 0;
    std::vector<CROperator> operators;
    std::optional<std::vector<AxisKernelProblem>> kernel; // generator from per-axis problems
    std::optional<TruncatedSeries> explicit_generator;
    std::vector<io::Json> tasks;
};

Scenario parse_scenario(const io::Json& j);
Scenario load_scenario(const std::string& path);

struct Overrides {
    std::optional<double> tolerance;
    std::optional<std::uint64_t> seed;
};

enum class ReportKind { verify_cr, kernel, complete, approximate, fhc, orbit };

struct TaskResult {
    std::string type;
    ReportKind kind = ReportKind::verify_cr;
    bool pass_type = false; // whether the task carries a pass/fail verdict
    bool pass = true;
    io::Json report;
};

TaskResult run_task(const Scenario& s, const io::Json& task, const Overrides& overrides = {});

enum class Format { json, csv };

Format parse_format(const std::string& name);

/// JSON: one line per report. CSV: singular values (complete), (k, u_k, ratio)
/// (fhc) or per-pair residuals (verify-cr); other kinds hold complex series
/// and are rejected.
void emit_report(const TaskResult& result, Format format, std::ostream& dest);

/// Runs every task of the scenario in order and writes the reports to `out`
/// (or to files in out_dir). Returns the process exit code.
int run_scenario(const Scenario& s, const Overrides& overrides, Format format, std::ostream& out,
                 std::ostream& err, const std::optional<std::string>& out_dir = std::nullopt);
int run_scenario_file(const std::string& path, const Overrides& overrides, Format format, std::ostream& out,
                      std::ostream& err, const std::optional<std::string>& out_dir = std::nullopt);

/// Full command line front end.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace entire::cli

#endif
