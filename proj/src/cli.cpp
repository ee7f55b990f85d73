#include "entire/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

namespace entire::cli {

using io::Json;

namespace {

const std::set<std::string> task_types{"verify-cr", "kernel", "complete", "approximate", "fhc", "orbit"};

int int_param(const Json& task, const char* key, int fallback)
{
    if (!task.contains(key)) {
        return fallback;
    }
    if (!task[key].is_number_integer()) {
        throw ScenarioError(std::string("task field \"") + key + "\" must be an integer");
    }
    return task[key].get<int>();
}

double real_param(const Json& task, const char* key, double fallback)
{
    if (!task.contains(key)) {
        return fallback;
    }
    if (!task[key].is_number()) {
        throw ScenarioError(std::string("task field \"") + key + "\" must be a number");
    }
    return task[key].get<double>();
}

std::size_t axis_param(const Json& task, std::size_t dim)
{
    const int axis = int_param(task, "axis", 1);
    if (axis < 1 || static_cast<std::size_t>(axis) > dim) {
        throw ScenarioError("task axis must lie in 1.." + std::to_string(dim));
    }
    return static_cast<std::size_t>(axis - 1);
}

template <typename F>
auto as_scenario_error(F&& parse) -> decltype(parse())
{
    try {
        return parse();
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        throw ScenarioError(e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(e.what());
    }
}

TruncatedSeries generator_at(const Scenario& s, int degree)
{
    if (s.kernel) {
        std::vector<AxisKernelProblem> problems = *s.kernel;
        for (auto& p : problems) {
            p.degree = degree;
        }
        return joint_kernel(problems, s.dim);
    }
    if (s.explicit_generator) {
        return *s.explicit_generator;
    }
    throw Error("scenario has no generator");
}

double operator_epsilon(const Scenario& s)
{
    std::vector<Complex> a;
    for (const auto& t : s.operators) {
        a.push_back(t.a());
    }
    return default_epsilon(a);
}

const CROperator& operator_on_axis(const Scenario& s, std::size_t axis)
{
    for (const auto& t : s.operators) {
        if (t.axis() == axis) {
            return t;
        }
    }
    throw Error("scenario has no operator on axis " + std::to_string(axis + 1));
}

TaskResult run_verify_cr(const Scenario& s, const Json& task)
{
    if (s.operators.empty()) {
        throw Error("verify-cr needs operators");
    }
    const int probe = int_param(task, "probe_degree", 8);
    const double tol = real_param(task, "tolerance", default_cr_tolerance);
    const CrReport r = verify_cr(s.operators, probe, tol);
    return {"verify-cr", ReportKind::verify_cr, true, r.pass, io::cr_report(r)};
}

TaskResult run_kernel(const Scenario& s, const Json& task)
{
    const int fallback = s.kernel ? s.kernel->front().degree : s.truncation;
    const int degree = int_param(task, "degree", fallback);
    const double tol = real_param(task, "tolerance", default_kernel_tolerance);
    const TruncatedSeries f = generator_at(s, degree);
    const KernelReport r = verify_kernel(s.operators, f, tol);
    Json report = Json::object();
    report["generator"] = io::series(f);
    report["verification"] = io::kernel_report(r);
    return {"kernel", ReportKind::kernel, true, r.pass, std::move(report)};
}

TaskResult run_complete(const Scenario& s, const Json& task, const Overrides& ov)
{
    const int n = int_param(task, "N", s.truncation);
    const int max_order = int_param(task, "max_order", n);
    const double tol = ov.tolerance.value_or(real_param(task, "tolerance", s.tolerance));
    const std::string mode = task.value("mode", std::string("derivative"));
    const TruncatedSeries f = generator_at(s, n + max_order);

    CompletenessReport r;
    Json extra = Json::object();
    if (mode == "derivative") {
        r = rank_report(derivative_span(f, n, max_order), tol);
        if (task.value("trajectory", false)) {
            Json traj = Json::array();
            for (int level = 0; level <= n; ++level) {
                const CompletenessReport step = rank_report(derivative_span(f, level, std::min(level, max_order)), tol);
                traj.push_back(Json::array({level, step.rank, step.ambient}));
            }
            extra["trajectory"] = std::move(traj);
        }
    } else if (mode == "translate") {
        const auto ambient = monomial_count(s.dim, n);
        const int count = int_param(task, "samples", static_cast<int>(3 * ambient));
        if (count < 1) {
            throw ScenarioError("translate mode needs at least one sample");
        }
        const std::uint64_t seed = ov.seed.value_or(s.rng_seed);
        const auto samples = sample_real_box(s.dim, static_cast<std::size_t>(count), seed);
        r = rank_report(translate_span(f, n, samples), tol);
        extra["samples"] = count;
        extra["seed"] = seed;
        extra["approximate_rows"] = !f.is_polynomial();
    } else {
        throw ScenarioError("complete mode must be \"derivative\" or \"translate\"");
    }
    Json report = io::completeness_report(r, n, max_order);
    report["mode"] = mode;
    for (auto it = extra.begin(); it != extra.end(); ++it) {
        report[it.key()] = it.value();
    }
    TaskResult out{"complete", ReportKind::complete, false, true, Json()};
    if (task.contains("expect_complete")) {
        const bool expected = task["expect_complete"].get<bool>();
        out.pass_type = true;
        out.pass = expected == r.complete_at_truncation;
        report["expect_complete"] = expected;
    }
    out.report = std::move(report);
    return out;
}

TaskResult run_approximate(const Scenario& s, const Json& task)
{
    if (!task.contains("target")) {
        throw ScenarioError("approximate task needs a \"target\" series");
    }
    const TruncatedSeries target = as_scenario_error([&] { return io::parse_series(task["target"]); });
    const int n = int_param(task, "N", s.truncation);
    const int max_order = int_param(task, "max_order", n);
    const Approximation a = approximate_target(generator_at(s, n + max_order), target, n, max_order);
    Json report = io::approximation(a, n, max_order);
    TaskResult out{"approximate", ReportKind::approximate, false, true, Json()};
    if (task.contains("max_residual")) {
        const double limit = real_param(task, "max_residual", 0.0);
        out.pass_type = true;
        out.pass = a.residual <= limit;
        report["max_residual"] = limit;
    }
    out.report = std::move(report);
    return out;
}

TaskResult run_fhc(const Scenario& s, const Json& task)
{
    if (!s.kernel) {
        throw Error("fhc needs a kernel generator");
    }
    auto gen = std::make_shared<const KernelGenerator>(*s.kernel);
    const std::size_t axis = axis_param(task, s.dim);
    SemiNormSpec spec;
    spec.m = int_param(task, "m", 1);
    spec.epsilon = real_param(task, "epsilon", default_epsilon(gen->a()));
    const int kmax = int_param(task, "kmax", 20);
    const int degree = int_param(task, "realization_degree", 30);

    H0Vector x(gen);
    if (task.contains("x")) {
        as_scenario_error([&] {
            for (const auto& e : task["x"]) {
                const auto idx = io::parse_multi_index(e.at("idx"));
                x.add(idx, Complex{e.at("re").get<double>(), e.value("im", 0.0)});
            }
            return 0;
        });
    } else {
        x.add(MultiIndex(s.dim), 1.0);
    }

    const ConvergenceReport r = convergence_report(x, axis, spec, kmax, degree);
    const bool right_inverse = verify_right_inverse(x, axis);
    Json report = io::convergence_report(r);
    report["right_inverse"] = right_inverse;
    report["nilpotency_index"] = nilpotency_index(x, axis);
    const bool pass = right_inverse && r.stable && r.ratio_trend < 1.0;
    return {"fhc", ReportKind::fhc, true, pass, std::move(report)};
}

TaskResult run_orbit(const Scenario& s, const Json& task)
{
    const std::size_t axis = axis_param(task, s.dim);
    const CROperator& t = operator_on_axis(s, axis);
    const int steps = int_param(task, "steps", 8);
    const int cost = std::max(0, t.conv().support_degree());

    TruncatedSeries x = [&] {
        if (task.contains("x") && task["x"].is_object()) {
            return as_scenario_error([&] { return io::parse_series(task["x"]); });
        }
        return generator_at(s, steps * cost + s.truncation);
    }();
    TruncatedSeries target = task.contains("target")
                                 ? as_scenario_error([&] { return io::parse_series(task["target"]); })
                                 : TruncatedSeries::zero(s.dim, 0, 0, true);
    SemiNormSpec spec;
    spec.m = int_param(task, "m", 1);
    spec.epsilon = real_param(task, "epsilon", operator_epsilon(s));
    const double delta = real_param(task, "delta", 0.1);

    const OrbitRecord rec = with_visits(iterate_orbit(t, x, steps), target, delta, spec);
    Json report = io::orbit_record(rec);
    report["delta"] = delta;
    return {"orbit", ReportKind::orbit, false, true, std::move(report)};
}

} // namespace

Scenario parse_scenario(const Json& j)
{
    return as_scenario_error([&] {
        if (!j.is_object()) {
            throw ScenarioError("scenario must be a JSON object");
        }
        Scenario s;
        const int dim = j.at("dimension").get<int>();
        if (dim < 1) {
            throw ScenarioError("dimension must be positive");
        }
        s.dim = static_cast<std::size_t>(dim);
        s.truncation = j.value("truncation", 4);
        s.tolerance = j.value("tolerance", default_rank_tolerance);
        s.rng_seed = j.value("rng_seed", std::uint64_t{0});
        if (j.contains("operators")) {
            for (const auto& op : j["operators"]) {
                s.operators.push_back(io::parse_cr_operator(op));
                if (s.operators.back().dim() != s.dim) {
                    throw ScenarioError("operator dimension differs from scenario dimension");
                }
            }
        }
        if (j.contains("generator")) {
            const Json& g = j["generator"];
            if (g.contains("kernel")) {
                std::vector<AxisKernelProblem> problems;
                for (const auto& p : g["kernel"]) {
                    problems.push_back(io::parse_kernel_problem(p));
                }
                if (problems.size() != s.dim) {
                    throw ScenarioError("kernel generator needs one problem for every axis");
                }
                if (s.operators.empty()) {
                    for (std::size_t ax = 0; ax < s.dim; ++ax) {
                        s.operators.push_back(problems[ax].to_operator(s.dim, ax));
                    }
                }
                std::set<std::size_t> axes;
                for (const auto& t : s.operators) {
                    axes.insert(t.axis());
                }
                if (s.operators.size() != s.dim || axes.size() != s.dim) {
                    throw ScenarioError("kernel generation needs exactly one operator per axis");
                }
                s.kernel = std::move(problems);
            } else if (g.contains("explicit")) {
                s.explicit_generator = io::parse_series(g["explicit"]);
                if (s.explicit_generator->dim() != s.dim) {
                    throw ScenarioError("explicit generator dimension differs from scenario dimension");
                }
            } else {
                throw ScenarioError("generator must hold \"kernel\" or \"explicit\"");
            }
        }
        if (j.contains("tasks")) {
            for (const auto& t : j["tasks"]) {
                const std::string type = t.at("type").get<std::string>();
                if (!task_types.contains(type)) {
                    throw ScenarioError("unknown task type \"" + type + "\"");
                }
                s.tasks.push_back(t);
            }
        }
        return s;
    });
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open scenario file " + path);
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(path + ": " + e.what());
    }
    return parse_scenario(j);
}

TaskResult run_task(const Scenario& s, const Json& task, const Overrides& overrides)
{
    const std::string type = task.at("type").get<std::string>();
    if (type == "verify-cr") {
        return run_verify_cr(s, task);
    }
    if (type == "kernel") {
        return run_kernel(s, task);
    }
    if (type == "complete") {
        return run_complete(s, task, overrides);
    }
    if (type == "approximate") {
        return run_approximate(s, task);
    }
    if (type == "fhc") {
        return run_fhc(s, task);
    }
    if (type == "orbit") {
        return run_orbit(s, task);
    }
    throw ScenarioError("unknown task type \"" + type + "\"");
}

Format parse_format(const std::string& name)
{
    if (name == "json") {
        return Format::json;
    }
    if (name == "csv") {
        return Format::csv;
    }
    throw ScenarioError("unsupported format \"" + name + "\"");
}

namespace {

std::string csv_number(const Json& j)
{
    if (j.is_null()) {
        return "";
    }
    return io::to_text(j, -1);
}

} // namespace

void emit_report(const TaskResult& result, Format format, std::ostream& dest)
{
    if (format == Format::json) {
        Json envelope = Json::object();
        envelope["type"] = result.type;
        envelope["pass"] = result.pass_type ? Json(result.pass) : Json(nullptr);
        envelope["report"] = result.report;
        io::write_json(dest, envelope, -1);
        dest << '\n';
        return;
    }
    if (result.report.contains("error")) {
        dest << "error\n" << result.report["error"].get<std::string>() << '\n';
        return;
    }
    switch (result.kind) {
    case ReportKind::complete: {
        dest << "index,singular_value\n";
        const Json& sv = result.report["diagnostics"];
        for (std::size_t i = 0; i < sv.size(); ++i) {
            dest << i << ',' << csv_number(sv[i]) << '\n';
        }
        return;
    }
    case ReportKind::fhc: {
        dest << "k,u_k,ratio\n";
        const Json& u = result.report["u"];
        const Json& ratios = result.report["ratios"];
        for (std::size_t k = 0; k < u.size(); ++k) {
            dest << k << ',' << csv_number(u[k]) << ',' << (k > 0 ? csv_number(ratios[k - 1]) : "") << '\n';
        }
        return;
    }
    case ReportKind::verify_cr: {
        dest << "j,k,numeric,symbolic\n";
        for (const auto& r : result.report["residuals"]) {
            dest << r["j"].get<int>() << ',' << r["k"].get<int>() << ',' << csv_number(r["numeric"]) << ','
                 << csv_number(r["symbolic"]) << '\n';
        }
        return;
    }
    default:
        throw Error("csv unsupported for complex series (" + result.type + " report)");
    }
}

int run_scenario(const Scenario& s, const Overrides& overrides, Format format, std::ostream& out, std::ostream& err,
                 const std::optional<std::string>& out_dir)
{
    bool all_pass = true;
    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
    }
    for (std::size_t i = 0; i < s.tasks.size(); ++i) {
        const Json& task = s.tasks[i];
        TaskResult result;
        try {
            result = run_task(s, task, overrides);
        } catch (const ScenarioError& e) {
            err << "task " << i + 1 << ": " << e.what() << '\n';
            return exit_parse_error;
        } catch (const nlohmann::json::exception& e) {
            // A task field of the wrong JSON type.
            err << "task " << i + 1 << ": " << e.what() << '\n';
            return exit_parse_error;
        } catch (const Error& e) {
            result.type = task.at("type").get<std::string>();
            result.pass_type = true;
            result.pass = false;
            result.report = Json::object();
            result.report["error"] = e.what();
        } catch (const std::exception& e) {
            err << "task " << i + 1 << ": internal error: " << e.what() << '\n';
            return exit_internal_error;
        }
        all_pass = all_pass && (!result.pass_type || result.pass);

        try {
            if (out_dir) {
                char name[64];
                std::snprintf(name, sizeof name, "%02zu-%s.%s", i + 1, result.type.c_str(),
                              format == Format::json ? "json" : "csv");
                std::ofstream file(std::filesystem::path(*out_dir) / name);
                emit_report(result, format, file);
            } else {
                if (format == Format::csv) {
                    out << "# task " << i + 1 << ' ' << result.type << '\n';
                }
                emit_report(result, format, out);
            }
        } catch (const Error& e) {
            err << "task " << i + 1 << ": " << e.what() << '\n';
            return exit_parse_error;
        }
        if (result.kind == ReportKind::orbit && !result.report.contains("error")) {
            err << density_disclaimer << '\n';
        }
    }
    return all_pass ? exit_ok : exit_task_failed;
}

int run_scenario_file(const std::string& path, const Overrides& overrides, Format format, std::ostream& out,
                      std::ostream& err, const std::optional<std::string>& out_dir)
{
    Scenario s;
    try {
        s = load_scenario(path);
    } catch (const ScenarioError& e) {
        err << e.what() << '\n';
        return exit_parse_error;
    }
    return run_scenario(s, overrides, format, out, err, out_dir);
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Operator calculus on truncated entire functions: commutation checks, joint kernels, "
                 "completeness at truncation, hypercyclicity-criterion majorants and orbit proxies."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "json";
    std::string out_dir;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    app.add_option("--format", format_name, "Report format: json or csv")->check(CLI::IsMember({"json", "csv"}));
    auto* out_opt = app.add_option("--out", out_dir, "Write one report file per task into this directory");
    auto* tol_opt = app.add_option("--tolerance", tolerance, "Relative rank tolerance");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for translate samples");

    std::string scenario_path;
    Json task = Json::object();

    struct IntFlag {
        const char* flag;
        const char* key;
        int value = 0;
        CLI::Option* opt = nullptr;
    };
    struct RealFlag {
        const char* flag;
        const char* key;
        double value = 0.0;
        CLI::Option* opt = nullptr;
    };
    std::vector<std::pair<CLI::App*, std::vector<IntFlag>>> int_flags;
    std::vector<std::pair<CLI::App*, std::vector<RealFlag>>> real_flags;

    auto add_sub = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
        return sub;
    };

    CLI::App* run = add_sub("run", "Run every task of a scenario file");
    CLI::App* vcr = add_sub("verify-cr", "Check [T_j, d/dz_k] = delta_jk a_j I on probe monomials");
    CLI::App* ker = add_sub("kernel", "Build the joint-kernel generator and check T_j f = 0");
    CLI::App* com = add_sub("complete", "Rank of the derivative or translate system at a truncation");
    CLI::App* apx = add_sub("approximate", "Least-squares fit of a polynomial target by derivatives of f");
    CLI::App* fhc = add_sub("fhc", "Semi-norm majorants of sum_k S_j^k f");
    CLI::App* orb = add_sub("orbit", "Iterate T_j on the generator and report the visit proxy");

    int_flags.push_back({vcr, {{"--probe-degree", "probe_degree"}}});
    real_flags.push_back({vcr, {{"--cr-tolerance", "tolerance"}}});
    int_flags.push_back({ker, {{"--degree", "degree"}}});
    int_flags.push_back({com, {{"--N", "N"}, {"--max-order", "max_order"}, {"--samples", "samples"}}});
    int_flags.push_back({apx, {{"--N", "N"}, {"--max-order", "max_order"}}});
    real_flags.push_back({apx, {{"--max-residual", "max_residual"}}});
    int_flags.push_back({fhc, {{"--axis", "axis"}, {"--m", "m"}, {"--kmax", "kmax"},
                               {"--realization-degree", "realization_degree"}}});
    real_flags.push_back({fhc, {{"--epsilon", "epsilon"}}});
    int_flags.push_back({orb, {{"--axis", "axis"}, {"--steps", "steps"}, {"--m", "m"}}});
    real_flags.push_back({orb, {{"--delta", "delta"}, {"--epsilon", "epsilon"}}});

    for (auto& [sub, flags] : int_flags) {
        for (auto& f : flags) {
            f.opt = sub->add_option(f.flag, f.value);
        }
    }
    for (auto& [sub, flags] : real_flags) {
        for (auto& f : flags) {
            f.opt = sub->add_option(f.flag, f.value);
        }
    }
    std::string mode = "derivative";
    auto* mode_opt = com->add_option("--mode", mode, "derivative or translate")
                         ->check(CLI::IsMember({"derivative", "translate"}));
    bool trajectory = false;
    com->add_flag("--trajectory", trajectory, "Also report ranks for every truncation up to N");
    std::string target_path;
    apx->add_option("--target", target_path, "Series literal JSON file for the target")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_parse_error;
    }

    Overrides ov;
    if (tol_opt->count()) {
        ov.tolerance = tolerance;
    }
    if (seed_opt->count()) {
        ov.seed = seed;
    }
    const Format format = format_name == "csv" ? Format::csv : Format::json;
    const std::optional<std::string> dir = out_opt->count() ? std::optional<std::string>(out_dir) : std::nullopt;

    try {
        if (run->parsed()) {
            return run_scenario_file(scenario_path, ov, format, out, err, dir);
        }
        Scenario s = load_scenario(scenario_path);
        CLI::App* chosen = app.get_subcommands().front();
        task["type"] = chosen->get_name();
        for (auto& [sub, flags] : int_flags) {
            if (sub != chosen) {
                continue;
            }
            for (auto& f : flags) {
                if (f.opt->count()) {
                    task[f.key] = f.value;
                }
            }
        }
        for (auto& [sub, flags] : real_flags) {
            if (sub != chosen) {
                continue;
            }
            for (auto& f : flags) {
                if (f.opt->count()) {
                    task[f.key] = f.value;
                }
            }
        }
        if (chosen == com) {
            if (mode_opt->count()) {
                task["mode"] = mode;
            }
            if (trajectory) {
                task["trajectory"] = true;
            }
        }
        if (chosen == apx) {
            std::ifstream in(target_path);
            try {
                task["target"] = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ScenarioError(target_path + ": " + e.what());
            }
        }
        s.tasks = {task};
        return run_scenario(s, ov, format, out, err, dir);
    } catch (const ScenarioError& e) {
        err << e.what() << '\n';
        return exit_parse_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal_error;
    }
}

} // namespace entire::cli
