#include "entire/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace entire::io {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object()) {
        throw Error(std::string("expected an object holding \"") + key + "\"");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw Error(std::string("missing field \"") + key + "\"");
    }
    return *it;
}

double number(const Json& j, const char* what)
{
    if (!j.is_number()) {
        throw Error(std::string("expected a number for ") + what);
    }
    return j.get<double>();
}

int integer(const Json& j, const char* what)
{
    if (!j.is_number_integer()) {
        throw Error(std::string("expected an integer for ") + what);
    }
    return j.get<int>();
}

Json coeff_entry(const MultiIndex& n, Complex c)
{
    Json e = Json::object();
    e["idx"] = multi_index(n);
    e["re"] = c.real();
    e["im"] = c.imag();
    return e;
}

std::pair<MultiIndex, Complex> parse_coeff_entry(const Json& e)
{
    const double re = number(field(e, "re"), "re");
    const double im = e.contains("im") ? number(e["im"], "im") : 0.0;
    return {parse_multi_index(field(e, "idx")), Complex{re, im}};
}

Json doubles(const std::vector<double>& v)
{
    Json out = Json::array();
    for (double x : v) {
        out.push_back(x);
    }
    return out;
}

} // namespace

Json complex_pair(Complex c)
{
    return Json::array({c.real(), c.imag()});
}

Complex parse_complex_pair(const Json& j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        throw Error("expected a complex number as [re, im]");
    }
    return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json multi_index(const MultiIndex& n)
{
    Json out = Json::array();
    for (int e : n.entries()) {
        out.push_back(e);
    }
    return out;
}

MultiIndex parse_multi_index(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        throw Error("expected a multi-index as a non-empty integer array");
    }
    std::vector<int> v;
    for (const auto& e : j) {
        v.push_back(integer(e, "multi-index entry"));
    }
    return MultiIndex(std::move(v));
}

Json series(const TruncatedSeries& f)
{
    Json out = Json::object();
    out["dim"] = f.dim();
    out["cutoff"] = f.cutoff();
    out["polynomial"] = f.is_polynomial();
    if (f.exact_degree() != f.cutoff()) {
        out["exact_degree"] = f.exact_degree();
    }
    Json coeffs = Json::array();
    for (const auto& [n, c] : f.entries()) {
        coeffs.push_back(coeff_entry(n, c));
    }
    out["coeffs"] = std::move(coeffs);
    return out;
}

TruncatedSeries parse_series(const Json& j)
{
    const int dim = integer(field(j, "dim"), "dim");
    if (dim < 1) {
        throw Error("series dim must be positive");
    }
    const int cutoff = integer(field(j, "cutoff"), "cutoff");
    const bool poly = j.contains("polynomial") ? j["polynomial"].get<bool>() : false;
    std::vector<TruncatedSeries::Entry> entries;
    const Json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array()) {
        throw Error("\"coeffs\" must be an array");
    }
    for (const auto& e : coeffs) {
        entries.push_back(parse_coeff_entry(e));
    }
    TruncatedSeries f = make_series(static_cast<std::size_t>(dim), cutoff, entries, poly);
    if (j.contains("exact_degree")) {
        const int exact = integer(j["exact_degree"], "exact_degree");
        if (exact > cutoff || exact < -1 || (poly && exact != cutoff)) {
            throw Error("inconsistent exact_degree");
        }
        f = TruncatedSeries(f.basis_ptr(), std::vector<Complex>(f.coefficients().begin(), f.coefficients().end()),
                            exact, poly);
    }
    return f;
}

Json symbol_entries(const ConvolutionSymbol& s)
{
    Json out = Json::array();
    for (const auto& [n, b] : s.bcoeffs()) {
        out.push_back(coeff_entry(n, b));
    }
    return out;
}

ConvolutionSymbol parse_symbol(std::size_t dim, const Json& entries)
{
    if (!entries.is_array()) {
        throw Error("symbol must be an array of coefficient entries");
    }
    std::vector<std::pair<MultiIndex, Complex>> b;
    for (const auto& e : entries) {
        b.push_back(parse_coeff_entry(e));
        if (b.back().first.dim() != dim) {
            throw Error("symbol index dimension mismatch");
        }
    }
    return ConvolutionSymbol(dim, b);
}

Json cr_operator(const CROperator& t)
{
    Json out = Json::object();
    out["dim"] = t.dim();
    out["axis"] = t.axis() + 1;
    out["a"] = complex_pair(t.a());
    out["symbol"] = symbol_entries(t.conv());
    return out;
}

CROperator parse_cr_operator(const Json& j)
{
    const int dim = integer(field(j, "dim"), "dim");
    const int axis = integer(field(j, "axis"), "axis");
    if (dim < 1 || axis < 1 || axis > dim) {
        throw Error("operator axis must lie in 1..dim");
    }
    return CROperator(static_cast<std::size_t>(axis - 1), parse_complex_pair(field(j, "a")),
                      parse_symbol(static_cast<std::size_t>(dim), field(j, "symbol")));
}

Json weyl_operator(const WeylOperator& op)
{
    Json out = Json::object();
    out["dim"] = op.dim();
    Json terms = Json::array();
    for (const auto& [key, c] : op.terms()) {
        Json t = Json::object();
        t["zpow"] = multi_index(key.first);
        t["dpow"] = multi_index(key.second);
        t["re"] = c.real();
        t["im"] = c.imag();
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

WeylOperator parse_weyl_operator(const Json& j)
{
    const int dim = integer(field(j, "dim"), "dim");
    if (dim < 1) {
        throw Error("operator dim must be positive");
    }
    WeylOperator op(static_cast<std::size_t>(dim));
    for (const auto& t : field(j, "terms")) {
        const double im = t.contains("im") ? number(t["im"], "im") : 0.0;
        op.add_term(parse_multi_index(field(t, "zpow")), parse_multi_index(field(t, "dpow")),
                    Complex{number(field(t, "re"), "re"), im});
    }
    return op;
}

Json kernel_problem(const AxisKernelProblem& p)
{
    Json out = Json::object();
    Json cp = Json::array();
    for (Complex c : p.charpoly) {
        cp.push_back(complex_pair(c));
    }
    out["charpoly"] = std::move(cp);
    out["a"] = complex_pair(p.a);
    Json seeds = Json::array();
    for (Complex s : p.seeds) {
        seeds.push_back(complex_pair(s));
    }
    out["seeds"] = std::move(seeds);
    out["degree"] = p.degree;
    return out;
}

AxisKernelProblem parse_kernel_problem(const Json& j)
{
    AxisKernelProblem p;
    for (const auto& c : field(j, "charpoly")) {
        p.charpoly.push_back(parse_complex_pair(c));
    }
    p.a = parse_complex_pair(field(j, "a"));
    if (j.contains("seeds")) {
        for (const auto& s : j["seeds"]) {
            p.seeds.push_back(parse_complex_pair(s));
        }
    } else if (p.order() > 0) {
        p.seeds.assign(static_cast<std::size_t>(p.order()), Complex{});
        p.seeds[0] = 1.0;
    }
    p.degree = integer(field(j, "degree"), "degree");
    return p;
}

Json cr_report(const CrReport& r)
{
    Json out = Json::object();
    out["probe_degree"] = r.probe_degree;
    out["tolerance"] = r.tolerance;
    out["max_residual"] = r.max_residual;
    out["pass"] = r.pass;
    Json pairs = Json::array();
    for (const auto& res : r.residuals) {
        Json p = Json::object();
        p["j"] = res.j + 1;
        p["k"] = res.k + 1;
        p["numeric"] = res.numeric;
        p["symbolic"] = res.symbolic;
        pairs.push_back(std::move(p));
    }
    out["residuals"] = std::move(pairs);
    return out;
}

Json kernel_report(const KernelReport& r)
{
    Json out = Json::object();
    out["residuals"] = doubles(r.residuals);
    out["tolerance"] = r.tolerance;
    out["pass"] = r.pass;
    return out;
}

Json completeness_report(const CompletenessReport& r, int truncation, int max_order)
{
    Json out = Json::object();
    out["rank"] = r.rank;
    out["ambient"] = r.ambient;
    out["complete_at_truncation"] = r.complete_at_truncation;
    out["N"] = truncation;
    out["max_order"] = max_order;
    out["tolerance"] = r.tolerance;
    out["diagnostics"] = doubles(r.singular_values);
    return out;
}

Json approximation(const Approximation& a, int truncation, int max_order)
{
    Json out = Json::object();
    out["N"] = truncation;
    out["max_order"] = max_order;
    out["residual"] = a.residual;
    Json coeffs = Json::array();
    for (const auto& [n, c] : a.coefficients) {
        coeffs.push_back(coeff_entry(n, c));
    }
    out["coefficients"] = std::move(coeffs);
    return out;
}

Json convergence_report(const ConvergenceReport& r)
{
    Json out = Json::object();
    out["axis"] = r.axis + 1;
    out["m"] = r.m;
    out["epsilon"] = r.epsilon;
    out["bound"] = r.bound;
    out["u"] = doubles(r.u);
    out["ratios"] = doubles(r.ratios);
    out["kth_roots"] = doubles(r.kth_roots);
    out["partial_sums"] = doubles(r.partial_sums);
    out["stable"] = r.stable;
    out["realization_degree"] = r.realization_degree;
    out["ratio_trend"] = r.ratio_trend;
    out["ratio_trend_extended"] = r.ratio_trend_extended;
    out["kth_root_trend"] = r.kth_root_trend;
    return out;
}

Json orbit_record(const OrbitRecord& r)
{
    Json out = Json::object();
    out["steps"] = r.steps();
    Json hits = Json::array();
    for (int h : r.hits) {
        hits.push_back(h);
    }
    out["hits"] = std::move(hits);
    out["density_proxy"] = r.density_proxy;
    out["distances"] = r.distances ? doubles(*r.distances) : Json::array();
    out["note"] = density_disclaimer;
    return out;
}

namespace {

void write_number(std::ostream& os, const Json& j)
{
    if (j.is_number_integer()) {
        os << j.dump();
        return;
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        os << "null";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

void write_value(std::ostream& os, const Json& j, int indent, int depth)
{
    const auto newline = [&](int d) {
        if (indent >= 0) {
            os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    if (j.is_object()) {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                os << ',';
            }
            first = false;
            newline(depth + 1);
            os << Json(it.key()).dump() << (indent >= 0 ? ": " : ":");
            write_value(os, it.value(), indent, depth + 1);
        }
        newline(depth);
        os << '}';
    } else if (j.is_array()) {
        if (j.empty()) {
            os << "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
        os << '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first) {
                os << (flat && indent >= 0 ? ", " : ",");
            }
            first = false;
            if (!flat) {
                newline(depth + 1);
            }
            write_value(os, e, indent, depth + 1);
        }
        if (!flat) {
            newline(depth);
        }
        os << ']';
    } else if (j.is_number()) {
        write_number(os, j);
    } else {
        os << j.dump();
    }
}

} // namespace

void write_json(std::ostream& os, const Json& j, int indent)
{
    write_value(os, j, indent, 0);
}

std::string to_text(const Json& j, int indent)
{
    std::ostringstream os;
    write_json(os, j, indent);
    return os.str();
}

} // namespace entire::io
