#pragma once

// Problem documents and run reports.
//
// Problems travel as JSON objects with explicit fields `levels`,
// `objectives`, `A`, `b` plus optional solver configuration (`alpha`,
// `alpha_fraction`, `epsilon`, `tolerances`, `format`) and an optional
// `reference` block carrying published values to compare a run against.
// Scalars may be JSON numbers or strings; strings accept integer, decimal
// and "p/q" notation, and are the way to state exact rationals ("2/3").
//
// Every validation failure raises ParseError with one of the stable codes
// below plus a human diagnostic naming the offending field. The margin
// constraint that depends on bound widths cannot be checked at parse time
// (widths only exist once the levels are solved); it surfaces from
// reduce_bounds and is mapped to E_ALPHA by the CLI layer.
//
//   E_SYNTAX   document is not valid JSON (or the file cannot be read)
//   E_SCHEMA   missing/mistyped/unknown field
//   E_DIM      dimension mismatch between fields
//   E_INDEX    reference to a nonexistent component, level, or duplicate key
//   E_VALUE    a scalar fails to parse or is out of its domain
//   E_ALPHA    a margin override reached reduction with alpha >= width
//   E_CAP      enumeration size cap exceeded
//   E_INTERNAL internal invariant violation

#include "mllp/adaptive.hpp"
#include "mllp/multilevel.hpp"
#include "mllp/numeric.hpp"
#include "mllp/problem.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mllp {

namespace errcode {
inline constexpr const char* syntax = "E_SYNTAX";
inline constexpr const char* schema = "E_SCHEMA";
inline constexpr const char* dimension = "E_DIM";
inline constexpr const char* index = "E_INDEX";
inline constexpr const char* value = "E_VALUE";
inline constexpr const char* alpha = "E_ALPHA";
inline constexpr const char* cap = "E_CAP";
inline constexpr const char* internal = "E_INTERNAL";
}  // namespace errcode

/// Input rejection with a stable machine-readable code; what() carries
/// "CODE: human diagnostic".
class ParseError : public std::runtime_error {
public:
    ParseError(const char* code_, const std::string& detail)
        : std::runtime_error(std::string(code_) + ": " + detail), code(code_) {}

    std::string code;
};

enum class ReportFormat { Table, Json };

inline ReportFormat report_format_from_string(const std::string& s) {
    if (s == "table") return ReportFormat::Table;
    if (s == "json") return ReportFormat::Json;
    throw ParseError(errcode::value, "unknown format '" + s + "' (expected table or json)");
}

inline SolveStatus solve_status_from_string(const std::string& s) {
    for (SolveStatus st : {SolveStatus::Optimal, SolveStatus::EpsilonOptimal,
                           SolveStatus::Infeasible, SolveStatus::Unbounded,
                           SolveStatus::IterationLimit})
        if (s == to_string(st)) return st;
    throw ParseError(errcode::value, "unknown status '" + s + "'");
}

/// Published values a run can be compared against: a claimed compromise
/// point, its objective values, and the per-level optima. Any subset may be
/// present; empty vectors mean "not given".
template <typename T>
struct ReferenceBlock {
    Vector<T> point;
    Vector<T> objectives;
    std::vector<Vector<T>> level_optima;
    Vector<T> level_values;

    bool empty() const {
        return point.empty() && objectives.empty() && level_optima.empty() &&
               level_values.empty();
    }
};

/// A parsed problem document: the model, the run configuration with
/// defaults filled in, the optional reference block, and the document's
/// report-format preference ("" when it stated none).
template <typename T>
struct ProblemDocument {
    MultilevelProblem<T> problem;
    RunConfig<T> config;
    ReferenceBlock<T> reference;
    std::string format;
};

namespace detail {

using json = nlohmann::ordered_json;

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(errcode::syntax, e.what());
    }
}

inline bool finite_scalar(double v) { return std::isfinite(v); }
inline bool finite_scalar(const Rational&) { return true; }

template <typename T>
inline T scalar_from_json(const json& v, const std::string& where) {
    try {
        if (v.is_number_integer()) return T(v.get<std::int64_t>());
        if (v.is_number()) return scalar_from_double<T>(v.get<double>());
        if (v.is_string()) return scalar_from_string<T>(v.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(errcode::value, where + ": " + e.what());
    }
    throw ParseError(errcode::value, where + ": expected a number or numeric string");
}

template <typename T>
inline Vector<T> vector_from_json(const json& v, const std::string& where, int expected = -1) {
    if (!v.is_array()) throw ParseError(errcode::schema, where + ": expected an array");
    if (expected >= 0 && static_cast<int>(v.size()) != expected)
        throw ParseError(errcode::dimension, where + ": expected " + std::to_string(expected) +
                                                 " entries, got " + std::to_string(v.size()));
    Vector<T> out;
    out.reserve(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(scalar_from_json<T>(v[k], where + "[" + std::to_string(k) + "]"));
        if (!finite_scalar(out.back()))
            throw ParseError(errcode::value, where + "[" + std::to_string(k) + "]: not finite");
    }
    return out;
}

template <typename T>
inline Matrix<T> matrix_from_json(const json& v, const std::string& where, int rows, int cols) {
    if (!v.is_array()) throw ParseError(errcode::schema, where + ": expected an array of rows");
    if (rows >= 0 && static_cast<int>(v.size()) != rows)
        throw ParseError(errcode::dimension, where + ": expected " + std::to_string(rows) +
                                                 " rows, got " + std::to_string(v.size()));
    const int r = static_cast<int>(v.size());
    if (r == 0) throw ParseError(errcode::dimension, where + ": no rows");
    Matrix<T> m(r, cols);
    for (int i = 0; i < r; ++i) {
        auto row = vector_from_json<T>(v[i], where + "[" + std::to_string(i) + "]", cols);
        for (int j = 0; j < cols; ++j) m(i, j) = row[j];
    }
    return m;
}

inline json json_from_scalar(double v) { return v; }

inline json json_from_scalar(const Rational& v) {
    if (boost::multiprecision::denominator(v) == 1) {
        const auto num = boost::multiprecision::numerator(v);
        if (num >= std::numeric_limits<std::int64_t>::min() &&
            num <= std::numeric_limits<std::int64_t>::max())
            return num.convert_to<std::int64_t>();
    }
    return scalar_to_string(v);
}

template <typename T>
inline json json_from_vector(const Vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(json_from_scalar(x));
    return a;
}

inline void require_known_keys(const json& obj, const std::vector<std::string>& known,
                               const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : known)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw ParseError(errcode::schema, where + ": unknown field '" + it.key() + "'");
    }
}

/// Fixed-decimal rendering for the human-readable report.
template <typename T>
inline std::string fixed(const T& v, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << to_double(v);
    std::string s = os.str();
    if (s == "-0." + std::string(static_cast<std::size_t>(decimals), '0')) s.erase(0, 1);
    return s;
}

template <typename T>
inline std::string tuple_string(const Vector<T>& v, int decimals) {
    std::string s = "(";
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j) s += ", ";
        s += fixed(v[j], decimals);
    }
    return s + ")";
}

}  // namespace detail

/// Parse and validate a problem document from JSON text.
template <typename T>
inline ProblemDocument<T> parse_problem_text(const std::string& text) {
    using detail::json;
    const json doc = detail::parse_json_text(text);
    if (!doc.is_object()) throw ParseError(errcode::schema, "document root must be an object");
    detail::require_known_keys(doc,
                               {"levels", "objectives", "A", "b", "alpha", "alpha_fraction",
                                "epsilon", "tolerances", "format", "reference"},
                               "document");
    for (const char* key : {"levels", "objectives", "A", "b"})
        if (!doc.contains(key))
            throw ParseError(errcode::schema, std::string("missing required field '") + key + "'");

    ProblemDocument<T> out;
    auto& mlp = out.problem;

    const json& levels = doc["levels"];
    if (!levels.is_array()) throw ParseError(errcode::schema, "levels: expected an array");
    if (levels.size() < 2) throw ParseError(errcode::dimension, "levels: need at least 2 levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!levels[i].is_number_integer() || levels[i].get<std::int64_t>() < 1)
            throw ParseError(errcode::value,
                             "levels[" + std::to_string(i) + "]: expected a positive integer");
        mlp.n_sizes.push_back(levels[i].get<int>());
    }
    const int P = mlp.levels();
    const int n = mlp.variables();

    mlp.C = detail::matrix_from_json<T>(doc["objectives"], "objectives", P, n);
    mlp.A = detail::matrix_from_json<T>(doc["A"], "A", -1, n);
    mlp.b = detail::vector_from_json<T>(doc["b"], "b", static_cast<int>(mlp.A.rows()));
    try {
        mlp.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(errcode::dimension, e.what());
    }

    if (doc.contains("alpha")) {
        const json& alpha = doc["alpha"];
        if (!alpha.is_array()) throw ParseError(errcode::schema, "alpha: expected an array");
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            const std::string where = "alpha[" + std::to_string(k) + "]";
            const json& entry = alpha[k];
            int level = 0, position = 0;
            T value{};
            if (entry.is_object()) {
                detail::require_known_keys(entry, {"level", "position", "value"}, where);
                for (const char* key : {"level", "position", "value"})
                    if (!entry.contains(key))
                        throw ParseError(errcode::schema,
                                         where + ": missing field '" + std::string(key) + "'");
                if (!entry["level"].is_number_integer() || !entry["position"].is_number_integer())
                    throw ParseError(errcode::value, where + ": level/position must be integers");
                level = entry["level"].get<int>();
                position = entry["position"].get<int>();
                value = detail::scalar_from_json<T>(entry["value"], where + ".value");
            } else if (entry.is_array() && entry.size() == 3) {
                if (!entry[0].is_number_integer() || !entry[1].is_number_integer())
                    throw ParseError(errcode::value, where + ": level/position must be integers");
                level = entry[0].get<int>();
                position = entry[1].get<int>();
                value = detail::scalar_from_json<T>(entry[2], where + "[2]");
            } else {
                throw ParseError(errcode::schema,
                                 where + ": expected {level, position, value} or a triple");
            }
            try {
                flat_index(mlp.n_sizes, {level, position});
            } catch (const std::out_of_range& e) {
                throw ParseError(errcode::index, where + ": " + e.what());
            }
            if (value < T{} || !detail::finite_scalar(value))
                throw ParseError(errcode::value, where + ": margin must be finite and >= 0");
            if (out.config.alpha.count({level, position}))
                throw ParseError(errcode::index, where + ": duplicate override for component " +
                                                     to_string(LevelIndex{level, position}));
            out.config.alpha[{level, position}] = value;
        }
    }

    if (doc.contains("alpha_fraction")) {
        out.config.alpha_fraction =
            detail::scalar_from_json<T>(doc["alpha_fraction"], "alpha_fraction");
        if (out.config.alpha_fraction < T{} || !(out.config.alpha_fraction < T(1)))
            throw ParseError(errcode::value, "alpha_fraction: must lie in [0, 1)");
    }

    if (doc.contains("epsilon")) {
        const json& eps = doc["epsilon"];
        if (eps.is_array()) {
            if (static_cast<int>(eps.size()) > P)
                throw ParseError(errcode::dimension, "epsilon: more entries than levels");
            out.config.epsilon = detail::vector_from_json<T>(eps, "epsilon");
        } else {
            out.config.epsilon.assign(static_cast<std::size_t>(P),
                                      detail::scalar_from_json<T>(eps, "epsilon"));
        }
        for (const auto& e : out.config.epsilon)
            if (e < T{}) throw ParseError(errcode::value, "epsilon: must be >= 0");
    }

    if (doc.contains("tolerances")) {
        const json& tols = doc["tolerances"];
        if (!tols.is_object()) throw ParseError(errcode::schema, "tolerances: expected an object");
        detail::require_known_keys(tols, {"feasibility", "optimality", "pivot", "sign"},
                                   "tolerances");
        auto& t = out.config.solver.tol;
        if (tols.contains("feasibility"))
            t.feasibility = detail::scalar_from_json<T>(tols["feasibility"], "tolerances.feasibility");
        if (tols.contains("optimality"))
            t.optimality = detail::scalar_from_json<T>(tols["optimality"], "tolerances.optimality");
        if (tols.contains("pivot"))
            t.pivot = detail::scalar_from_json<T>(tols["pivot"], "tolerances.pivot");
        if (tols.contains("sign"))
            t.sign = detail::scalar_from_json<T>(tols["sign"], "tolerances.sign");
        for (const T* v : {&t.feasibility, &t.optimality, &t.pivot, &t.sign})
            if (*v < T{}) throw ParseError(errcode::value, "tolerances: must be >= 0");
    }

    if (doc.contains("format")) {
        if (!doc["format"].is_string())
            throw ParseError(errcode::schema, "format: expected a string");
        out.format = doc["format"].get<std::string>();
        report_format_from_string(out.format);  // validity only
    }

    if (doc.contains("reference")) {
        const json& ref = doc["reference"];
        if (!ref.is_object()) throw ParseError(errcode::schema, "reference: expected an object");
        detail::require_known_keys(ref, {"point", "objectives", "level_optima", "level_values"},
                                   "reference");
        if (ref.contains("point"))
            out.reference.point = detail::vector_from_json<T>(ref["point"], "reference.point", n);
        if (ref.contains("objectives"))
            out.reference.objectives =
                detail::vector_from_json<T>(ref["objectives"], "reference.objectives", P);
        if (ref.contains("level_optima")) {
            const json& opts = ref["level_optima"];
            if (!opts.is_array() || static_cast<int>(opts.size()) != P)
                throw ParseError(errcode::dimension,
                                 "reference.level_optima: expected one point per level");
            for (int q = 0; q < P; ++q)
                out.reference.level_optima.push_back(detail::vector_from_json<T>(
                    opts[q], "reference.level_optima[" + std::to_string(q) + "]", n));
        }
        if (ref.contains("level_values"))
            out.reference.level_values =
                detail::vector_from_json<T>(ref["level_values"], "reference.level_values", P);
    }

    return out;
}

/// Parse a problem document from a file.
template <typename T>
inline ProblemDocument<T> parse_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(errcode::syntax, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text<T>(buf.str());
}

/// Serialize a document so that parsing it back yields an identical model
/// and configuration. Exact scalars are emitted as integers or "p/q"
/// strings, doubles as JSON numbers.
template <typename T>
inline std::string emit_problem(const ProblemDocument<T>& doc) {
    using detail::json;
    json out;
    out["levels"] = doc.problem.n_sizes;
    json rows = json::array();
    for (int p = 0; p < doc.problem.levels(); ++p) {
        json row = json::array();
        for (int j = 0; j < doc.problem.variables(); ++j)
            row.push_back(detail::json_from_scalar(doc.problem.C(p, j)));
        rows.push_back(std::move(row));
    }
    out["objectives"] = std::move(rows);
    json arows = json::array();
    for (std::size_t i = 0; i < doc.problem.A.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < doc.problem.variables(); ++j)
            row.push_back(detail::json_from_scalar(doc.problem.A(i, j)));
        arows.push_back(std::move(row));
    }
    out["A"] = std::move(arows);
    out["b"] = detail::json_from_vector(doc.problem.b);

    if (!doc.config.alpha.empty()) {
        json alpha = json::array();
        for (const auto& [key, value] : doc.config.alpha) {
            json entry;
            entry["level"] = key.first;
            entry["position"] = key.second;
            entry["value"] = detail::json_from_scalar(value);
            alpha.push_back(std::move(entry));
        }
        out["alpha"] = std::move(alpha);
    }
    if (doc.config.alpha_fraction != T(1) / T(4))
        out["alpha_fraction"] = detail::json_from_scalar(doc.config.alpha_fraction);
    if (!doc.config.epsilon.empty())
        out["epsilon"] = detail::json_from_vector(doc.config.epsilon);
    const auto defaults = Tolerances<T>::defaults();
    const auto& t = doc.config.solver.tol;
    if (t.feasibility != defaults.feasibility || t.optimality != defaults.optimality ||
        t.pivot != defaults.pivot || t.sign != defaults.sign) {
        json tols;
        tols["feasibility"] = detail::json_from_scalar(t.feasibility);
        tols["optimality"] = detail::json_from_scalar(t.optimality);
        tols["pivot"] = detail::json_from_scalar(t.pivot);
        tols["sign"] = detail::json_from_scalar(t.sign);
        out["tolerances"] = std::move(tols);
    }
    if (!doc.format.empty()) out["format"] = doc.format;
    if (!doc.reference.empty()) {
        json ref;
        if (!doc.reference.point.empty())
            ref["point"] = detail::json_from_vector(doc.reference.point);
        if (!doc.reference.objectives.empty())
            ref["objectives"] = detail::json_from_vector(doc.reference.objectives);
        if (!doc.reference.level_optima.empty()) {
            json opts = json::array();
            for (const auto& x : doc.reference.level_optima)
                opts.push_back(detail::json_from_vector(x));
            ref["level_optima"] = std::move(opts);
        }
        if (!doc.reference.level_values.empty())
            ref["level_values"] = detail::json_from_vector(doc.reference.level_values);
        out["reference"] = std::move(ref);
    }
    return out.dump(2) + "\n";
}

/// Comparison of a run against the document's reference block: feasibility
/// of the claimed point (naming each violated row and by how much), value
/// deltas at the compromise, and whether the computed level optima agree
/// with the published ones or are alternate optima of equal value.
template <typename T>
inline std::vector<std::string> reference_notes(const MultilevelProblem<T>& mlp,
                                                const CompromiseReport<T>& report,
                                                const ReferenceBlock<T>& ref, int decimals = 6) {
    std::vector<std::string> notes;
    if (ref.empty()) return notes;
    const T close = scalar_from_double<T>(1e-6);

    if (!ref.point.empty()) {
        bool violated = false;
        for (int i = 0; i < mlp.constraints(); ++i) {
            T row{};
            for (int j = 0; j < mlp.variables(); ++j) row += mlp.A(i, j) * ref.point[j];
            if (row > mlp.b[i] + close) {
                notes.push_back("reference point violates row " + std::to_string(i + 1) + " by " +
                                detail::fixed(T(row - mlp.b[i]), decimals));
                violated = true;
            }
        }
        for (int j = 0; j < mlp.variables(); ++j)
            if (ref.point[j] < -close) {
                notes.push_back("reference point is negative at component " + std::to_string(j + 1));
                violated = true;
            }
        if (!violated) notes.push_back("reference point satisfies every constraint row");
        if (report.complete && !report.iterations.empty()) {
            const auto& last = report.iterations.back();
            for (int j = 0; j < mlp.variables(); ++j)
                if (ref.point[j] < last.lower[j] - close || ref.point[j] > last.upper[j] + close) {
                    notes.push_back("reference point lies outside the final box at component " +
                                    std::to_string(j + 1));
                    break;
                }
        }
    }

    if (!ref.objectives.empty() && report.complete && !report.iterations.empty()) {
        const auto& got = report.iterations.back().objectives;
        for (int q = 0; q < mlp.levels(); ++q) {
            std::string line = "objective " + std::to_string(q + 1) + " at the compromise: " +
                               detail::fixed(got[q], decimals) + " (reference " +
                               detail::fixed(ref.objectives[q], decimals);
            const T delta = got[q] - ref.objectives[q];
            if (abs_of(delta) > close)
                line += ", difference " + detail::fixed(delta, decimals);
            notes.push_back(line + ")");
        }
    }

    if (!ref.level_optima.empty() && !report.levels.empty()) {
        for (int q = 0; q < mlp.levels(); ++q) {
            const auto& mine = report.levels[q].x;
            const auto& theirs = ref.level_optima[q];
            bool same_point = true;
            for (int j = 0; j < mlp.variables(); ++j)
                if (abs_of(mine[j] - theirs[j]) > close) {
                    same_point = false;
                    break;
                }
            if (same_point) continue;
            const T ref_value = ref.level_values.empty() ? level_value(mlp, q + 1, theirs)
                                                         : ref.level_values[q];
            if (abs_of(report.levels[q].value - ref_value) <= close)
                notes.push_back("level " + std::to_string(q + 1) +
                                ": computed optimum differs from the reference point but attains "
                                "the same value " +
                                detail::fixed(ref_value, decimals) + " (alternate optima)");
            else
                notes.push_back("level " + std::to_string(q + 1) + ": computed value " +
                                detail::fixed(report.levels[q].value, decimals) +
                                " does not match the reference value " +
                                detail::fixed(ref_value, decimals));
        }
    }
    return notes;
}

/// Render a report. The table form is for reading; the json form
/// round-trips through report_from_json.
template <typename T>
inline std::string emit_report(const MultilevelProblem<T>& mlp, const CompromiseReport<T>& report,
                               const ReferenceBlock<T>& ref = {},
                               ReportFormat format = ReportFormat::Table, int decimals = 6) {
    const auto notes = reference_notes(mlp, report, ref, decimals);

    if (format == ReportFormat::Json) {
        using detail::json;
        json out;
        out["complete"] = report.complete;
        out["status"] = to_string(report.status);
        out["diagnostic"] = report.diagnostic;
        json levels = json::array();
        for (const auto& rec : report.levels) {
            json r;
            r["level"] = rec.level;
            r["status"] = to_string(rec.status);
            r["value"] = detail::json_from_scalar(rec.value);
            r["x"] = detail::json_from_vector(rec.x);
            levels.push_back(std::move(r));
        }
        out["levels"] = std::move(levels);
        out["initial_lower"] = detail::json_from_vector(report.initial_lower);
        out["initial_upper"] = detail::json_from_vector(report.initial_upper);
        json iterations = json::array();
        for (const auto& it : report.iterations) {
            json r;
            r["p"] = it.p;
            r["status"] = to_string(it.status);
            json alpha = json::array();
            for (const auto& [key, value] : it.alpha_used) {
                json entry;
                entry["level"] = key.first;
                entry["position"] = key.second;
                entry["value"] = detail::json_from_scalar(value);
                alpha.push_back(std::move(entry));
            }
            r["alpha"] = std::move(alpha);
            r["lower"] = detail::json_from_vector(it.lower);
            r["upper"] = detail::json_from_vector(it.upper);
            r["x"] = detail::json_from_vector(it.x);
            r["objectives"] = detail::json_from_vector(it.objectives);
            r["beta"] = detail::json_from_scalar(it.beta);
            r["beta_xi"] = detail::json_from_scalar(it.beta_xi);
            iterations.push_back(std::move(r));
        }
        out["iterations"] = std::move(iterations);
        out["compromise"] = detail::json_from_vector(report.compromise);
        out["notes"] = notes;
        return out.dump(2) + "\n";
    }

    std::ostringstream os;
    os << "level solves\n";
    for (const auto& rec : report.levels)
        os << "  level " << rec.level << "  " << to_string(rec.status) << "  value "
           << detail::fixed(rec.value, decimals) << "  at "
           << detail::tuple_string(rec.x, decimals) << "\n";
    os << "initial box\n";
    os << "  lower " << detail::tuple_string(report.initial_lower, decimals) << "\n";
    os << "  upper " << detail::tuple_string(report.initial_upper, decimals) << "\n";
    for (const auto& it : report.iterations) {
        os << "iteration p=" << it.p << "  " << to_string(it.status) << "\n";
        if (!it.alpha_used.empty()) {
            os << "  margins";
            for (const auto& [key, value] : it.alpha_used)
                os << " " << to_string(LevelIndex{key.first, key.second}) << "="
                   << detail::fixed(value, decimals);
            os << "\n";
        }
        os << "  lower " << detail::tuple_string(it.lower, decimals) << "\n";
        os << "  upper " << detail::tuple_string(it.upper, decimals) << "\n";
        if (!it.x.empty()) {
            os << "  x " << detail::tuple_string(it.x, decimals) << "\n";
            os << "  objectives " << detail::tuple_string(it.objectives, decimals) << "\n";
        }
        os << "  beta " << detail::fixed(it.beta, decimals) << "  beta_xi "
           << detail::fixed(it.beta_xi, decimals) << "\n";
    }
    if (report.complete) {
        os << "compromise  " << to_string(report.status) << "\n";
        os << "  x " << detail::tuple_string(report.compromise, decimals) << "\n";
    } else {
        os << "aborted  " << to_string(report.status) << "\n";
        if (!report.diagnostic.empty()) os << "  " << report.diagnostic << "\n";
    }
    if (!notes.empty()) {
        os << "notes\n";
        for (const auto& note : notes) os << "  - " << note << "\n";
    }
    return os.str();
}

/// Rebuild a report from its json rendering (notes are commentary and are
/// not restored).
template <typename T>
inline CompromiseReport<T> report_from_json(const std::string& text) {
    using detail::json;
    const json doc = detail::parse_json_text(text);
    if (!doc.is_object()) throw ParseError(errcode::schema, "report root must be an object");
    CompromiseReport<T> report;
    try {
        report.complete = doc.at("complete").get<bool>();
        report.status = solve_status_from_string(doc.at("status").get<std::string>());
        report.diagnostic = doc.at("diagnostic").get<std::string>();
        for (const auto& r : doc.at("levels")) {
            LevelSolveRecord<T> rec;
            rec.level = r.at("level").get<int>();
            rec.status = solve_status_from_string(r.at("status").get<std::string>());
            rec.value = detail::scalar_from_json<T>(r.at("value"), "levels.value");
            rec.x = detail::vector_from_json<T>(r.at("x"), "levels.x");
            report.levels.push_back(std::move(rec));
        }
        report.initial_lower = detail::vector_from_json<T>(doc.at("initial_lower"), "initial_lower");
        report.initial_upper = detail::vector_from_json<T>(doc.at("initial_upper"), "initial_upper");
        for (const auto& r : doc.at("iterations")) {
            IterationRecord<T> it;
            it.p = r.at("p").get<int>();
            it.status = solve_status_from_string(r.at("status").get<std::string>());
            for (const auto& entry : r.at("alpha"))
                it.alpha_used[{entry.at("level").get<int>(), entry.at("position").get<int>()}] =
                    detail::scalar_from_json<T>(entry.at("value"), "iterations.alpha.value");
            it.lower = detail::vector_from_json<T>(r.at("lower"), "iterations.lower");
            it.upper = detail::vector_from_json<T>(r.at("upper"), "iterations.upper");
            it.x = detail::vector_from_json<T>(r.at("x"), "iterations.x");
            it.objectives = detail::vector_from_json<T>(r.at("objectives"), "iterations.objectives");
            it.beta = detail::scalar_from_json<T>(r.at("beta"), "iterations.beta");
            it.beta_xi = detail::scalar_from_json<T>(r.at("beta_xi"), "iterations.beta_xi");
            report.iterations.push_back(std::move(it));
        }
        report.compromise = detail::vector_from_json<T>(doc.at("compromise"), "compromise");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(errcode::schema, e.what());
    }
    return report;
}

}  // namespace mllp
