#pragma once

// Command-line front end. Four verbs:
//
//   solve <file>        full cascade; prints the run report
//   solve-level <file>  one level's LP on its own (--p required)
//   oracle <file>       enumeration oracle for one level (--p, default 1)
//   verify [<file>]     solver-vs-oracle cross-check, per level of a
//                       document or (--random) over generated box LPs
//
// Exit codes: 0 success, 1 the model was solved but is infeasible/unbounded
// (or the cascade aborted), 2 bad input, 3 internal invariant violation or
// a verify mismatch. Error lines on stderr start with the stable E_* code.
//
// --exact switches solve / solve-level / oracle to rational arithmetic;
// --alpha and --epsilon override the document's configuration. Repeatable
// flags (--alpha) should follow the file argument so the greedy value list
// cannot swallow it.

#include "mllp/adaptive.hpp"
#include "mllp/io.hpp"
#include "mllp/multilevel.hpp"
#include "mllp/oracle.hpp"
#include "mllp/problem.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace mllp {

namespace detail {

/// Everything the verbs can take; each subcommand binds the subset it uses.
struct CliArgs {
    std::string file;
    bool exact = false;
    std::string epsilon;             ///< scalar applied to every level
    std::vector<std::string> alpha;  ///< "level,position,value" entries
    std::string format;
    int level = 1;
    bool random_mode = false;
    unsigned int seed = 12345;
    int count = 100;
};

template <typename T>
inline std::tuple<int, int, T> parse_alpha_flag(const std::string& text) {
    std::vector<std::string> parts;
    std::string piece;
    std::istringstream stream(text);
    while (std::getline(stream, piece, ',')) parts.push_back(piece);
    if (parts.size() != 3)
        throw ParseError(errcode::value,
                         "--alpha expects level,position,value; got '" + text + "'");
    try {
        return {std::stoi(parts[0]), std::stoi(parts[1]), scalar_from_string<T>(parts[2])};
    } catch (const std::exception&) {
        throw ParseError(errcode::value,
                         "--alpha expects level,position,value; got '" + text + "'");
    }
}

template <typename T>
inline void apply_overrides(ProblemDocument<T>& doc, const CliArgs& a) {
    if (!a.epsilon.empty()) {
        T e;
        try {
            e = scalar_from_string<T>(a.epsilon);
        } catch (const std::exception&) {
            throw ParseError(errcode::value, "--epsilon: cannot parse '" + a.epsilon + "'");
        }
        if (e < T{}) throw ParseError(errcode::value, "--epsilon: must be >= 0");
        doc.config.epsilon.assign(static_cast<std::size_t>(doc.problem.levels()), e);
    }
    for (const auto& text : a.alpha) {
        const auto [level, position, value] = parse_alpha_flag<T>(text);
        try {
            flat_index(doc.problem.n_sizes, {level, position});
        } catch (const std::out_of_range& e) {
            throw ParseError(errcode::index, "--alpha " + text + ": " + e.what());
        }
        if (value < T{})
            throw ParseError(errcode::value, "--alpha " + text + ": margin must be >= 0");
        doc.config.alpha[{level, position}] = value;
    }
}

inline ReportFormat choose_format(const CliArgs& a, const std::string& doc_format) {
    if (!a.format.empty()) return report_format_from_string(a.format);
    if (!doc_format.empty()) return report_format_from_string(doc_format);
    return ReportFormat::Table;
}

template <typename T>
inline void require_level_in_range(const ProblemDocument<T>& doc, int p) {
    if (p < 1 || p > doc.problem.levels())
        throw ParseError(errcode::index, "--p " + std::to_string(p) + " outside 1.." +
                                             std::to_string(doc.problem.levels()));
}

template <typename T>
inline int cmd_solve(const CliArgs& a, std::ostream& out) {
    auto doc = parse_problem<T>(a.file);
    apply_overrides(doc, a);
    const ReportFormat fmt = choose_format(a, doc.format);
    const auto report = run(doc.problem, doc.config);
    out << emit_report(doc.problem, report, doc.reference, fmt);
    return report.complete ? 0 : 1;
}

template <typename T>
inline int cmd_solve_level(const CliArgs& a, std::ostream& out) {
    auto doc = parse_problem<T>(a.file);
    apply_overrides(doc, a);
    require_level_in_range(doc, a.level);
    const ReportFormat fmt = choose_format(a, doc.format);
    SolverOptions<T> opt = doc.config.solver;
    opt.epsilon = epsilon_for(doc.config, a.level);
    const auto res =
        solve(build_level_lp(doc.problem, a.level, doc.config.bound_cap), opt,
              doc.config.bound_cap);
    if (fmt == ReportFormat::Json) {
        json j;
        j["level"] = a.level;
        j["status"] = to_string(res.status);
        j["value"] = json_from_scalar(res.objective);
        j["x"] = json_from_vector(res.x);
        j["beta"] = json_from_scalar(res.beta);
        j["iterations"] = res.iterations;
        j["pivots"] = res.pivots;
        out << j.dump(2) << "\n";
    } else {
        out << "level " << a.level << "  " << to_string(res.status) << "\n";
        if (!res.x.empty()) out << "  x " << tuple_string(res.x, 6) << "\n";
        out << "  value " << fixed(res.objective, 6) << "\n";
        out << "  beta " << fixed(res.beta, 6) << "\n";
    }
    return res.status == SolveStatus::Optimal || res.status == SolveStatus::EpsilonOptimal ? 0
                                                                                           : 1;
}

template <typename T>
inline int cmd_oracle(const CliArgs& a, std::ostream& out) {
    auto doc = parse_problem<T>(a.file);
    require_level_in_range(doc, a.level);
    const ReportFormat fmt = choose_format(a, doc.format);
    const auto res = oracle_solve(build_level_lp(doc.problem, a.level, doc.config.bound_cap),
                                  doc.config.solver.tol, 1000000, doc.config.bound_cap);
    const int n = doc.problem.variables();
    std::vector<Vector<T>> vertices;
    for (const auto& v : res.vertices)
        vertices.emplace_back(v.begin(), v.begin() + n);  // drop the slack block
    const char* status = res.status == OracleStatus::Optimal ? "optimal" : "infeasible";
    if (fmt == ReportFormat::Json) {
        json j;
        j["level"] = a.level;
        j["status"] = status;
        j["value"] = json_from_scalar(res.value);
        json verts = json::array();
        for (const auto& v : vertices) verts.push_back(json_from_vector(v));
        j["vertices"] = std::move(verts);
        out << j.dump(2) << "\n";
    } else {
        out << "oracle level " << a.level << "  " << status << "\n";
        if (res.status == OracleStatus::Optimal) {
            out << "  value " << fixed(res.value, 6) << "\n";
            for (const auto& v : vertices) out << "  vertex " << tuple_string(v, 6) << "\n";
        }
    }
    return res.status == OracleStatus::Optimal ? 0 : 1;
}

inline bool values_agree(double mine, double oracle) {
    return std::fabs(mine - oracle) <= 1e-6 * std::max(1.0, std::fabs(oracle));
}

inline int cmd_verify_file(const CliArgs& a, std::ostream& out) {
    const auto doc = parse_problem<double>(a.file);
    bool all_ok = true;
    int checked = 0;
    for (int p = 1; p <= doc.problem.levels(); ++p) {
        const auto lp = build_level_lp(doc.problem, p, doc.config.bound_cap);
        SolverOptions<double> opt = doc.config.solver;
        const auto res = solve(lp, opt, doc.config.bound_cap);
        if (res.status == SolveStatus::Unbounded) {
            // the oracle only visits cap-free vertices, so there is no
            // finite value to compare against
            out << "level " << p << "  unbounded, skipped\n";
            continue;
        }
        const auto ora = oracle_solve(lp, opt.tol, 1000000, doc.config.bound_cap);
        ++checked;
        bool ok;
        if (res.status == SolveStatus::Infeasible)
            ok = ora.status == OracleStatus::Infeasible;
        else if (ora.status == OracleStatus::Infeasible)
            ok = false;
        else
            ok = values_agree(res.objective, ora.value);
        out << "level " << p << "  solver " << to_string(res.status);
        if (res.status != SolveStatus::Infeasible) out << " " << fixed(res.objective, 6);
        out << "  oracle ";
        if (ora.status == OracleStatus::Infeasible)
            out << "infeasible";
        else
            out << fixed(ora.value, 6);
        out << (ok ? "  ok" : "  MISMATCH") << "\n";
        all_ok = all_ok && ok;
    }
    out << (all_ok ? "verified " : "FAILED ") << checked << " level solve"
        << (checked == 1 ? "" : "s") << " against the oracle\n";
    return all_ok ? 0 : 3;
}

/// The same instance family the test corpus draws from: small dense rows,
/// integer data, finite boxes (so unboundedness cannot occur).
inline BoundedLP<double> random_box_lp(std::mt19937& rng, int max_n = 6, int max_m = 6) {
    std::uniform_int_distribution<int> size_n(1, max_n), size_m(1, max_m);
    std::uniform_int_distribution<int> coef(-9, 9), low(-4, 0), width(0, 6);
    const int n = size_n(rng);
    const int m = size_m(rng);
    BoundedLP<double> lp;
    lp.c.resize(n);
    lp.A = Matrix<double>(m, n);
    lp.b.resize(m);
    lp.lower.resize(n);
    lp.upper.resize(n);
    for (int j = 0; j < n; ++j) lp.c[j] = coef(rng);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) lp.A(i, j) = coef(rng);
        lp.b[i] = coef(rng);
    }
    for (int j = 0; j < n; ++j) {
        lp.lower[j] = low(rng);
        lp.upper[j] = lp.lower[j] + width(rng);
    }
    return lp;
}

inline int cmd_verify_random(const CliArgs& a, std::ostream& out) {
    if (a.count < 1) throw ParseError(errcode::value, "--count: must be >= 1");
    std::mt19937 rng(a.seed);
    int agree = 0;
    for (int t = 0; t < a.count; ++t) {
        const auto lp = random_box_lp(rng);
        const auto res = solve(lp);
        const auto ora = oracle_solve(lp);
        bool ok;
        if (res.status == SolveStatus::Infeasible)
            ok = ora.status == OracleStatus::Infeasible;
        else if (res.status == SolveStatus::Optimal || res.status == SolveStatus::EpsilonOptimal)
            ok = ora.status == OracleStatus::Optimal && values_agree(res.objective, ora.value);
        else
            ok = false;  // finite boxes: unbounded or a stall is a solver defect
        if (ok) {
            ++agree;
        } else {
            out << "case " << t + 1 << "  solver " << to_string(res.status) << " "
                << fixed(res.objective, 6) << "  oracle "
                << (ora.status == OracleStatus::Infeasible ? std::string("infeasible")
                                                           : fixed(ora.value, 6))
                << "  MISMATCH\n";
        }
    }
    out << agree << "/" << a.count << " random instances agree with the oracle (seed " << a.seed
        << ")\n";
    return agree == a.count ? 0 : 3;
}

}  // namespace detail

/// Run the command line given args without the program name. Returns the
/// process exit code; all output goes to the supplied streams.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"multilevel linear programs: level solves, range-reduction cascade, "
                 "enumeration oracle",
                 "mllp"};
    app.require_subcommand(1);
    detail::CliArgs a;

    CLI::App* solve_cmd = app.add_subcommand("solve", "run the full range-reduction cascade");
    solve_cmd->add_option("file", a.file, "problem document (json)")->required();
    solve_cmd->add_flag("--exact", a.exact, "compute in exact rational arithmetic");
    solve_cmd->add_option("--epsilon", a.epsilon, "suboptimality allowance for every level");
    solve_cmd->add_option("--alpha", a.alpha,
                          "margin override as level,position,value (repeatable)");
    solve_cmd->add_option("--format", a.format, "table or json");

    CLI::App* level_cmd = app.add_subcommand("solve-level", "solve one level's LP on its own");
    level_cmd->add_option("file", a.file, "problem document (json)")->required();
    level_cmd->add_option("--p", a.level, "level to solve (1-based)")->required();
    level_cmd->add_flag("--exact", a.exact, "compute in exact rational arithmetic");
    level_cmd->add_option("--epsilon", a.epsilon, "suboptimality allowance");
    level_cmd->add_option("--format", a.format, "table or json");

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "enumerate basic solutions of one level's LP");
    oracle_cmd->add_option("file", a.file, "problem document (json)")->required();
    oracle_cmd->add_option("--p", a.level, "level to enumerate (1-based)");
    oracle_cmd->add_flag("--exact", a.exact, "compute in exact rational arithmetic");
    oracle_cmd->add_option("--format", a.format, "table or json");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "cross-check the solver against the enumeration oracle");
    verify_cmd->add_option("file", a.file, "problem document (check each level)");
    verify_cmd->add_flag("--random", a.random_mode, "check generated box instances instead");
    verify_cmd->add_option("--seed", a.seed, "generator seed for --random");
    verify_cmd->add_option("--count", a.count, "number of random instances");

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes back to front
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed())
            return a.exact ? detail::cmd_solve<Rational>(a, out) : detail::cmd_solve<double>(a, out);
        if (level_cmd->parsed())
            return a.exact ? detail::cmd_solve_level<Rational>(a, out)
                           : detail::cmd_solve_level<double>(a, out);
        if (oracle_cmd->parsed())
            return a.exact ? detail::cmd_oracle<Rational>(a, out)
                           : detail::cmd_oracle<double>(a, out);
        if (verify_cmd->parsed()) {
            if (a.random_mode) return detail::cmd_verify_random(a, out);
            if (a.file.empty())
                throw ParseError(errcode::schema, "verify needs a problem document or --random");
            return detail::cmd_verify_file(a, out);
        }
        throw InternalError("no subcommand dispatched");
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const LevelSolveError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        err << errcode::internal << ": " << e.what() << "\n";
        return 3;
    } catch (const std::length_error& e) {
        err << errcode::cap << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        const bool margin = std::string(e.what()).find("margin") != std::string::npos;
        err << (margin ? errcode::alpha : errcode::value) << ": " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << errcode::index << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << errcode::internal << ": " << e.what() << "\n";
        return 3;
    }
}

}  // namespace mllp
