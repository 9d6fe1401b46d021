#pragma once

// End-to-end cascade for P-level mono-objective programs.
//
// Three phases. First every level objective is maximized independently over
// the shared polyhedron, giving the level optima x̂^1..x̂^P. Their
// componentwise extremes become the initial box [l^(1), u^(1)]. Then P-1
// sequential iterations: iteration p contracts the ranges of level (p-1)'s
// components around that level's optimum (range_reduction) and maximizes
// objective p over the polyhedron intersected with the contracted box. The
// solution of the last iteration is the compromise.
//
// Each iteration carries two suboptimality figures: the classical bound
// beta of the terminal supporting solution, which the solver's stopping
// rule uses, and the contraction-weighted variant beta^xi of the same
// solution, reported as a diagnostic. The latter re-applies the iteration's
// component maps to the point and to the pre-contraction bounds, so its
// terms vanish only at endpoints the maps hold fixed.

#include "mllp/adaptive.hpp"
#include "mllp/numeric.hpp"
#include "mllp/problem.hpp"
#include "mllp/range_reduction.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mllp {

/// A level objective could not be maximized on its own: the shared
/// polyhedron is empty or the objective is unbounded over it (or the solver
/// gave up). Nothing downstream is meaningful in that case.
class LevelSolveError : public std::runtime_error {
public:
    LevelSolveError(int level_, SolveStatus status_)
        : std::runtime_error("level " + std::to_string(level_) +
                             " solve terminated " + to_string(status_)),
          level(level_),
          status(status_) {}

    int level;
    SolveStatus status;
};

/// Outcome of one independent level solve.
template <typename T>
struct LevelSolveRecord {
    int level = 0;      ///< 1-based
    Vector<T> x;        ///< structural maximizer found
    T value{};          ///< objective value of that level at x
    SolveStatus status = SolveStatus::IterationLimit;
};

/// Outcome of one contraction/solve iteration (p = 2..P).
template <typename T>
struct IterationRecord {
    int p = 0;
    std::map<std::pair<int, int>, T> alpha_used;  ///< margins actually applied
    Vector<T> lower;       ///< contracted bounds the iteration solved under
    Vector<T> upper;
    Vector<T> x;           ///< structural solution x^p
    Vector<T> objectives;  ///< all P objective values at x^p
    T beta{};              ///< classical suboptimality bound at termination
    T beta_xi{};           ///< contraction-weighted diagnostic
    SolveStatus status = SolveStatus::IterationLimit;
};

/// Full account of a cascade run. `complete` is false when an iteration
/// failed; the records up to and including the failing one are kept and
/// `diagnostic` says what went wrong.
template <typename T>
struct CompromiseReport {
    std::vector<LevelSolveRecord<T>> levels;
    Vector<T> initial_lower;
    Vector<T> initial_upper;
    std::vector<IterationRecord<T>> iterations;
    Vector<T> compromise;  ///< x^P when complete, empty otherwise
    SolveStatus status = SolveStatus::IterationLimit;  ///< final iteration's status
    bool complete = false;
    std::string diagnostic;
};

/// Knobs of a cascade run. `epsilon` is indexed by level (entry p-1 for
/// level p); missing entries mean 0, i.e. solve to the optimality tolerance.
template <typename T>
struct RunConfig {
    std::map<std::pair<int, int>, T> alpha;  ///< absolute margin overrides, (level, position)
    T alpha_fraction = T(1) / T(4);          ///< default margin as a fraction of width
    std::vector<T> epsilon;                  ///< per-level early-stop thresholds
    SolverOptions<T> solver;
    T bound_cap = default_bound_cap<T>();
};

/// Value of level q's objective at a structural point.
template <typename T>
inline T level_value(const MultilevelProblem<T>& mlp, int q, const Vector<T>& x) {
    T s{};
    for (int j = 0; j < mlp.variables(); ++j) s += mlp.C(q - 1, j) * x[j];
    return s;
}

namespace detail {

template <typename T>
inline T epsilon_for(const RunConfig<T>& config, int level) {
    const auto i = static_cast<std::size_t>(level - 1);
    return i < config.epsilon.size() ? config.epsilon[i] : T{};
}

}  // namespace detail

/// Maximize every level objective independently over { A x <= b, x >= 0 }.
/// Throws LevelSolveError as soon as one of them fails, since neither the
/// initial box nor the contraction anchors exist without all P optima.
template <typename T>
inline std::vector<LevelSolveRecord<T>> solve_all_levels(const MultilevelProblem<T>& mlp,
                                                         const RunConfig<T>& config = {}) {
    mlp.validate();
    std::vector<LevelSolveRecord<T>> out;
    out.reserve(mlp.levels());
    for (int p = 1; p <= mlp.levels(); ++p) {
        auto opt = config.solver;
        opt.epsilon = detail::epsilon_for(config, p);
        auto res = solve(build_level_lp(mlp, p, config.bound_cap), opt, config.bound_cap);
        if (res.status != SolveStatus::Optimal && res.status != SolveStatus::EpsilonOptimal)
            throw LevelSolveError(p, res.status);
        out.push_back({p, res.x, res.objective, res.status});
    }
    return out;
}

/// Componentwise extremes of the level optima: the tightest box containing
/// all of them.
template <typename T>
inline std::pair<Vector<T>, Vector<T>> compute_initial_bounds(
    const std::vector<Vector<T>>& level_optima) {
    if (level_optima.empty()) throw std::invalid_argument("no level optima to bound");
    const std::size_t n = level_optima.front().size();
    for (const auto& x : level_optima)
        if (x.size() != n) throw std::invalid_argument("level optima of unequal length");
    Vector<T> lo = level_optima.front();
    Vector<T> hi = level_optima.front();
    for (const auto& x : level_optima)
        for (std::size_t j = 0; j < n; ++j) {
            if (x[j] < lo[j]) lo[j] = x[j];
            if (x[j] > hi[j]) hi[j] = x[j];
        }
    return {std::move(lo), std::move(hi)};
}

/// Contraction-weighted suboptimality of a supporting solution of the
/// iteration-p working problem (structural columns first, then slacks). The
/// estimate re-applies iteration p's component maps: each nonbasic term
/// compares the mapped component against the mapped pre-contraction bound
/// on the side its estimate points to. Slack columns pass through
/// unmapped, so on a problem the maps leave alone this is exactly the
/// classical bound. Diagnostic only; it does not drive any stopping rule.
template <typename T>
inline T multilevel_suboptimality(const StandardLP<T>& lp,
                                  const SupportingFeasibleSolution<T>& sfs,
                                  const RangeReductionContext<T>& ctx, int p) {
    if (!ctx.problem) throw std::invalid_argument("range reduction context has no problem attached");
    const auto& sizes = ctx.problem->n_sizes;
    const int n_struct = ctx.problem->variables();
    const Vector<T> e = reduced_estimates(lp, sfs, lp.c);
    const auto& tol = ctx.tol;

    T bound{};
    for (int col = 0; col < lp.columns(); ++col) {
        if (sfs.in_basis[col]) continue;
        const int sgn = sign_of(e[col], tol.optimality);
        if (sgn == 0) continue;
        T xv, bv;
        if (col < n_struct) {
            const LevelIndex ix = unflatten_index(sizes, col + 1);
            xv = xi(ctx, p, ix.level, ix.position, sfs.x[col]);
            bv = xi(ctx, p, ix.level, ix.position,
                    sgn > 0 ? ctx.lower[col] : ctx.upper[col]);
        } else {
            xv = sfs.x[col];
            bv = sgn > 0 ? lp.lower[col] : lp.upper[col];
        }
        bound += e[col] * (xv - bv);
    }
    return bound;
}

/// The whole cascade: independent level solves, initial box, P-1
/// contraction/solve iterations. A failed iteration stops the run and
/// returns the partial report with its diagnostic; everything else is
/// recorded along the way.
template <typename T>
inline CompromiseReport<T> run(const MultilevelProblem<T>& mlp, const RunConfig<T>& config = {}) {
    CompromiseReport<T> report;
    report.levels = solve_all_levels(mlp, config);

    std::vector<Vector<T>> optima;
    optima.reserve(report.levels.size());
    for (const auto& rec : report.levels) optima.push_back(rec.x);
    std::tie(report.initial_lower, report.initial_upper) = compute_initial_bounds(optima);

    RangeReductionContext<T> ctx;
    ctx.problem = &mlp;
    ctx.level_optima = std::move(optima);
    ctx.lower = report.initial_lower;
    ctx.upper = report.initial_upper;
    ctx.alpha = config.alpha;
    ctx.alpha_fraction = config.alpha_fraction;
    ctx.tol = config.solver.tol;

    for (int p = 2; p <= mlp.levels(); ++p) {
        ctx.p = p;
        auto [lo, hi] = reduce_bounds(ctx, p);

        IterationRecord<T> rec;
        rec.p = p;
        rec.lower = lo;
        rec.upper = hi;
        for (int j = 1; j <= mlp.n_sizes[p - 2]; ++j) {
            const int f = flat_index(mlp.n_sizes, {p - 1, j}) - 1;
            const T width = ctx.upper[f] - ctx.lower[f];
            if (sign_of(width, ctx.tol.sign) == 0) continue;
            const CaseSelectors s = case_selectors(ctx, j);
            if (s.boundary == 1) rec.alpha_used[{p - 1, j}] = resolve_alpha(ctx, p - 1, j);
        }

        BoundedLP<T> model;
        model.c.assign(mlp.variables(), T{});
        for (int j = 0; j < mlp.variables(); ++j) model.c[j] = mlp.C(p - 1, j);
        model.A = mlp.A;
        model.b = mlp.b;
        model.lower = lo;
        model.upper = hi;

        auto opt = config.solver;
        opt.epsilon = detail::epsilon_for(config, p);
        const auto std_lp = to_standard_form(model, config.bound_cap);
        auto res = solve(std_lp, opt);

        rec.status = res.status;
        rec.beta = res.beta;
        if (res.support) {
            rec.x = res.x;
            rec.x.resize(mlp.variables());
            rec.objectives.resize(mlp.levels());
            for (int q = 1; q <= mlp.levels(); ++q)
                rec.objectives[q - 1] = level_value(mlp, q, rec.x);
            rec.beta_xi = multilevel_suboptimality(std_lp, *res.support, ctx, p);
        }
        report.iterations.push_back(std::move(rec));

        if (res.status != SolveStatus::Optimal && res.status != SolveStatus::EpsilonOptimal) {
            report.status = res.status;
            report.diagnostic = "iteration " + std::to_string(p) + " (objective of level " +
                                std::to_string(p) + ") terminated " + to_string(res.status);
            return report;
        }
        ctx.lower = std::move(lo);
        ctx.upper = std::move(hi);
    }

    const auto& last = report.iterations.back();
    report.compromise = last.x;
    report.status = last.status;
    report.complete = true;
    return report;
}

/// Accept a completed run as an epsilon-satisfactory compromise: the final
/// iteration's contraction-weighted bound must not exceed epsilon (up to
/// the optimality tolerance) and the compromise must satisfy every
/// constraint of its final model within the feasibility tolerance.
template <typename T>
inline bool check_compromise(const MultilevelProblem<T>& mlp, const CompromiseReport<T>& report,
                             const T& epsilon, const Tolerances<T>& tol = Tolerances<T>::defaults()) {
    if (!report.complete || report.iterations.empty()) return false;
    const auto& last = report.iterations.back();
    if (last.beta_xi > epsilon + tol.optimality) return false;

    const auto& x = report.compromise;
    if (static_cast<int>(x.size()) != mlp.variables()) return false;
    for (int i = 0; i < mlp.constraints(); ++i) {
        T row{};
        for (int j = 0; j < mlp.variables(); ++j) row += mlp.A(i, j) * x[j];
        if (row > mlp.b[i] + tol.feasibility) return false;
    }
    for (int j = 0; j < mlp.variables(); ++j) {
        if (x[j] < -tol.feasibility) return false;
        if (x[j] < last.lower[j] - tol.feasibility) return false;
        if (x[j] > last.upper[j] + tol.feasibility) return false;
    }
    return true;
}

}  // namespace mllp
