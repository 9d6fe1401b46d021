#pragma once

// Support-method LP solver for equality-form problems with box bounds:
//
//     maximize c^t x   s.t.   A x = b,   l <= x <= u
//
// The working object is a supporting feasible solution {x, J_B}: a feasible
// point together with an ordered set of m columns whose submatrix is
// nonsingular. Unlike the classical simplex the point is not required to be
// basic -- nonbasic components may rest strictly between their bounds.
//
// Estimates and the suboptimality bound. With potentials y^t = c_B^t B^-1
// the estimate of column j is E_j = y^t A_j - c_j (zero on the support).
// For any feasible y0,
//
//     c^t y0 - c^t x = sum_{j in J_N} E_j (x_j - y0_j),
//
// so the quantity
//
//     beta(x, J_B) = sum_{E_j > 0} E_j (x_j - l_j) + sum_{E_j < 0} E_j (x_j - u_j)
//
// (both sums over nonbasic j; each term is nonnegative) bounds the distance
// to the optimum: c^t x* - c^t x <= beta. beta <= epsilon certifies an
// epsilon-optimal point, beta = 0 an optimal one -- the solver's stopping
// rule, independent of vertex status.
//
// One improving step moves every nonbasic component with a nonzero estimate
// toward its estimate-appropriate bound (E > 0 -> lower, E < 0 -> upper),
// compensating on the support to stay on A x = b. Along that direction
// beta scales as (1 - theta) beta, and the objective grows at rate beta.
// When a support column blocks the step early, the blocked column leaves
// the support and a nonbasic column enters, chosen by a dual ratio test
// that keeps the estimate signs coherent with the blocked column's bound.
//
// iterate() packages pivots into one "major" iteration that only returns
// once beta has strictly decreased (or the pivot budget is exhausted), so
// the recorded beta trace is monotone by construction.

#include "mllp/dense.hpp"
#include "mllp/numeric.hpp"
#include "mllp/problem.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mllp {

enum class SolveStatus {
    Optimal,
    EpsilonOptimal,
    Infeasible,
    Unbounded,
    IterationLimit,
};

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::EpsilonOptimal: return "epsilon-optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

/// Thrown when internal consistency is lost (singular support after a
/// pivot, failed replacement search, ...). Maps to exit code 3 in the CLI.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

template <typename T>
struct SolverOptions {
    T epsilon{};                      ///< suboptimality allowance (0 = exact)
    Tolerances<T> tol = Tolerances<T>::defaults();
    int max_pivots = -1;              ///< support changes; <= 0 means 10 (N + m)
    int refactor_every = 50;          ///< rebuild B^-1 after this many pivots
    bool record_trace = false;
};

template <typename T>
struct TraceEntry {
    T objective{};
    T beta{};
};

/// A feasible point plus an ordered support whose submatrix is invertible.
/// The inverse is carried explicitly and maintained by rank-one updates;
/// refactor() rebuilds it from scratch.
template <typename T>
struct SupportingFeasibleSolution {
    Vector<T> x;
    std::vector<int> basis;     ///< m column indices, position-ordered
    std::vector<char> in_basis; ///< size N
    Matrix<T> binv;             ///< inverse of the support submatrix
    int pivots_since_refactor = 0;

    int position_of(int column) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == column) return static_cast<int>(i);
        return -1;
    }
};

template <typename T>
struct SolveResult {
    SolveStatus status = SolveStatus::IterationLimit;
    Vector<T> x;            ///< full column vector (structural + slacks)
    T objective{};
    T beta{};               ///< suboptimality bound at termination
    int iterations = 0;     ///< major iterations
    int pivots = 0;         ///< support changes
    std::vector<TraceEntry<T>> trace;  ///< per major iteration + final state
    /// terminal supporting solution, empty when the feasibility phase failed
    std::optional<SupportingFeasibleSolution<T>> support;
};

namespace detail {

template <typename T>
inline Vector<T> column_of(const StandardLP<T>& lp, int j) {
    Vector<T> col(lp.rows());
    for (int i = 0; i < lp.rows(); ++i) col[i] = lp.A(i, j);
    return col;
}

/// Rebuild binv from the support columns; recompute the basic components
/// of x from the nonbasic ones so accumulated drift cannot survive a
/// refactorization.
template <typename T>
inline void refactor(const StandardLP<T>& lp, SupportingFeasibleSolution<T>& sfs,
                     const Tolerances<T>& tol) {
    const int m = lp.rows();
    Matrix<T> B(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) B(i, k) = lp.A(i, sfs.basis[k]);
    if (!invert(B, sfs.binv, tol.pivot))
        throw InternalError("support submatrix became singular");
    Vector<T> rhs = lp.b;
    for (int j = 0; j < lp.columns(); ++j) {
        if (sfs.in_basis[j] || sfs.x[j] == T{}) continue;
        for (int i = 0; i < m; ++i) rhs[i] -= lp.A(i, j) * sfs.x[j];
    }
    Vector<T> xb = matvec(sfs.binv, rhs);
    for (int i = 0; i < m; ++i) sfs.x[sfs.basis[i]] = xb[i];
    sfs.pivots_since_refactor = 0;
}

/// Exchange support position `pos` for column `entering` and update the
/// carried inverse with one Gauss-Jordan sweep.
template <typename T>
inline void pivot_support(const StandardLP<T>& lp, SupportingFeasibleSolution<T>& sfs,
                          int pos, int entering, const SolverOptions<T>& opt) {
    const int m = lp.rows();
    Vector<T> a = matvec(sfs.binv, column_of(lp, entering));
    if (abs_of(a[pos]) <= opt.tol.pivot)
        throw InternalError("pivot element below threshold");
    sfs.in_basis[sfs.basis[pos]] = 0;
    sfs.in_basis[entering] = 1;
    sfs.basis[pos] = entering;
    const T piv = a[pos];
    for (int j = 0; j < m; ++j) sfs.binv(pos, j) /= piv;
    for (int r = 0; r < m; ++r) {
        if (r == pos || a[r] == T{}) continue;
        const T f = a[r];
        for (int j = 0; j < m; ++j) sfs.binv(r, j) -= f * sfs.binv(pos, j);
    }
    if (++sfs.pivots_since_refactor >= opt.refactor_every) refactor(lp, sfs, opt.tol);
}

}  // namespace detail

/// Estimates E_j = c_B^t B^-1 A_j - c_j for every column (zero on the
/// support). The objective vector is a parameter because the feasibility
/// phase prices a different objective on the same constraint rows.
template <typename T>
inline Vector<T> reduced_estimates(const StandardLP<T>& lp,
                                   const SupportingFeasibleSolution<T>& sfs,
                                   const Vector<T>& c) {
    const int m = lp.rows();
    const int N = lp.columns();
    Vector<T> cb(m);
    for (int i = 0; i < m; ++i) cb[i] = c[sfs.basis[i]];
    Vector<T> y = vecmat(cb, sfs.binv);  // potentials
    Vector<T> e(N, T{});
    for (int j = 0; j < N; ++j) {
        if (sfs.in_basis[j]) continue;
        T z{};
        for (int i = 0; i < m; ++i) z += y[i] * lp.A(i, j);
        e[j] = z - c[j];
    }
    return e;
}

/// Suboptimality bound beta(x, J_B) for the given objective; see header
/// comment. Estimates within tol.optimality of zero contribute nothing.
template <typename T>
inline T suboptimality(const StandardLP<T>& lp, const SupportingFeasibleSolution<T>& sfs,
                       const Vector<T>& c) {
    const Tolerances<T> tol = Tolerances<T>::defaults();
    Vector<T> e = reduced_estimates(lp, sfs, c);
    T beta{};
    for (int j = 0; j < lp.columns(); ++j) {
        if (sfs.in_basis[j]) continue;
        if (e[j] > tol.optimality)
            beta += e[j] * (sfs.x[j] - lp.lower[j]);
        else if (e[j] < -tol.optimality)
            beta += e[j] * (sfs.x[j] - lp.upper[j]);
    }
    return beta;
}

namespace detail {

template <typename T>
inline T beta_from_estimates(const StandardLP<T>& lp, const SupportingFeasibleSolution<T>& sfs,
                             const Vector<T>& e, const Tolerances<T>& tol) {
    T beta{};
    for (int j = 0; j < lp.columns(); ++j) {
        if (sfs.in_basis[j]) continue;
        if (e[j] > tol.optimality)
            beta += e[j] * (sfs.x[j] - lp.lower[j]);
        else if (e[j] < -tol.optimality)
            beta += e[j] * (sfs.x[j] - lp.upper[j]);
    }
    return beta;
}

enum class MinorOutcome {
    AtBounds,   ///< no improving component was left; beta is (near) zero
    Stepped,    ///< full step, no support change
    Pivoted,    ///< step (possibly zero) plus a support change
};

template <typename T>
struct MinorResult {
    MinorOutcome kind = MinorOutcome::AtBounds;
    bool degenerate = false;  ///< a support change at step length zero
};

/// Fallback minor used to escape degenerate stretches: move a single
/// column -- the smallest-index one whose estimate points away from where
/// it sits -- and on a block let that very column enter the support. The
/// smallest-index discipline on both choices cannot revisit a support
/// while the point stands still, so a run of zero-length exchanges always
/// ends.
template <typename T>
inline MinorResult<T> minor_step_single(const StandardLP<T>& lp,
                                        SupportingFeasibleSolution<T>& sfs,
                                        const Vector<T>& e, const SolverOptions<T>& opt) {
    const int N = lp.columns();
    const int m = lp.rows();
    const auto& tol = opt.tol;

    int jmove = -1;
    for (int j = 0; j < N && jmove < 0; ++j) {
        if (sfs.in_basis[j] || lp.lower[j] == lp.upper[j]) continue;
        if (e[j] > tol.optimality && sfs.x[j] > lp.lower[j]) jmove = j;
        else if (e[j] < -tol.optimality && sfs.x[j] < lp.upper[j]) jmove = j;
    }
    if (jmove < 0) return {MinorOutcome::AtBounds, false};
    const T target = e[jmove] > T{} ? lp.lower[jmove] : lp.upper[jmove];
    const T mu = target - sfs.x[jmove];
    Vector<T> avec = matvec(sfs.binv, column_of(lp, jmove));

    T theta = T(1);
    int block_pos = -1;
    for (int i = 0; i < m; ++i) {
        if (abs_of(avec[i]) <= tol.pivot) continue;
        const T d = -avec[i] * mu;  // support response to the unit move
        const int t = sfs.basis[i];
        T step = d > T{} ? (lp.upper[t] - sfs.x[t]) / d : (lp.lower[t] - sfs.x[t]) / d;
        if (step < T{}) step = T{};
        if (step < theta || (step == theta && block_pos >= 0 && t < sfs.basis[block_pos])) {
            theta = step;
            block_pos = i;
        }
    }
    const bool degen = !(theta > T{});
    if (!degen) {
        sfs.x[jmove] += theta * mu;
        for (int i = 0; i < m; ++i)
            if (avec[i] != T{}) sfs.x[sfs.basis[i]] -= theta * avec[i] * mu;
        if (block_pos < 0) {
            sfs.x[jmove] = target;  // arrived: snap off the rounding
            return {MinorOutcome::Stepped, false};
        }
        const int t0 = sfs.basis[block_pos];
        sfs.x[t0] = (-avec[block_pos] * mu) > T{} ? lp.upper[t0] : lp.lower[t0];
    }
    if (block_pos < 0) return {MinorOutcome::Stepped, false};
    pivot_support(lp, sfs, block_pos, jmove, opt);
    return {MinorOutcome::Pivoted, degen};
}

/// One primal step along the full improving direction, with a support
/// change when a support column blocks early. Returns what happened.
template <typename T>
inline MinorResult<T> minor_step(const StandardLP<T>& lp, SupportingFeasibleSolution<T>& sfs,
                                 const Vector<T>& c, const SolverOptions<T>& opt,
                                 bool single_column = false) {
    const int N = lp.columns();
    const int m = lp.rows();
    const auto& tol = opt.tol;
    Vector<T> e = reduced_estimates(lp, sfs, c);
    if (single_column) return minor_step_single(lp, sfs, e, opt);

    // movers: nonbasic columns whose estimate points away from where they sit
    std::vector<int> movers;
    Vector<T> mu(N, T{});
    for (int j = 0; j < N; ++j) {
        if (sfs.in_basis[j] || lp.lower[j] == lp.upper[j]) continue;
        if (e[j] > tol.optimality && sfs.x[j] > lp.lower[j]) {
            mu[j] = lp.lower[j] - sfs.x[j];
            movers.push_back(j);
        } else if (e[j] < -tol.optimality && sfs.x[j] < lp.upper[j]) {
            mu[j] = lp.upper[j] - sfs.x[j];
            movers.push_back(j);
        }
    }
    if (movers.empty()) return {MinorOutcome::AtBounds, false};

    // support response d_B = -B^-1 A mu
    Vector<T> w(m, T{});
    for (int j : movers)
        for (int i = 0; i < m; ++i) w[i] += lp.A(i, j) * mu[j];
    Vector<T> db = matvec(sfs.binv, w);
    for (auto& v : db) v = -v;

    // blocking ratio over the support; theta = 1 reaches every mover's bound
    T theta = T(1);
    int block_pos = -1;
    for (int i = 0; i < m; ++i) {
        const int t = sfs.basis[i];
        T step;
        if (db[i] > tol.pivot)
            step = (lp.upper[t] - sfs.x[t]) / db[i];
        else if (db[i] < -tol.pivot)
            step = (lp.lower[t] - sfs.x[t]) / db[i];
        else
            continue;
        if (step < T{}) step = T{};  // support column already resting on its bound
        if (step < theta || (step == theta && block_pos >= 0 && t < sfs.basis[block_pos])) {
            theta = step;
            block_pos = i;
        }
    }

    const bool degen = !(theta > T{});
    if (!degen) {
        for (int j : movers) sfs.x[j] += theta * mu[j];
        for (int i = 0; i < m; ++i)
            if (db[i] != T{}) sfs.x[sfs.basis[i]] += theta * db[i];
        if (block_pos < 0) {
            // full step: snap movers onto their target bounds exactly
            for (int j : movers)
                sfs.x[j] = e[j] > T{} ? lp.lower[j] : lp.upper[j];
            return {MinorOutcome::Stepped, false};
        }
        // blocked: land the blocking column exactly on its bound
        const int t0 = sfs.basis[block_pos];
        sfs.x[t0] = db[block_pos] > T{} ? lp.upper[t0] : lp.lower[t0];
    }
    if (block_pos < 0) return {MinorOutcome::Stepped, false};

    // Support change. The blocked column t0 rests on one of its bounds; its
    // post-exchange estimate is -E_j0 / alpha_j0, so the entering column is
    // drawn from those whose ratio sign matches the bound (lower needs a
    // nonnegative estimate afterwards, upper a nonpositive one), minimizing
    // |E_j| / |alpha_j| to keep every other estimate on its side of zero.
    //
    // Candidates with a zero estimate would make the exchange a pure
    // relabeling (nothing about the estimates or the point changes), which
    // can ping-pong two such columns through the same position forever, so
    // they are only used when no sign-coherent nonzero-estimate column
    // exists -- and then interior ones first, since those at least hand the
    // next direction a column with room to move.
    const int kappa = db[block_pos] > T{} ? 1 : -1;  // +1: hit upper bound
    Vector<T> rho(m);
    for (int i = 0; i < m; ++i) rho[i] = sfs.binv(block_pos, i);

    int entering = -1;
    T best_ratio{};
    T best_mag{};
    int have_tier = -1;  // 2: sign-coherent, moving estimate; 1: zero estimate, interior;
                         // 0: zero estimate at a bound; -1 fallback: wrong sign
    auto consider = [&](int j, const T& alpha, int tier) {
        T ratio = abs_of(e[j]) / abs_of(alpha);
        T mag = abs_of(e[j]);
        bool better;
        if (entering < 0)
            better = true;
        else if (tier != have_tier)
            better = tier > have_tier;
        else if (ratio != best_ratio)
            better = ratio < best_ratio;
        else if (mag != best_mag)
            better = mag > best_mag;
        else
            better = j < entering;
        if (better) {
            entering = j;
            best_ratio = ratio;
            best_mag = mag;
            have_tier = tier;
        }
    };
    for (int j = 0; j < N; ++j) {
        if (sfs.in_basis[j] || lp.lower[j] == lp.upper[j]) continue;
        T alpha{};
        for (int i = 0; i < m; ++i) alpha += rho[i] * lp.A(i, j);
        if (abs_of(alpha) <= tol.pivot) continue;
        const bool sign_valid = kappa > 0 ? !(e[j] * alpha < T{}) : !(e[j] * alpha > T{});
        int tier;
        if (!sign_valid)
            tier = -1;
        else if (abs_of(e[j]) > tol.optimality)
            tier = 2;
        else
            tier = (sfs.x[j] > lp.lower[j] && sfs.x[j] < lp.upper[j]) ? 1 : 0;
        consider(j, alpha, tier);
    }
    if (entering < 0) throw InternalError("no replacement column for blocked support column");
    pivot_support(lp, sfs, block_pos, entering, opt);
    return {MinorOutcome::Pivoted, degen};
}

}  // namespace detail

/// Feasibility check of a supporting solution: equality rows within
/// tol.feasibility, box satisfied within the same allowance.
template <typename T>
inline bool sfs_is_feasible(const StandardLP<T>& lp, const SupportingFeasibleSolution<T>& sfs,
                            const Tolerances<T>& tol = Tolerances<T>::defaults()) {
    Vector<T> ax = matvec(lp.A, sfs.x);
    for (int i = 0; i < lp.rows(); ++i)
        if (abs_of(ax[i] - lp.b[i]) > tol.feasibility) return false;
    for (int j = 0; j < lp.columns(); ++j)
        if (sfs.x[j] < lp.lower[j] - tol.feasibility ||
            sfs.x[j] > lp.upper[j] + tol.feasibility)
            return false;
    return true;
}

/// Outcome of a major iteration.
template <typename T>
struct IterateResult {
    SupportingFeasibleSolution<T> sfs;
    T beta{};            ///< suboptimality after the iteration
    int pivots = 0;      ///< support changes consumed
    bool improved = false;  ///< beta fell strictly below its entry value
};

/// One major iteration: run primal steps / support changes until the
/// suboptimality bound drops strictly below its entry value (or reaches
/// epsilon, or the pivot budget runs out). The objective value never
/// decreases along the way.
template <typename T>
inline IterateResult<T> iterate(const StandardLP<T>& lp, SupportingFeasibleSolution<T> sfs,
                                const Vector<T>& c, const SolverOptions<T>& opt,
                                int pivot_budget = -1) {
    const auto& tol = opt.tol;
    IterateResult<T> out;
    Vector<T> e = reduced_estimates(lp, sfs, c);
    const T beta_entry = detail::beta_from_estimates(lp, sfs, e, tol);
    T beta = beta_entry;
    if (pivot_budget < 0) pivot_budget = 10 * (lp.columns() + lp.rows());
    // A streak of zero-length exchanges switches the minors to the
    // single-column fallback until the point moves again.
    const int single_after = lp.rows() + 2;
    int degen_streak = 0;
    while (beta > tol.optimality && beta > opt.epsilon && !(beta < beta_entry)) {
        auto what = detail::minor_step(lp, sfs, c, opt, degen_streak >= single_after);
        if (what.kind == detail::MinorOutcome::AtBounds) break;
        if (what.kind == detail::MinorOutcome::Pivoted) {
            ++out.pivots;
            degen_streak = what.degenerate ? degen_streak + 1 : 0;
        } else {
            degen_streak = 0;
        }
        e = reduced_estimates(lp, sfs, c);
        beta = detail::beta_from_estimates(lp, sfs, e, tol);
        if (out.pivots >= pivot_budget) break;
    }
    out.beta = beta;
    out.improved = beta < beta_entry;
    out.sfs = std::move(sfs);
    return out;
}

/// Result of the feasibility phase: either a supporting feasible solution
/// or the residual infeasibility that could not be removed. When the pivot
/// budget ran out before the auxiliary problem reached its optimum the
/// residual is inconclusive and `budget_exhausted` is set.
template <typename T>
struct InitialBasisResult {
    std::optional<SupportingFeasibleSolution<T>> sfs;
    T infeasibility{};
    bool budget_exhausted = false;
};

/// Construct a starting supporting feasible solution. Structural columns
/// rest on their bound nearest zero; slacks absorb the residual. Rows whose
/// slack cannot absorb it get an auxiliary column, and the auxiliary mass
/// is driven to zero by the solver itself (objective: minus the sum of
/// violations). Residual mass above tol.feasibility means the instance is
/// infeasible.
template <typename T>
inline InitialBasisResult<T> initial_sfs(const StandardLP<T>& lp, const SolverOptions<T>& opt) {
    const int N = lp.columns();
    const int m = lp.rows();
    const int n = lp.n_structural;
    const auto& tol = opt.tol;
    for (int j = 0; j < N; ++j)
        if (lp.lower[j] > lp.upper[j])
            throw std::invalid_argument("crossed bounds at column " + std::to_string(j + 1));

    SupportingFeasibleSolution<T> sfs;
    sfs.x.assign(N, T{});
    for (int j = 0; j < n; ++j)
        sfs.x[j] = abs_of(lp.lower[j]) <= abs_of(lp.upper[j]) ? lp.lower[j] : lp.upper[j];

    Vector<T> resid = lp.b;
    for (int j = 0; j < n; ++j) {
        if (sfs.x[j] == T{}) continue;
        for (int i = 0; i < m; ++i) resid[i] -= lp.A(i, j) * sfs.x[j];
    }

    std::vector<int> violated;
    for (int i = 0; i < m; ++i) {
        const int s = n + i;
        if (resid[i] < lp.lower[s] || resid[i] > lp.upper[s]) violated.push_back(i);
    }

    if (violated.empty()) {
        for (int i = 0; i < m; ++i) sfs.x[n + i] = resid[i];
        sfs.basis.resize(m);
        for (int i = 0; i < m; ++i) sfs.basis[i] = n + i;
        sfs.in_basis.assign(N, 0);
        for (int i = 0; i < m; ++i) sfs.in_basis[n + i] = 1;
        sfs.binv = Matrix<T>::identity(m);
        return {std::move(sfs), T{}};
    }

    // Auxiliary problem: one extra column per unabsorbable row, sized and
    // signed to restore equality, priced -1 so the solver minimizes the
    // total violation.
    StandardLP<T> aux = lp;
    const int V = static_cast<int>(violated.size());
    aux.A = Matrix<T>(m, N + V);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < N; ++j) aux.A(i, j) = lp.A(i, j);
    aux.c.assign(N + V, T{});
    aux.lower.resize(N + V);
    aux.upper.resize(N + V);
    for (int j = 0; j < N; ++j) {
        aux.lower[j] = lp.lower[j];
        aux.upper[j] = lp.upper[j];
    }

    SupportingFeasibleSolution<T> start;
    start.x = sfs.x;
    start.x.resize(N + V, T{});
    start.basis.resize(m);
    start.in_basis.assign(N + V, 0);
    start.binv = Matrix<T>(m, m);
    for (int i = 0; i < m; ++i) {
        start.basis[i] = n + i;  // slack by default
        start.binv(i, i) = T(1);
    }
    for (int v = 0; v < V; ++v) {
        const int i = violated[v];
        const int s = n + i;
        const T clamped = resid[i] < lp.lower[s] ? lp.lower[s] : lp.upper[s];
        const T gap = resid[i] - clamped;        // nonzero by construction
        const int col = N + v;
        const T sigma = gap > T{} ? T(1) : T(-1);
        aux.A(i, col) = sigma;
        aux.c[col] = T(-1);
        aux.lower[col] = T{};
        aux.upper[col] = abs_of(gap);
        start.x[s] = clamped;
        start.x[col] = abs_of(gap);
        start.basis[i] = col;
        start.binv(i, i) = sigma;  // diagonal +-1 inverts itself
        start.in_basis[col] = 1;
    }
    for (int i = 0; i < m; ++i) {
        if (start.basis[i] == n + i) {
            start.x[n + i] = resid[i];
            start.in_basis[n + i] = 1;
        }
    }

    // Drive the violation out with the ordinary machinery.
    SolverOptions<T> phase_opt = opt;
    phase_opt.epsilon = T{};
    int budget = 10 * (N + V + m);
    T phase_beta = T(1);
    while (budget > 0 && phase_beta > tol.optimality) {
        auto r = iterate(aux, std::move(start), aux.c, phase_opt, budget);
        start = std::move(r.sfs);
        budget -= std::max(r.pivots, 1);
        phase_beta = r.beta;
        // the bound already proves some violation must remain: infeasible
        T viol{};
        for (int v = 0; v < V; ++v) viol += start.x[N + v];
        if (viol - phase_beta > tol.feasibility) return {std::nullopt, viol, false};
    }

    T infeas{};
    for (int v = 0; v < V; ++v) infeas += start.x[N + v];
    if (infeas > tol.feasibility)
        return {std::nullopt, infeas, phase_beta > tol.optimality};

    // Swap any auxiliary column still sitting in the support for an
    // original one (a slack with a nonzero entry in that inverse row always
    // exists), then drop the auxiliary block.
    for (int pos = 0; pos < m; ++pos) {
        if (start.basis[pos] < N) continue;
        int replacement = -1;
        for (int j = 0; j < N && replacement < 0; ++j) {
            if (start.in_basis[j]) continue;
            T alpha{};
            for (int i = 0; i < m; ++i) alpha += start.binv(pos, i) * aux.A(i, j);
            if (abs_of(alpha) > tol.pivot) replacement = j;
        }
        if (replacement < 0)
            throw InternalError("feasibility phase left an unremovable auxiliary column");
        detail::pivot_support(aux, start, pos, replacement, phase_opt);
    }

    sfs.x.assign(start.x.begin(), start.x.begin() + N);
    sfs.basis = start.basis;
    sfs.in_basis.assign(start.in_basis.begin(), start.in_basis.begin() + N);
    sfs.binv = std::move(start.binv);
    detail::refactor(lp, sfs, tol);  // drop auxiliary drift, rebuild exactly
    return {std::move(sfs), T{}};
}

/// Full solve: feasibility phase, then major iterations until the
/// suboptimality bound reaches epsilon (Optimal when it reaches the zero
/// tolerance). The trace pairs the objective and beta at each major
/// iteration plus the final state.
template <typename T>
inline SolveResult<T> solve(const StandardLP<T>& lp, SolverOptions<T> opt = {}) {
    const int N = lp.columns();
    const int m = lp.rows();
    if (opt.max_pivots <= 0) opt.max_pivots = 10 * (N + m);
    const auto& tol = opt.tol;

    SolveResult<T> res;
    auto init = initial_sfs(lp, opt);
    if (!init.sfs) {
        res.status = init.budget_exhausted ? SolveStatus::IterationLimit
                                           : SolveStatus::Infeasible;
        res.beta = init.infeasibility;
        return res;
    }
    SupportingFeasibleSolution<T> sfs = std::move(*init.sfs);

    int pivots = 0;
    int majors = 0;
    T beta = detail::beta_from_estimates(lp, sfs, reduced_estimates(lp, sfs, lp.c), tol);
    while (true) {
        if (opt.record_trace) res.trace.push_back({lp.objective_value(sfs.x), beta});
        if (beta <= tol.optimality) {
            res.status = SolveStatus::Optimal;
            break;
        }
        if (beta <= opt.epsilon) {
            res.status = SolveStatus::EpsilonOptimal;
            break;
        }
        if (pivots >= opt.max_pivots) {
            res.status = SolveStatus::IterationLimit;
            break;
        }
        auto r = iterate(lp, std::move(sfs), lp.c, opt, opt.max_pivots - pivots);
        sfs = std::move(r.sfs);
        pivots += r.pivots;
        ++majors;
        if (!r.improved && r.beta > tol.optimality && r.beta > opt.epsilon) {
            beta = r.beta;
            res.status = SolveStatus::IterationLimit;
            if (opt.record_trace) res.trace.push_back({lp.objective_value(sfs.x), beta});
            break;
        }
        beta = r.beta;
    }

    // Certificate of unboundedness under the capped-infinity convention: a
    // column with no real upper bound rests on the cap while its estimate
    // still pays to increase it.
    if (res.status == SolveStatus::Optimal || res.status == SolveStatus::EpsilonOptimal) {
        Vector<T> e = reduced_estimates(lp, sfs, lp.c);
        for (int j = 0; j < N; ++j) {
            if (sfs.in_basis[j] || lp.upper[j] < lp.bound_cap) continue;
            if (e[j] < -tol.optimality && sfs.x[j] >= lp.upper[j] - tol.feasibility) {
                res.status = SolveStatus::Unbounded;
                break;
            }
        }
    }

    res.x = sfs.x;
    res.objective = lp.objective_value(sfs.x);
    res.beta = beta;
    res.iterations = majors;
    res.pivots = pivots;
    res.support = std::move(sfs);
    return res;
}

/// Convenience: standardize a box-form LP and solve it; the returned point
/// is truncated to the structural columns.
template <typename T>
inline SolveResult<T> solve(const BoundedLP<T>& lp, SolverOptions<T> opt = {},
                            const T& bound_cap = default_bound_cap<T>()) {
    auto res = solve(to_standard_form(lp, bound_cap), std::move(opt));
    if (!res.x.empty()) res.x.resize(lp.variables());
    return res;
}

}  // namespace mllp
