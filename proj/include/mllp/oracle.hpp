#pragma once

// Brute-force LP oracle: enumerate every basic solution of an equality-form
// problem (choice of m basic columns x assignment of the remaining columns
// to one of their finite bounds), keep the feasible ones, and take the best
// objective. Exponential and proud of it -- this is the reference the
// iterative solver is measured against, so it shares no machinery with it
// beyond the dense kernels.

#include "mllp/dense.hpp"
#include "mllp/numeric.hpp"
#include "mllp/problem.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mllp {

enum class OracleStatus {
    Optimal,
    Infeasible,  ///< no basic solution satisfies the bounds
};

template <typename T>
struct OracleResult {
    OracleStatus status = OracleStatus::Infeasible;
    T value{};                            ///< best objective over feasible candidates
    std::vector<Vector<T>> vertices;      ///< all distinct maximizers found
};

namespace detail {

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        if (r > (std::uint64_t(1) << 62)) break;  // beyond any sane cap
    }
    return r;
}

template <typename T>
inline bool nearly_equal_point(const Vector<T>& a, const Vector<T>& b, const T& tol) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (abs_of(a[i] - b[i]) > tol) return false;
    return true;
}

}  // namespace detail

/// Every feasible basic solution of the equality system: for each set of m
/// columns whose submatrix is nonsingular, each remaining column is pinned
/// to one of its finite bounds and the basic components are solved for.
/// Columns whose upper bound sits at the cap are only pinned low (the cap
/// models +infinity, which no vertex attains); fixed columns (l == u)
/// contribute a single assignment.
///
/// Throws when C(N, m) exceeds `combination_cap`.
template <typename T>
inline std::vector<Vector<T>> enumerate_basic_solutions(
    const StandardLP<T>& lp, const Tolerances<T>& tol = Tolerances<T>::defaults(),
    std::uint64_t combination_cap = 1000000) {
    const int N = lp.columns();
    const int m = lp.rows();
    if (m > N) throw std::invalid_argument("more rows than columns");
    if (detail::binomial(N, m) > combination_cap)
        throw std::length_error("enumeration cap exceeded: C(" + std::to_string(N) + "," +
                                std::to_string(m) + ") > " + std::to_string(combination_cap));

    std::vector<Vector<T>> out;
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = i;

    const auto capped = [&](int j) { return lp.upper[j] >= lp.bound_cap; };

    // iterate over all m-subsets of {0..N-1} in lexicographic order
    while (true) {
        Matrix<T> B(m, m);
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) B(i, k) = lp.A(i, basis[k]);
        Matrix<T> Binv;
        if (invert(B, Binv, tol.pivot)) {
            std::vector<int> nonbasic;
            nonbasic.reserve(N - m);
            std::vector<char> is_basic(N, 0);
            for (int k : basis) is_basic[k] = 1;
            for (int j = 0; j < N; ++j)
                if (!is_basic[j]) nonbasic.push_back(j);

            // which nonbasic columns genuinely have two bounds to try
            std::vector<int> two_sided;
            for (int j : nonbasic)
                if (!capped(j) && lp.upper[j] != lp.lower[j]) two_sided.push_back(j);

            Vector<T> x(N, T{});
            for (int j : nonbasic) x[j] = lp.lower[j];

            const std::uint64_t patterns = std::uint64_t(1) << two_sided.size();
            for (std::uint64_t mask = 0; mask < patterns; ++mask) {
                for (std::size_t t = 0; t < two_sided.size(); ++t)
                    x[two_sided[t]] = (mask >> t) & 1 ? lp.upper[two_sided[t]]
                                                      : lp.lower[two_sided[t]];
                Vector<T> rhs = lp.b;
                for (int j : nonbasic) {
                    if (x[j] == T{}) continue;
                    for (int i = 0; i < m; ++i) rhs[i] -= lp.A(i, j) * x[j];
                }
                Vector<T> xb = matvec(Binv, rhs);
                bool ok = true;
                for (int i = 0; i < m; ++i) {
                    const int col = basis[i];
                    if (xb[i] < lp.lower[col] - tol.feasibility ||
                        xb[i] > lp.upper[col] + tol.feasibility) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                for (int i = 0; i < m; ++i) x[basis[i]] = xb[i];
                out.push_back(x);
                for (int i = 0; i < m; ++i) x[basis[i]] = T{};
            }
        }
        // next subset
        int i = m - 1;
        while (i >= 0 && basis[i] == N - m + i) --i;
        if (i < 0) break;
        ++basis[i];
        for (int k = i + 1; k < m; ++k) basis[k] = basis[k - 1] + 1;
    }
    return out;
}

/// Exhaustive maximum of the equality-form LP over its basic solutions.
/// For bounded feasible regions this is the true optimum; candidate points
/// within `tol.optimality` of the best value are all reported (duplicates
/// merged within feasibility tolerance).
template <typename T>
inline OracleResult<T> oracle_solve(const StandardLP<T>& lp,
                                    const Tolerances<T>& tol = Tolerances<T>::defaults(),
                                    std::uint64_t combination_cap = 1000000) {
    OracleResult<T> res;
    auto candidates = enumerate_basic_solutions(lp, tol, combination_cap);
    if (candidates.empty()) return res;

    res.status = OracleStatus::Optimal;
    bool first = true;
    for (const auto& x : candidates) {
        T v = lp.objective_value(x);
        if (first || v > res.value) {
            res.value = v;
            first = false;
        }
    }
    for (const auto& x : candidates) {
        if (abs_of(lp.objective_value(x) - res.value) > tol.optimality) continue;
        bool dup = false;
        for (const auto& seen : res.vertices)
            if (detail::nearly_equal_point(x, seen, tol.feasibility)) {
                dup = true;
                break;
            }
        if (!dup) res.vertices.push_back(x);
    }
    return res;
}

/// Convenience: oracle on a box-form LP (standardizes internally).
template <typename T>
inline OracleResult<T> oracle_solve(const BoundedLP<T>& lp,
                                    const Tolerances<T>& tol = Tolerances<T>::defaults(),
                                    std::uint64_t combination_cap = 1000000,
                                    const T& bound_cap = default_bound_cap<T>()) {
    return oracle_solve(to_standard_form(lp, bound_cap), tol, combination_cap);
}

}  // namespace mllp
