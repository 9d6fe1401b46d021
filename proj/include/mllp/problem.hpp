#pragma once

// Problem model for P-level mono-objective linear programs.
//
// A MultilevelProblem holds P objective rows over one shared variable
// vector, partitioned by level: level i controls n_i consecutive
// components. All structural variables are nonnegative and all m joint
// constraints are of <= type. Levels, positions and constraint indices are
// 1-based on this public surface; flat_index maps (level, position) onto
// the shared vector.

#include "mllp/dense.hpp"
#include "mllp/numeric.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mllp {

/// 1-based (level, position) coordinate of a structural variable.
struct LevelIndex {
    int level = 0;
    int position = 0;

    bool operator==(const LevelIndex&) const = default;
};

inline std::string to_string(const LevelIndex& ix) {
    return "(" + std::to_string(ix.level) + "," + std::to_string(ix.position) + ")";
}

/// Flatten (level, position) to a 1-based index into the shared variable
/// vector: position j of level i lands after all variables of the levels
/// before i. Bijective onto 1..n for valid coordinates; throws otherwise.
inline int flat_index(const std::vector<int>& n_sizes, const LevelIndex& ix) {
    if (ix.level < 1 || ix.level > static_cast<int>(n_sizes.size()))
        throw std::out_of_range("flat_index: level " + std::to_string(ix.level) +
                                " outside 1.." + std::to_string(n_sizes.size()));
    if (ix.position < 1 || ix.position > n_sizes[ix.level - 1])
        throw std::out_of_range("flat_index: position " + std::to_string(ix.position) +
                                " outside 1.." + std::to_string(n_sizes[ix.level - 1]) +
                                " at level " + std::to_string(ix.level));
    int offset = 0;
    for (int i = 0; i < ix.level - 1; ++i) offset += n_sizes[i];
    return offset + ix.position;
}

/// Inverse of flat_index (1-based flat index -> (level, position)).
inline LevelIndex unflatten_index(const std::vector<int>& n_sizes, int flat) {
    int total = std::accumulate(n_sizes.begin(), n_sizes.end(), 0);
    if (flat < 1 || flat > total)
        throw std::out_of_range("unflatten_index: " + std::to_string(flat) + " outside 1.." +
                                std::to_string(total));
    int level = 1;
    int rest = flat;
    while (rest > n_sizes[level - 1]) {
        rest -= n_sizes[level - 1];
        ++level;
    }
    return {level, rest};
}

/// P-level problem: maximize each level's objective in turn over the shared
/// polyhedron { x : A x <= b, x >= 0 }.
template <typename T>
struct MultilevelProblem {
    std::vector<int> n_sizes;  ///< per-level variable counts, size P
    Matrix<T> C;               ///< P x n objective coefficient rows
    Matrix<T> A;               ///< m x n constraint matrix
    Vector<T> b;               ///< m right-hand sides

    int levels() const { return static_cast<int>(n_sizes.size()); }
    int variables() const { return std::accumulate(n_sizes.begin(), n_sizes.end(), 0); }
    int constraints() const { return static_cast<int>(b.size()); }

    void validate() const {
        if (levels() < 2) throw std::invalid_argument("problem needs at least 2 levels");
        for (int s : n_sizes)
            if (s < 1) throw std::invalid_argument("each level must own at least one variable");
        const auto n = static_cast<std::size_t>(variables());
        if (C.rows() != static_cast<std::size_t>(levels()) || C.cols() != n)
            throw std::invalid_argument("objective matrix shape mismatch");
        if (A.cols() != n || A.rows() != b.size())
            throw std::invalid_argument("constraint shape mismatch");
        if (b.empty()) throw std::invalid_argument("at least one joint constraint required");
    }
};

/// Box-bounded LP: maximize c^t x subject to A x <= b, l <= x <= u.
template <typename T>
struct BoundedLP {
    Vector<T> c;
    Matrix<T> A;
    Vector<T> b;
    Vector<T> lower;
    Vector<T> upper;

    int variables() const { return static_cast<int>(c.size()); }
    int rows() const { return static_cast<int>(b.size()); }

    void validate() const {
        const auto n = c.size();
        if (A.cols() != n || lower.size() != n || upper.size() != n || A.rows() != b.size())
            throw std::invalid_argument("bounded LP shape mismatch");
        for (std::size_t j = 0; j < n; ++j)
            if (lower[j] > upper[j])
                throw std::invalid_argument("crossed bounds at column " + std::to_string(j + 1));
    }
};

/// Equality-form LP over N = n + m columns: maximize c^t x subject to
/// A_eq x = b with box bounds. Columns n..N-1 are the slacks of the
/// original <= rows (identity block), each bounded [0, cap].
template <typename T>
struct StandardLP {
    Vector<T> c;    ///< length N, zero on slack columns
    Matrix<T> A;    ///< m x N, trailing m columns form the identity
    Vector<T> b;
    Vector<T> lower;
    Vector<T> upper;
    int n_structural = 0;
    T bound_cap{};  ///< the finite stand-in used for absent upper bounds

    int columns() const { return static_cast<int>(c.size()); }
    int rows() const { return static_cast<int>(b.size()); }

    /// Objective restricted to whatever part of x is supplied (slack
    /// coefficients are zero, so structural prefixes evaluate identically).
    T objective_value(const Vector<T>& x) const {
        T s{};
        for (std::size_t j = 0; j < x.size() && j < c.size(); ++j) s += c[j] * x[j];
        return s;
    }
};

/// The level-p LP solved independently of the other levels:
/// maximize row p of C over { A x <= b, 0 <= x <= cap }.
template <typename T>
inline BoundedLP<T> build_level_lp(const MultilevelProblem<T>& mlp, int p,
                                   const T& bound_cap = default_bound_cap<T>()) {
    mlp.validate();
    if (p < 1 || p > mlp.levels())
        throw std::out_of_range("level " + std::to_string(p) + " outside 1.." +
                                std::to_string(mlp.levels()));
    BoundedLP<T> lp;
    const int n = mlp.variables();
    lp.c.resize(n);
    for (int j = 0; j < n; ++j) lp.c[j] = mlp.C(p - 1, j);
    lp.A = mlp.A;
    lp.b = mlp.b;
    lp.lower.assign(n, T{});
    lp.upper.assign(n, bound_cap);
    return lp;
}

/// Append one slack column per row and convert to equality form. The
/// original box is kept verbatim; slacks get [0, cap].
template <typename T>
inline StandardLP<T> to_standard_form(const BoundedLP<T>& lp,
                                      const T& bound_cap = default_bound_cap<T>()) {
    lp.validate();
    const int n = lp.variables();
    const int m = lp.rows();
    StandardLP<T> std_lp;
    std_lp.n_structural = n;
    std_lp.bound_cap = bound_cap;
    std_lp.c = lp.c;
    std_lp.c.resize(n + m, T{});
    std_lp.b = lp.b;
    std_lp.lower = lp.lower;
    std_lp.lower.resize(n + m, T{});
    std_lp.upper = lp.upper;
    std_lp.upper.resize(n + m, bound_cap);
    std_lp.A = Matrix<T>(m, n + m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) std_lp.A(i, j) = lp.A(i, j);
        std_lp.A(i, n + i) = T(1);
    }
    return std_lp;
}

/// Recover the box-form LP from an equality form produced by
/// to_standard_form (drops the slack block).
template <typename T>
inline BoundedLP<T> from_standard_form(const StandardLP<T>& std_lp) {
    BoundedLP<T> lp;
    const int n = std_lp.n_structural;
    const int m = std_lp.rows();
    lp.c.assign(std_lp.c.begin(), std_lp.c.begin() + n);
    lp.b = std_lp.b;
    lp.lower.assign(std_lp.lower.begin(), std_lp.lower.begin() + n);
    lp.upper.assign(std_lp.upper.begin(), std_lp.upper.begin() + n);
    lp.A = Matrix<T>(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) lp.A(i, j) = std_lp.A(i, j);
    return lp;
}

/// All P objective values at a structural point.
template <typename T>
inline Vector<T> evaluate_objectives(const MultilevelProblem<T>& mlp, const Vector<T>& x) {
    if (x.size() != static_cast<std::size_t>(mlp.variables()))
        throw std::invalid_argument("evaluate_objectives: point has " + std::to_string(x.size()) +
                                    " components, problem has " +
                                    std::to_string(mlp.variables()));
    Vector<T> f(mlp.levels(), T{});
    for (int p = 0; p < mlp.levels(); ++p) {
        T s{};
        for (int j = 0; j < mlp.variables(); ++j) s += mlp.C(p, j) * x[j];
        f[p] = s;
    }
    return f;
}

/// Row/box feasibility of a structural point for the shared polyhedron of a
/// bounded LP; returns the largest violation (zero when feasible).
template <typename T>
inline T feasibility_violation(const BoundedLP<T>& lp, const Vector<T>& x) {
    T worst{};
    Vector<T> ax = matvec(lp.A, x);
    for (int i = 0; i < lp.rows(); ++i)
        if (ax[i] - lp.b[i] > worst) worst = ax[i] - lp.b[i];
    for (int j = 0; j < lp.variables(); ++j) {
        if (lp.lower[j] - x[j] > worst) worst = lp.lower[j] - x[j];
        if (x[j] - lp.upper[j] > worst) worst = x[j] - lp.upper[j];
    }
    return worst;
}

}  // namespace mllp
