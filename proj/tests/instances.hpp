#pragma once

// Shared fixtures for the test suites: the worked three-level sample
// instance whose intermediate values are pinned throughout the tests, plus
// a deterministic random-LP generator for solver/oracle cross-checks.

#include "mllp/problem.hpp"

#include <random>
#include <vector>

namespace fixtures {

// Three levels over four structural variables: level 1 owns (x1, x2),
// level 2 owns x3, level 3 owns x4. Seven joint <= rows. Solved level by
// level this instance has optima 6, 12 and 6, attained at
// (0, 0, 2, 2/3), (2, 0, 0, 0) and (1, 0, 3, 0) respectively.
template <typename T>
mllp::MultilevelProblem<T> three_level_sample() {
    mllp::MultilevelProblem<T> mlp;
    mlp.n_sizes = {2, 1, 1};
    const int objective[3][4] = {
        {-5, 1, 2, 3},
        {6, 2, -3, 1},
        {0, -1, 2, 3},
    };
    const int rows[7][4] = {
        {3, 2, 1, 2},  {1, 3, -2, -1}, {-2, -5, -2, 0}, {-1, 4, 1, 0},
        {1, -1, 1, 2}, {1, 0, 1, 3},   {0, 0, 0, 1},
    };
    const int rhs[7] = {6, 3, -2, 2, 5, 4, 2};
    mlp.C = mllp::Matrix<T>(3, 4);
    for (int p = 0; p < 3; ++p)
        for (int j = 0; j < 4; ++j) mlp.C(p, j) = T(objective[p][j]);
    mlp.A = mllp::Matrix<T>(7, 4);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 4; ++j) mlp.A(i, j) = T(rows[i][j]);
    mlp.b.resize(7);
    for (int i = 0; i < 7; ++i) mlp.b[i] = T(rhs[i]);
    return mlp;
}

/// The level-by-level optima of three_level_sample (x4 = 2/3 needs exact
/// division, hence the function instead of an array).
template <typename T>
std::vector<mllp::Vector<T>> three_level_sample_optima() {
    return {
        {T(0), T(0), T(2), T(2) / T(3)},
        {T(2), T(0), T(0), T(0)},
        {T(1), T(0), T(3), T(0)},
    };
}

/// Random box-bounded LP with small integer data: entries of c, A, b drawn
/// from [-9, 9], boxes with integer endpoints straddling or touching zero.
/// Feasibility is not guaranteed; callers compare solver and oracle verdicts
/// either way.
inline mllp::BoundedLP<double> random_bounded_lp(std::mt19937_64& rng, int max_n = 6,
                                                 int max_m = 6) {
    std::uniform_int_distribution<int> size_n(1, max_n);
    std::uniform_int_distribution<int> size_m(1, max_m);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> lo(-4, 0);
    std::uniform_int_distribution<int> width(0, 6);
    const int n = size_n(rng);
    const int m = size_m(rng);
    mllp::BoundedLP<double> lp;
    lp.c.resize(n);
    lp.lower.resize(n);
    lp.upper.resize(n);
    for (int j = 0; j < n; ++j) {
        lp.c[j] = coeff(rng);
        lp.lower[j] = lo(rng);
        lp.upper[j] = lp.lower[j] + width(rng);
    }
    lp.A = mllp::Matrix<double>(m, n);
    lp.b.resize(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) lp.A(i, j) = coeff(rng);
        lp.b[i] = coeff(rng);
    }
    return lp;
}

}  // namespace fixtures
