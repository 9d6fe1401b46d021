#include <catch2/catch_amalgamated.hpp>

#include "mllp/adaptive.hpp"
#include "mllp/oracle.hpp"
#include "mllp/problem.hpp"

#include "instances.hpp"

#include <random>

using namespace mllp;

namespace {

// maximize x over { x + s = 1, x in [0,1], s in [0,cap] }
template <typename T>
StandardLP<T> one_var_segment() {
    BoundedLP<T> lp;
    lp.c = {T(1)};
    lp.A = Matrix<T>(1, 1);
    lp.A(0, 0) = T(1);
    lp.b = {T(1)};
    lp.lower = {T(0)};
    lp.upper = {T(1)};
    return to_standard_form(lp);
}

template <typename T>
SupportingFeasibleSolution<T> slack_supported_point(const StandardLP<T>& lp, Vector<T> x) {
    SupportingFeasibleSolution<T> sfs;
    const int m = lp.rows();
    const int N = lp.columns();
    sfs.x = std::move(x);
    sfs.basis.resize(m);
    sfs.in_basis.assign(N, 0);
    for (int i = 0; i < m; ++i) {
        sfs.basis[i] = lp.n_structural + i;
        sfs.in_basis[lp.n_structural + i] = 1;
    }
    sfs.binv = Matrix<T>::identity(m);
    return sfs;
}

double oracle_gap(const OracleResult<double>& best, double objective) {
    return best.value - objective;
}

}  // namespace

TEST_CASE("initial point uses the slack support when the residual fits") {
    BoundedLP<double> lp;
    lp.c = {1.0, 0.0};
    lp.A = Matrix<double>(2, 2);
    lp.A(0, 0) = 1.0;
    lp.A(0, 1) = 1.0;
    lp.A(1, 0) = -1.0;
    lp.A(1, 1) = 2.0;
    lp.b = {4.0, 3.0};
    lp.lower = {0.0, 0.0};
    lp.upper = {2.0, 2.0};
    auto std_lp = to_standard_form(lp);
    auto init = initial_sfs(std_lp, SolverOptions<double>{});
    REQUIRE(init.sfs.has_value());
    REQUIRE(init.infeasibility == 0.0);
    // both residuals are nonnegative, so the slack columns carry the point
    REQUIRE(init.sfs->basis == std::vector<int>{2, 3});
    REQUIRE(init.sfs->binv == Matrix<double>::identity(2));
    REQUIRE(init.sfs->x == Vector<double>{0.0, 0.0, 4.0, 3.0});
    REQUIRE(sfs_is_feasible(std_lp, *init.sfs));
}

TEST_CASE("initial point picks the bound nearest zero for each column") {
    BoundedLP<double> lp;
    lp.c = {0.0, 0.0, 0.0};
    lp.A = Matrix<double>(1, 3);
    lp.A(0, 0) = 1.0;
    lp.A(0, 1) = 1.0;
    lp.A(0, 2) = 1.0;
    lp.b = {50.0};
    lp.lower = {2.0, -8.0, -3.0};
    lp.upper = {9.0, -1.0, 5.0};
    auto init = initial_sfs(to_standard_form(lp), SolverOptions<double>{});
    REQUIRE(init.sfs.has_value());
    REQUIRE(init.sfs->x[0] == 2.0);   // interval right of zero: lower end
    REQUIRE(init.sfs->x[1] == -1.0);  // interval left of zero: upper end
    REQUIRE(init.sfs->x[2] == -3.0);  // straddling zero: smaller magnitude
}

TEST_CASE("negative right-hand sides route through the auxiliary phase") {
    auto mlp = fixtures::three_level_sample<double>();
    auto std_lp = to_standard_form(build_level_lp(mlp, 1));
    auto init = initial_sfs(std_lp, SolverOptions<double>{});
    REQUIRE(init.sfs.has_value());
    REQUIRE(init.infeasibility == 0.0);
    REQUIRE(sfs_is_feasible(std_lp, *init.sfs));
    // every support column is an original one and the carried inverse is
    // consistent with the support submatrix
    const int m = std_lp.rows();
    for (int i = 0; i < m; ++i) REQUIRE(init.sfs->basis[i] < std_lp.columns());
    Matrix<double> B(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) B(i, k) = std_lp.A(i, init.sfs->basis[k]);
    Matrix<double> prod(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            double s = 0;
            for (int r = 0; r < m; ++r) s += init.sfs->binv(i, r) * B(r, k);
            prod(i, k) = s;
        }
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            REQUIRE_THAT(prod(i, k), Catch::Matchers::WithinAbs(i == k ? 1.0 : 0.0, 1e-9));
}

TEST_CASE("an empty polyhedron is reported, not solved around") {
    BoundedLP<double> lp;
    lp.c = {1.0};
    lp.A = Matrix<double>(1, 1);
    lp.A(0, 0) = 1.0;
    lp.b = {-1.0};  // x <= -1 clashes with x >= 0
    lp.lower = {0.0};
    lp.upper = {10.0};
    auto res = solve(lp);
    REQUIRE(res.status == SolveStatus::Infeasible);
    REQUIRE(res.beta >= 1.0 - 1e-9);  // at least one unit of violation remains

    auto init = initial_sfs(to_standard_form(lp), SolverOptions<double>{});
    REQUIRE_FALSE(init.sfs.has_value());
    REQUIRE(init.infeasibility >= 1.0 - 1e-9);
    REQUIRE_FALSE(init.budget_exhausted);
}

TEST_CASE("estimates vanish on the support and with a zero objective") {
    auto std_lp = one_var_segment<double>();
    auto sfs = slack_supported_point(std_lp, {0.0, 1.0});

    Vector<double> zero = {0.0, 0.0};
    auto e0 = reduced_estimates(std_lp, sfs, zero);
    REQUIRE(e0 == Vector<double>{0.0, 0.0});

    auto e = reduced_estimates(std_lp, sfs, std_lp.c);
    REQUIRE(e[1] == 0.0);   // support column
    REQUIRE(e[0] == -1.0);  // wants to grow toward its upper bound
}

TEST_CASE("suboptimality halves when the point moves halfway to its bound") {
    auto std_lp = one_var_segment<Rational>();
    auto at0 = slack_supported_point<Rational>(std_lp, {Rational(0), Rational(1)});
    REQUIRE(suboptimality(std_lp, at0, std_lp.c) == Rational(1));

    auto mid = slack_supported_point<Rational>(
        std_lp, {Rational(1, 2), Rational(1, 2)});
    REQUIRE(suboptimality(std_lp, mid, std_lp.c) == Rational(1, 2));

    auto at1 = slack_supported_point<Rational>(std_lp, {Rational(1), Rational(0)});
    REQUIRE(suboptimality(std_lp, at1, std_lp.c) == Rational(0));
}

TEST_CASE("the bound certifies the true distance to the optimum") {
    // value at the optimum is 1; at x the objective is x, so beta == gap here
    auto std_lp = one_var_segment<double>();
    auto sfs = slack_supported_point(std_lp, {0.25, 0.75});
    REQUIRE_THAT(suboptimality(std_lp, sfs, std_lp.c),
                 Catch::Matchers::WithinAbs(0.75, 1e-12));
}

TEST_CASE("a single major iteration lowers the bound") {
    auto std_lp = one_var_segment<double>();
    auto sfs = slack_supported_point(std_lp, {0.0, 1.0});
    auto r = iterate(std_lp, std::move(sfs), std_lp.c, SolverOptions<double>{});
    REQUIRE(r.improved);
    REQUIRE(r.beta <= 1e-12);
    REQUIRE(r.sfs.x[0] == 1.0);
    REQUIRE(sfs_is_feasible(std_lp, r.sfs));
}

TEST_CASE("a fully degenerate step still exchanges the support and terminates") {
    // maximize x with x <= 0: the slack starts on its lower bound, the first
    // step has zero length, and optimality needs one support exchange
    BoundedLP<double> lp;
    lp.c = {1.0};
    lp.A = Matrix<double>(1, 1);
    lp.A(0, 0) = 1.0;
    lp.b = {0.0};
    lp.lower = {0.0};
    lp.upper = {1.0};
    auto res = solve(lp);
    REQUIRE(res.status == SolveStatus::Optimal);
    REQUIRE(res.objective == 0.0);
    REQUIRE(res.pivots >= 1);
}

TEST_CASE("solving each level of the worked sample reproduces its optimum") {
    auto mlp = fixtures::three_level_sample<double>();
    const double expected[] = {6.0, 12.0, 6.0};
    for (int p = 1; p <= 3; ++p) {
        auto lp = build_level_lp(mlp, p);
        auto res = solve(lp);
        INFO("level " << p);
        REQUIRE(res.status == SolveStatus::Optimal);
        REQUIRE_THAT(res.objective, Catch::Matchers::WithinAbs(expected[p - 1], 1e-9));
        REQUIRE(feasibility_violation(lp, res.x) <= 1e-9);
    }
}

TEST_CASE("exact arithmetic pins the unique second-level maximizer") {
    auto mlp = fixtures::three_level_sample<Rational>();
    auto lp = build_level_lp(mlp, 2);
    SolverOptions<Rational> opt;  // rational tolerances are all exact zeros
    auto res = solve(lp, opt);
    REQUIRE(res.status == SolveStatus::Optimal);
    REQUIRE(res.objective == Rational(12));
    REQUIRE(res.beta == Rational(0));
    REQUIRE(res.x == Vector<Rational>{Rational(2), Rational(0), Rational(0), Rational(0)});
}

TEST_CASE("exact arithmetic reaches the first and third level optima") {
    auto mlp = fixtures::three_level_sample<Rational>();
    const Rational expected[] = {Rational(6), Rational(12), Rational(6)};
    for (int p = 1; p <= 3; ++p) {
        auto lp = build_level_lp(mlp, p);
        auto res = solve(lp, SolverOptions<Rational>{});
        INFO("level " << p);
        REQUIRE(res.status == SolveStatus::Optimal);
        REQUIRE(res.objective == expected[p - 1]);
        REQUIRE(feasibility_violation(lp, res.x) == Rational(0));
    }
}

TEST_CASE("a generous allowance stops the solver at the starting point") {
    BoundedLP<double> lp;
    lp.c = {1.0};
    lp.A = Matrix<double>(1, 1);
    lp.A(0, 0) = 1.0;
    lp.b = {1.0};
    lp.lower = {0.0};
    lp.upper = {1.0};
    SolverOptions<double> opt;
    opt.epsilon = 1.5;  // more than the whole gap at x = 0
    auto res = solve(lp, opt);
    REQUIRE(res.status == SolveStatus::EpsilonOptimal);
    REQUIRE(res.iterations == 0);
    REQUIRE(res.objective == 0.0);
    REQUIRE(res.beta <= 1.5);
    REQUIRE(res.beta >= 1.0 - 1e-12);  // honest bound: the gap really is 1
}

TEST_CASE("a cap on support changes surfaces as an iteration limit") {
    auto mlp = fixtures::three_level_sample<double>();
    auto lp = build_level_lp(mlp, 1);
    SolverOptions<double> opt;
    opt.max_pivots = 1;
    auto res = solve(lp, opt);
    REQUIRE(res.status == SolveStatus::IterationLimit);
    REQUIRE(res.beta > 0.0);
    REQUIRE(feasibility_violation(lp, res.x) <= 1e-9);
}

TEST_CASE("a column capped in place of infinity flags unboundedness") {
    BoundedLP<double> lp;
    lp.c = {1.0};
    lp.A = Matrix<double>(1, 1);
    lp.A(0, 0) = -1.0;  // -x <= 0, growth is unchecked
    lp.b = {0.0};
    lp.lower = {0.0};
    lp.upper = {default_bound_cap<double>()};
    auto res = solve(lp);
    REQUIRE(res.status == SolveStatus::Unbounded);
}

TEST_CASE("random instances match the enumeration oracle exactly") {
    std::mt19937_64 rng(20240817);
    int solved = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto lp = fixtures::random_bounded_lp(rng);
        auto reference = oracle_solve(lp);
        auto res = solve(lp);
        INFO("trial " << trial);
        if (reference.status == OracleStatus::Infeasible) {
            REQUIRE(res.status == SolveStatus::Infeasible);
            continue;
        }
        REQUIRE(res.status == SolveStatus::Optimal);
        REQUIRE_THAT(res.objective, Catch::Matchers::WithinAbs(reference.value, 1e-6));
        REQUIRE(feasibility_violation(lp, res.x) <= 1e-7);
        ++solved;
    }
    REQUIRE(solved > 20);  // the generator must not be degenerate
}

TEST_CASE("the bound dominates the true gap and never increases") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        auto lp = fixtures::random_bounded_lp(rng);
        auto reference = oracle_solve(lp);
        if (reference.status != OracleStatus::Optimal) continue;
        SolverOptions<double> opt;
        opt.record_trace = true;
        auto res = solve(lp, opt);
        REQUIRE(res.status == SolveStatus::Optimal);
        INFO("trial " << trial);
        for (std::size_t k = 0; k < res.trace.size(); ++k) {
            REQUIRE(res.trace[k].beta >= oracle_gap(reference, res.trace[k].objective) - 1e-7);
            if (k > 0) REQUIRE(res.trace[k].beta <= res.trace[k - 1].beta + 1e-9);
        }
        REQUIRE_FALSE(res.trace.empty());
        REQUIRE(res.trace.back().beta <= 1e-9);
    }
}

TEST_CASE("allowances are honored: the returned gap stays within epsilon") {
    std::mt19937_64 rng(777);
    for (double epsilon : {0.1, 1.0}) {
        for (int trial = 0; trial < 25; ++trial) {
            auto lp = fixtures::random_bounded_lp(rng);
            auto reference = oracle_solve(lp);
            if (reference.status != OracleStatus::Optimal) continue;
            SolverOptions<double> opt;
            opt.epsilon = epsilon;
            auto res = solve(lp, opt);
            INFO("epsilon " << epsilon << " trial " << trial);
            REQUIRE((res.status == SolveStatus::Optimal ||
                     res.status == SolveStatus::EpsilonOptimal));
            REQUIRE(res.objective >= reference.value - epsilon - 1e-9);
            REQUIRE(feasibility_violation(lp, res.x) <= 1e-7);
        }
    }
}

TEST_CASE("termination leaves every off-support column pressed to its bound") {
    std::mt19937_64 rng(991);
    for (int trial = 0; trial < 25; ++trial) {
        auto lp = fixtures::random_bounded_lp(rng);
        auto std_lp = to_standard_form(lp);
        SolverOptions<double> opt;
        auto init = initial_sfs(std_lp, opt);
        if (!init.sfs) continue;
        auto sfs = std::move(*init.sfs);
        // run to optimality through the public major iteration
        for (int guard = 0; guard < 200; ++guard) {
            auto r = iterate(std_lp, std::move(sfs), std_lp.c, opt);
            sfs = std::move(r.sfs);
            REQUIRE(sfs_is_feasible(std_lp, sfs));  // preserved at every stage
            if (r.beta <= 1e-9) break;
        }
        auto e = reduced_estimates(std_lp, sfs, std_lp.c);
        const double beta = suboptimality(std_lp, sfs, std_lp.c);
        if (beta > 1e-9) continue;  // iteration guard tripped; nothing to certify
        for (int j = 0; j < std_lp.columns(); ++j) {
            if (sfs.in_basis[j] || std_lp.lower[j] == std_lp.upper[j]) continue;
            INFO("trial " << trial << " column " << j);
            if (e[j] > 1e-9) REQUIRE(sfs.x[j] - std_lp.lower[j] <= 1e-6);
            if (e[j] < -1e-9) REQUIRE(std_lp.upper[j] - sfs.x[j] <= 1e-6);
        }
    }
}

TEST_CASE("exact random cross-check against the oracle") {
    // rationalized copies of small random instances; everything must agree
    // to the last digit
    std::mt19937_64 rng(31337);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        auto lpd = fixtures::random_bounded_lp(rng, 4, 4);
        BoundedLP<Rational> lp;
        lp.c.resize(lpd.c.size());
        for (std::size_t j = 0; j < lpd.c.size(); ++j) lp.c[j] = rational_from_double(lpd.c[j]);
        lp.b.resize(lpd.b.size());
        for (std::size_t i = 0; i < lpd.b.size(); ++i) lp.b[i] = rational_from_double(lpd.b[i]);
        lp.A = Matrix<Rational>(lpd.A.rows(), lpd.A.cols());
        for (std::size_t i = 0; i < lpd.A.rows(); ++i)
            for (std::size_t j = 0; j < lpd.A.cols(); ++j)
                lp.A(i, j) = rational_from_double(lpd.A(i, j));
        lp.lower.resize(lpd.lower.size());
        lp.upper.resize(lpd.upper.size());
        for (std::size_t j = 0; j < lpd.lower.size(); ++j) {
            lp.lower[j] = rational_from_double(lpd.lower[j]);
            lp.upper[j] = rational_from_double(lpd.upper[j]);
        }
        auto reference = oracle_solve(lp);
        auto res = solve(lp);
        if (reference.status == OracleStatus::Infeasible) {
            REQUIRE(res.status == SolveStatus::Infeasible);
            continue;
        }
        REQUIRE(res.status == SolveStatus::Optimal);
        REQUIRE(res.objective == reference.value);
        REQUIRE(res.beta == Rational(0));
        ++checked;
    }
    REQUIRE(checked > 3);
}
