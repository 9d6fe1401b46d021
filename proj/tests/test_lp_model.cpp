#include "mllp/problem.hpp"

#include "instances.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using mllp::LevelIndex;
using mllp::Rational;

TEST_CASE("flat_index maps (level, position) onto the shared vector") {
    const std::vector<int> sizes{2, 1, 1};
    CHECK(mllp::flat_index(sizes, {1, 1}) == 1);
    CHECK(mllp::flat_index(sizes, {1, 2}) == 2);
    CHECK(mllp::flat_index(sizes, {2, 1}) == 3);
    CHECK(mllp::flat_index(sizes, {3, 1}) == 4);

    CHECK_THROWS_AS(mllp::flat_index(sizes, {0, 1}), std::out_of_range);
    CHECK_THROWS_AS(mllp::flat_index(sizes, {4, 1}), std::out_of_range);
    CHECK_THROWS_AS(mllp::flat_index(sizes, {1, 3}), std::out_of_range);
    CHECK_THROWS_AS(mllp::flat_index(sizes, {2, 2}), std::out_of_range);
}

TEST_CASE("flat_index is a bijection onto 1..n and unflatten inverts it") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> levels(2, 6);
    std::uniform_int_distribution<int> width(1, 5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> sizes(levels(rng));
        int total = 0;
        for (auto& s : sizes) {
            s = width(rng);
            total += s;
        }
        std::set<int> seen;
        for (int i = 1; i <= static_cast<int>(sizes.size()); ++i) {
            for (int j = 1; j <= sizes[i - 1]; ++j) {
                int e = mllp::flat_index(sizes, {i, j});
                REQUIRE(e >= 1);
                REQUIRE(e <= total);
                REQUIRE(seen.insert(e).second);  // injective
                auto back = mllp::unflatten_index(sizes, e);
                REQUIRE(back == LevelIndex{i, j});
            }
        }
        REQUIRE(static_cast<int>(seen.size()) == total);  // surjective
    }
}

TEST_CASE("build_level_lp picks the requested objective row") {
    auto mlp = fixtures::three_level_sample<double>();

    auto lp1 = mllp::build_level_lp(mlp, 1);
    CHECK(lp1.c == mllp::Vector<double>{-5, 1, 2, 3});
    auto lp3 = mllp::build_level_lp(mlp, 3);
    CHECK(lp3.c == mllp::Vector<double>{0, -1, 2, 3});

    // shared data and default box [0, cap]
    CHECK(lp1.b == mlp.b);
    CHECK(lp1.lower == mllp::Vector<double>(4, 0.0));
    for (double u : lp1.upper) CHECK(u == mllp::default_bound_cap<double>());

    CHECK_THROWS_AS(mllp::build_level_lp(mlp, 4), std::out_of_range);
    CHECK_THROWS_AS(mllp::build_level_lp(mlp, 0), std::out_of_range);
}

TEST_CASE("to_standard_form appends one slack per row as an identity block") {
    auto mlp = fixtures::three_level_sample<double>();
    auto std_lp = mllp::to_standard_form(mllp::build_level_lp(mlp, 1));

    REQUIRE(std_lp.columns() == 11);  // 4 structural + 7 slacks
    REQUIRE(std_lp.n_structural == 4);
    for (int i = 0; i < 7; ++i) {
        for (int k = 0; k < 7; ++k)
            CHECK(std_lp.A(i, 4 + k) == (i == k ? 1.0 : 0.0));
        CHECK(std_lp.c[4 + i] == 0.0);
        CHECK(std_lp.lower[4 + i] == 0.0);
        CHECK(std_lp.upper[4 + i] == mllp::default_bound_cap<double>());
    }
}

TEST_CASE("standard form round-trips back to the box form") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        auto lp = fixtures::random_bounded_lp(rng);
        auto back = mllp::from_standard_form(mllp::to_standard_form(lp));
        CHECK(back.c == lp.c);
        CHECK(back.b == lp.b);
        CHECK(back.lower == lp.lower);
        CHECK(back.upper == lp.upper);
        CHECK(back.A == lp.A);
    }
}

TEST_CASE("to_standard_form keeps degenerate boxes and rejects crossed ones") {
    mllp::BoundedLP<double> lp;
    lp.c = {1.0};
    lp.A = mllp::Matrix<double>(1, 1);
    lp.A(0, 0) = 1.0;
    lp.b = {5.0};
    lp.lower = {2.0};
    lp.upper = {2.0};  // fixed variable passes through untouched
    auto std_lp = mllp::to_standard_form(lp);
    CHECK(std_lp.lower[0] == 2.0);
    CHECK(std_lp.upper[0] == 2.0);

    lp.lower = {3.0};
    CHECK_THROWS_AS(mllp::to_standard_form(lp), std::invalid_argument);
}

TEST_CASE("evaluate_objectives reproduces the sample values") {
    auto mlp = fixtures::three_level_sample<Rational>();
    auto optima = fixtures::three_level_sample_optima<Rational>();

    auto f_at_1 = mllp::evaluate_objectives(mlp, optima[0]);
    CHECK(f_at_1[0] == 6);
    auto f_at_2 = mllp::evaluate_objectives(mlp, optima[1]);
    CHECK(f_at_2[1] == 12);
    auto f_at_3 = mllp::evaluate_objectives(mlp, optima[2]);
    CHECK(f_at_3[2] == 6);

    CHECK_THROWS_AS(mllp::evaluate_objectives(mlp, mllp::Vector<Rational>{1, 2}),
                    std::invalid_argument);
}

TEST_CASE("evaluate_objectives is linear") {
    auto mlp = fixtures::three_level_sample<double>();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        mllp::Vector<double> x(4), y(4), z(4);
        double a = val(rng), b = val(rng);
        for (int j = 0; j < 4; ++j) {
            x[j] = val(rng);
            y[j] = val(rng);
            z[j] = a * x[j] + b * y[j];
        }
        auto fx = mllp::evaluate_objectives(mlp, x);
        auto fy = mllp::evaluate_objectives(mlp, y);
        auto fz = mllp::evaluate_objectives(mlp, z);
        for (int p = 0; p < 3; ++p)
            CHECK_THAT(fz[p], Catch::Matchers::WithinAbs(a * fx[p] + b * fy[p], 1e-9));
    }
}
