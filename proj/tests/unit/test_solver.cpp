// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcsimp/solver.hpp"

using namespace pcsimp;

namespace {

// Random QP instances: adjacency from a random cloud's graph, feature
// values drawn away from zero so the Hessian stays well conditioned.
SimplificationProblem random_problem(int n, int k, double alpha, double lambda, std::mt19937& rng) {
    const PointCloud cloud = oracle::random_cloud(n, rng, /*allow_duplicates=*/false);
    SimplificationProblem p = make_problem(build_knn_graph(cloud, k), cloud, alpha, lambda);
    std::uniform_real_distribution<double> fval(0.02, 2.0);
    for (int i = 0; i < n; ++i) p.f[i] = fval(rng);
    return p;
}

SolverConfig tight_config() {
    SolverConfig cfg;
    cfg.max_iters = 20000;
    cfg.kkt_tol = 1e-12;
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("projection leaves feasible points in place") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial;
        const Eigen::VectorXd v = oracle::random_feasible(n, n * 0.4, rng);
        const Eigen::VectorXd p = project_capped_simplex(v, v.sum());
        CHECK((p - v).norm() < 1e-9);
    }
}

TEST_CASE("projection saturates forced bounds") {
    Eigen::VectorXd v(3);
    v << 10, 10, -10;
    const Eigen::VectorXd p = project_capped_simplex(v, 2.0);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 1.0);
    CHECK(p[2] == 0.0);
}

TEST_CASE("projection rejects infeasible budgets") {
    const Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
    CHECK_THROWS_AS(project_capped_simplex(v, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(project_capped_simplex(v, 4.5), std::invalid_argument);
    CHECK(project_capped_simplex(v, 0.0).norm() == 0.0);
    CHECK(project_capped_simplex(v, 4.0) == Eigen::VectorXd::Ones(4));
}

TEST_CASE("projection matches the active-set enumeration oracle") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 7;  // up to 8
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = coord(rng);
        const double budget = unit(rng) * n;

        const Eigen::VectorXd p = project_capped_simplex(v, budget);
        const Eigen::VectorXd ref = oracle::projection_oracle(v, budget);
        CHECK((p - ref).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(std::abs(p.sum() - budget) <= 1e-10 * n);
        CHECK(p.minCoeff() >= 0.0);
        CHECK(p.maxCoeff() <= 1.0);
    }
}

TEST_CASE("projection is no farther than any feasible point") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 5 + trial % 20;
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = coord(rng);
        const double budget = 0.35 * n;
        const Eigen::VectorXd p = project_capped_simplex(v, budget);
        for (int z = 0; z < 20; ++z) {
            const Eigen::VectorXd other = oracle::random_feasible(n, budget, rng);
            CHECK((p - v).norm() <= (other - v).norm() + 1e-9);
        }
    }
}

TEST_CASE("select_top ordering and tie rules") {
    Eigen::VectorXd psi(3);
    psi << 0.9, 0.1, 0.5;
    CHECK(select_top(psi, 2, Eigen::VectorXd()) == std::vector<int>{0, 2});
    CHECK(select_top(psi, 0, Eigen::VectorXd()).empty());
    CHECK(select_top(psi, 3, Eigen::VectorXd()) == std::vector<int>{0, 1, 2});

    Eigen::VectorXd flat = Eigen::VectorXd::Constant(3, 0.5);
    Eigen::VectorXd f(3);
    f << 1, 3, 2;
    CHECK(select_top(flat, 2, f) == std::vector<int>{1, 2});
    // Without features the tie falls back to the smaller index.
    CHECK(select_top(flat, 2, Eigen::VectorXd()) == std::vector<int>{0, 1});
}

TEST_CASE("lambda=0 solve matches the separable KKT oracle") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> fval(0.05, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 6 + trial;
        SimplificationProblem p = random_problem(n, 2, 0.5, 0.0, rng);
        for (int i = 0; i < n; ++i) p.f[i] = fval(rng);  // distinct, strictly positive

        const int budget = n / 2;
        const ResampleSolution sol = solve_relaxed(p, budget, tight_config());
        const Eigen::VectorXd ref = oracle::separable_lambda0_oracle(p.f, budget);
        CHECK(total_loss(p, sol.psi) <= total_loss(p, ref) + 1e-9);
        CHECK((sol.psi - ref).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("full budget keeps everything exactly") {
    std::mt19937 rng(5);
    const SimplificationProblem p = random_problem(20, 3, 1.0, 0.3, rng);
    const ResampleSolution sol = solve_relaxed(p, 20.0);
    CHECK(sol.psi == Eigen::VectorXd::Ones(20));
    CHECK(total_loss(p, sol.psi) == 0.0);
    CHECK(sol.kept.size() == 20);
}

TEST_CASE("solver reaches the enumeration-oracle optimum") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 5 + trial % 6;  // up to 10
        const double alpha = 0.2 + 0.6 * unit(rng);
        const double lambda = trial % 2 ? 0.05 : 0.8;
        const SimplificationProblem p = random_problem(n, 2, alpha, lambda, rng);
        const double budget = std::round(alpha * n);

        const ResampleSolution sol = solve_relaxed(p, budget, tight_config());
        const double achieved = total_loss(p, sol.psi);

        const oracle::DenseQp qp = oracle::dense_qp_from(p);
        const oracle::QpOracleResult ref = oracle::capped_qp_oracle(qp.Q, qp.b, qp.c, budget);
        CHECK(achieved <= ref.value + 1e-6);
        CHECK(achieved >= ref.value - 1e-6);

        double best_random = std::numeric_limits<double>::infinity();
        for (int z = 0; z < 2000; ++z)
            best_random = std::min(best_random,
                                   total_loss(p, oracle::random_feasible(n, budget, rng)));
        CHECK(achieved <= best_random + 1e-9);
    }
}

TEST_CASE("objective trace is non-increasing and ends KKT-certified") {
    std::mt19937 rng(7);
    const SimplificationProblem p = random_problem(60, 5, 0.3, 0.1, rng);
    SolverConfig cfg;  // default tolerance, room to actually reach it
    cfg.max_iters = 30000;
    const ResampleSolution sol = solve_relaxed(p, 18.0, cfg);
    REQUIRE(!sol.objective_trace.empty());
    for (size_t t = 1; t < sol.objective_trace.size(); ++t)
        CHECK(sol.objective_trace[t] <= sol.objective_trace[t - 1] + 1e-12);
    CHECK(sol.converged);

    // Recompute the certificate at the returned point.
    const double kkt_tol = 1e-6 * (1.0 + p.f.maxCoeff());
    const Eigen::VectorXd grad = gradient(p, sol.psi);
    const double step = 1e-3;
    const Eigen::VectorXd moved = project_capped_simplex(sol.psi - step * grad, 18.0);
    CHECK((sol.psi - moved).norm() / step <= kkt_tol * 1.05);
}

TEST_CASE("feasibility of the returned confidences") {
    std::mt19937 rng(8);
    const SimplificationProblem p = random_problem(45, 4, 0.4, 0.5, rng);
    const double budget = 17.5;  // fractional budgets are legal in the relaxed solve
    const ResampleSolution sol = solve_relaxed(p, budget);
    CHECK(sol.psi.minCoeff() >= 0.0);
    CHECK(sol.psi.maxCoeff() <= 1.0);
    CHECK(std::abs(sol.psi.sum() - budget) <= 1e-8 * 45);
    CHECK(static_cast<int>(sol.kept.size()) == 18);  // llround(17.5)
}

TEST_CASE("warm starting from the solution changes nothing") {
    std::mt19937 rng(9);
    const SimplificationProblem p = random_problem(35, 3, 0.5, 0.2, rng);
    const ResampleSolution cold = solve_relaxed(p, 12.0, tight_config());
    const ResampleSolution warm = solve_relaxed(p, 12.0, tight_config(), cold.psi);
    CHECK(std::abs(total_loss(p, warm.psi) - total_loss(p, cold.psi)) <= 1e-8);
}

TEST_CASE("larger lambda trades feature loss for uniformity") {
    std::mt19937 rng(10);
    for (int trial = 0; trial < 5; ++trial) {
        SimplificationProblem p = random_problem(40, 4, 0.3, 0.0, rng);
        SimplificationProblem p1 = p, p2 = p;
        p1.lambda = 1e-3;
        p2.lambda = 1e-1;
        const ResampleSolution s1 = solve_relaxed(p1, 12.0, tight_config());
        const ResampleSolution s2 = solve_relaxed(p2, 12.0, tight_config());
        CHECK(uniformity_loss(p, s2.psi) <= uniformity_loss(p, s1.psi) + 1e-8);
        CHECK(feature_loss(p, s1.psi) <= feature_loss(p, s2.psi) + 1e-8);
    }
}

TEST_CASE("non-finite objectives are reported with the iterate") {
    SimplificationProblem p;
    p.f = Eigen::VectorXd::Constant(8, 1e308);
    p.adjacency.n = 8;
    p.adjacency.k = 0;
    p.adjacency.offsets.assign(9, 0);
    p.adjacency.diag.assign(8, 0.0);
    p.k = 0;
    p.alpha = 0.5;
    p.lambda = 0.0;
    CHECK_THROWS_WITH_AS(solve_relaxed(p, 4.0), doctest::Contains("iteration"), std::runtime_error);
}

TEST_CASE("solver config validation") {
    SolverConfig bad;
    bad.shrink = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SolverConfig{};
    bad.sufficient_decrease = 0.9;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SolverConfig{};
    bad.max_iters = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_SUITE_END();
