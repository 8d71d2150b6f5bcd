// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Solver for the relaxed selection problem: minimize the convex quadratic
// total_loss over the capped simplex { psi : 0 <= psi <= 1, 1^T psi = b }.
// Projected gradient with a backtracking line search; the projection onto
// the capped simplex is computed by bisection on the shift tau in
// psi_i = clamp(v_i - tau, 0, 1).

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "pcsimp/objective.hpp"

namespace pcsimp {

struct SolverConfig {
    int max_iters = 500;
    /// Convergence tolerance on the projected-gradient norm. Non-positive
    /// means automatic: 1e-6 * (1 + max_i f_i).
    double kkt_tol = 0.0;
    /// Initial step size. Non-positive means automatic: 1 / L, with L the
    /// largest Hessian eigenvalue estimated by 20 power iterations.
    double initial_step = 0.0;
    double shrink = 0.5;              // backtracking shrink factor, in (0, 1)
    double sufficient_decrease = 1e-4; // Armijo constant, in (0, 0.5]

    void validate() const;
};

struct ResampleSolution {
    Eigen::VectorXd psi;               // feasible confidences in [0, 1]
    std::vector<int> kept;             // ascending indices, |kept| = round(budget)
    std::vector<double> objective_trace; // total_loss per accepted iterate, non-increasing
    int iterations = 0;
    bool converged = false;            // KKT residual reached tolerance
};

/// Euclidean projection of v onto { p : 0 <= p <= 1, 1^T p = budget }.
/// The budget may be fractional; it must lie in [0, N].
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& v, double budget);

/// Solve the relaxed problem at the given budget (tr Psi = budget). The
/// optional warm start is projected onto the feasible set before use;
/// the default start is the uniform point (budget/N) * 1.
ResampleSolution solve_relaxed(const SimplificationProblem& problem, double budget,
                               const SolverConfig& config = {},
                               const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

/// Indices of the m largest confidences. Ties resolve to the larger
/// feature value, then to the smaller index. Returned ascending.
std::vector<int> select_top(const Eigen::VectorXd& psi, int m, const Eigen::VectorXd& features);

}  // namespace pcsimp
