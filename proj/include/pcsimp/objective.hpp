// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Simplification objective. For a confidence vector psi in [0,1]^N:
//
//   feature loss     l_f = sum_i (psi_i - 1)^2 f_i
//   uniformity loss  l_e = || A psi - alpha k 1 ||^2
//   total            l   = l_f + lambda l_e
//
// f_i is the squared norm of row i of the Laplacian-filtered coordinates,
// so l_f equals || Psi L X - L X ||^2 with Psi = diag(psi). The uniformity
// loss is evaluated in this unexpanded residual form; A^T A is never
// materialized. Constant terms are kept so that l(1) == 0.

#pragma once

#include <Eigen/Dense>

#include "pcsimp/graph.hpp"

namespace pcsimp {

/// One quadratic-program instance: feature diagonal, adjacency (with any
/// boundary degree complement already applied), and the k / alpha / lambda
/// parameters. Immutable once built; shared freely across solver tasks.
struct SimplificationProblem {
    Eigen::VectorXd f;   // nonnegative feature diagonal, length N
    Adjacency adjacency; // every row sums to exactly k
    int k = 0;
    double alpha = 1.0;  // target rate in (0, 1]
    double lambda = 0.0; // uniformity trade-off, >= 0

    int size() const { return static_cast<int>(f.size()); }
};

/// Assemble a problem over a whole cloud (no partitioning): f from the
/// graph's Laplacian filter and the plain binary adjacency.
SimplificationProblem make_problem(const KnnGraph& g, const PointCloud& cloud, double alpha, double lambda);

/// Per-point squared norms of the Laplacian-filtered coordinates.
Eigen::VectorXd feature_vector(const KnnGraph& g, const PointCloud& cloud);

/// sum_i (psi_i - 1)^2 f_i. Zero iff psi_i = 1 wherever f_i > 0.
double feature_loss(const SimplificationProblem& problem, const Eigen::VectorXd& psi);

/// || A psi - alpha k 1 ||^2: squared deviation of each point's surviving-
/// neighbor count from the uniform target alpha*k.
double uniformity_loss(const SimplificationProblem& problem, const Eigen::VectorXd& psi);

/// feature_loss + lambda * uniformity_loss.
double total_loss(const SimplificationProblem& problem, const Eigen::VectorXd& psi);

/// Gradient of total_loss: 2 F psi - 2 f + 2 lambda A^T (A psi - alpha k 1).
Eigen::VectorXd gradient(const SimplificationProblem& problem, const Eigen::VectorXd& psi);

}  // namespace pcsimp
