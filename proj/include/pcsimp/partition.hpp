// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scaling machinery for large clouds: partition the cloud into cubes of
// bounded occupancy, build per-cube problems whose feature values come
// from the one global graph (so cube boundaries introduce no artificial
// contours), complement boundary degrees so every adjacency row still
// sums to k, allocate per-cube selection budgets, solve the cubes
// independently and merge the selections.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "pcsimp/core.hpp"
#include "pcsimp/objective.hpp"
#include "pcsimp/solver.hpp"

namespace pcsimp {

struct CubePartition {
    std::vector<std::vector<int>> cubes;  // disjoint ascending index sets covering 0..N-1
    std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>> bounds;  // tight box per cube
    int min_size = 3000;
    int max_size = 8000;

    int cube_count() const { return static_cast<int>(cubes.size()); }
};

/// One cube's solve input: the interior indices (global ids), the local
/// quadratic problem with halo-correct features and degree-complemented
/// adjacency, and the number of points this cube must keep.
struct CubeProblem {
    std::vector<int> interior;
    SimplificationProblem problem;
    int budget = 0;
};

/// Recursive octree split of the bounding box until every leaf holds at
/// most max_size points, then a greedy merge of sibling leaves (staying
/// within max_size) to reduce under-min_size residue. Coincident point
/// masses that no spatial split can separate fall back to index-order
/// chunking.
CubePartition build_partition(const PointCloud& cloud, int min_size = 3000, int max_size = 8000);

/// Restrict a global graph to the partition's cubes. Features are copied
/// from the global feature vector (bitwise halo correctness); adjacency
/// rows are restricted to interior x interior and the lost degree k - d_i
/// is added to the diagonal. Budgets come from allocate_budgets.
std::vector<CubeProblem> build_cube_problems(const KnnGraph& graph, const Eigen::VectorXd& feature,
                                             const CubePartition& partition, double alpha, double lambda);

/// Convenience overload that builds the global graph itself.
std::vector<CubeProblem> build_cube_problems(const PointCloud& cloud, const CubePartition& partition,
                                             int k, std::optional<double> sigma, double alpha,
                                             double lambda);

/// Largest-remainder apportionment of round(alpha*N) across cubes,
/// proportional to cube sizes. Budgets sum to round(alpha*N) exactly.
std::vector<int> allocate_budgets(const CubePartition& partition, double alpha);

struct SimplifyParams {
    int k = 10;
    std::optional<double> sigma;  // graph bandwidth; default adapts to density
    double alpha = 0.1;
    double lambda = 1e-3;
    int cube_min = 3000;
    int cube_max = 8000;
    SolverConfig solver;
};

struct SimplifyResult {
    SelectionMask mask;
    Eigen::VectorXd feature;          // global feature vector (diagnostics)
    double relaxed_feature_loss = 0;  // sum of per-cube l_f at the relaxed optima
    double relaxed_uniformity_loss = 0;
    int cube_count = 0;
    double sigma = 0;                 // resolved bandwidth
};

/// End-to-end pipeline: graph, features, partition, per-cube solves,
/// top-confidence selection, ordered merge. Deterministic for fixed
/// params regardless of cube execution order.
SimplifyResult simplify_detailed(const PointCloud& cloud, const SimplifyParams& params);

/// Same, returning only the selection.
SelectionMask simplify(const PointCloud& cloud, const SimplifyParams& params);

}  // namespace pcsimp
