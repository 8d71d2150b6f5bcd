// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// k-nearest-neighbor graph over a point cloud: per-point neighbor lists
// with exact Euclidean distances, Gaussian edge weights, degrees, binary
// adjacency, and the normalized-Laplacian high-pass filter action
// (I - D^-1 W) X used to score sharp features.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "pcsimp/core.hpp"

namespace pcsimp {

/// Directed k-NN graph. Neighbor lists are exact (not approximate) and
/// sorted by (distance, index); distance ties resolve to the smaller
/// original index. A point never lists itself, even at distance zero.
struct KnnGraph {
    int k = 0;
    double sigma = 0.0;            // Gaussian bandwidth, length units
    int n = 0;                     // number of points
    std::vector<int> neighbors;    // n*k, row-major: neighbors of i at [i*k, (i+1)*k)
    std::vector<double> distances; // n*k Euclidean distances, ascending per row
    std::vector<double> weights;   // n*k, w = exp(-d^2 / sigma^2), in (0, 1]
    std::vector<double> degrees;   // n, row sums of the weight matrix; strictly positive

    int neighbor(int i, int j) const { return neighbors[static_cast<size_t>(i) * k + j]; }
    double distance(int i, int j) const { return distances[static_cast<size_t>(i) * k + j]; }
    double weight(int i, int j) const { return weights[static_cast<size_t>(i) * k + j]; }
};

/// Row-sparse N x N adjacency operator: binary off-diagonal entries given by
/// per-row column lists, plus a nonnegative diagonal. The diagonal is zero
/// for a plain k-NN adjacency and carries the k - d_i degree complement for
/// partition-boundary rows, so every row sums to exactly k either way.
struct Adjacency {
    int n = 0;
    int k = 0;
    std::vector<int> offsets;   // n+1 prefix offsets into cols
    std::vector<int> cols;      // off-diagonal column indices
    std::vector<double> diag;   // n diagonal entries (degree complements)

    /// y = A v.
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    /// y = A^T v.
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& v) const;
    /// Row sum including the diagonal.
    double row_sum(int i) const;

    /// Dense materialization for tests and oracles only; refuses n > 2000.
    Eigen::MatrixXd to_dense() const;
};

/// Build the exact k-NN graph. Requires N > k >= 1 and finite coordinates;
/// duplicate points are legal (zero distance gives weight one).
///
/// When sigma is not supplied it defaults to the mean, over all points, of
/// the distance to the k-th nearest neighbor, measured on this same pass.
KnnGraph build_knn_graph(const PointCloud& cloud, int k, std::optional<double> sigma = std::nullopt);

/// Rows of (I - D^-1 W) X: each point's coordinates minus the weight-
/// normalized average of its neighbors. Large row norms mark sharp features.
Eigen::Matrix<double, Eigen::Dynamic, 3> laplacian_apply(const KnnGraph& g, const PointCloud& cloud);

/// Binary adjacency of the graph: A_ij = 1 iff j is a neighbor of i.
/// Rows sum to exactly k; not necessarily symmetric.
Adjacency binary_adjacency(const KnnGraph& g);

}  // namespace pcsimp
