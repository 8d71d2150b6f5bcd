// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/graph.hpp"

#include <cmath>
#include <stdexcept>

#include "pcsimp/kdtree.hpp"

namespace pcsimp {

Eigen::VectorXd Adjacency::apply(const Eigen::VectorXd& v) const {
    if (v.size() != n) throw std::invalid_argument("Adjacency::apply: dimension mismatch");
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) {
        double acc = diag[i] * v[i];
        for (int p = offsets[i]; p < offsets[i + 1]; ++p) acc += v[cols[p]];
        out[i] = acc;
    }
    return out;
}

Eigen::VectorXd Adjacency::apply_transpose(const Eigen::VectorXd& v) const {
    if (v.size() != n) throw std::invalid_argument("Adjacency::apply_transpose: dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        out[i] += diag[i] * v[i];
        for (int p = offsets[i]; p < offsets[i + 1]; ++p) out[cols[p]] += v[i];
    }
    return out;
}

double Adjacency::row_sum(int i) const {
    return diag[i] + static_cast<double>(offsets[i + 1] - offsets[i]);
}

Eigen::MatrixXd Adjacency::to_dense() const {
    if (n > 2000) throw std::logic_error("Adjacency::to_dense: refusing to materialize n > 2000");
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        dense(i, i) = diag[i];
        for (int p = offsets[i]; p < offsets[i + 1]; ++p) dense(i, cols[p]) += 1.0;
    }
    return dense;
}

KnnGraph build_knn_graph(const PointCloud& cloud, int k, std::optional<double> sigma) {
    const int n = cloud.size();
    if (k < 1) throw std::invalid_argument("build_knn_graph: k must be >= 1");
    if (n <= k)
        throw std::invalid_argument("build_knn_graph: need more than k=" + std::to_string(k) +
                                    " points, got " + std::to_string(n));
    if (!cloud.all_finite()) throw std::invalid_argument("build_knn_graph: non-finite coordinates");
    if (sigma && !(*sigma > 0.0)) throw std::invalid_argument("build_knn_graph: sigma must be positive");

    KnnGraph g;
    g.k = k;
    g.n = n;
    g.neighbors.resize(static_cast<size_t>(n) * k);
    g.distances.resize(static_cast<size_t>(n) * k);
    g.weights.resize(static_cast<size_t>(n) * k);
    g.degrees.resize(n);

    const KdTree tree(cloud);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const auto found = tree.knn(cloud[i], k, /*exclude=*/i);
        for (int j = 0; j < k; ++j) {
            g.neighbors[static_cast<size_t>(i) * k + j] = found[j].index;
            g.distances[static_cast<size_t>(i) * k + j] = std::sqrt(found[j].sq_dist);
        }
    }

    if (sigma) {
        g.sigma = *sigma;
    } else {
        // Mean k-th neighbor distance; serial sum keeps it run-to-run stable.
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += g.distances[static_cast<size_t>(i) * k + (k - 1)];
        g.sigma = acc / static_cast<double>(n);
    }

    const double inv_sigma_sq = g.sigma > 0.0 ? 1.0 / (g.sigma * g.sigma) : 0.0;
    for (int i = 0; i < n; ++i) {
        double degree = 0.0;
        for (int j = 0; j < k; ++j) {
            const double d = g.distances[static_cast<size_t>(i) * k + j];
            // d == 0 gives exp(0) = 1 even when sigma degenerates to zero
            // (all-coincident cloud); sigma == 0 with d > 0 cannot occur.
            const double w = d == 0.0 ? 1.0 : std::exp(-d * d * inv_sigma_sq);
            g.weights[static_cast<size_t>(i) * k + j] = w;
            degree += w;
        }
        g.degrees[i] = degree;
        if (!(degree > 0.0)) throw std::runtime_error("build_knn_graph: zero degree at point " + std::to_string(i));
    }
    return g;
}

Eigen::Matrix<double, Eigen::Dynamic, 3> laplacian_apply(const KnnGraph& g, const PointCloud& cloud) {
    if (g.n != cloud.size()) throw std::invalid_argument("laplacian_apply: graph/cloud size mismatch");
    Eigen::Matrix<double, Eigen::Dynamic, 3> out(g.n, 3);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < g.n; ++i) {
        Eigen::Vector3d avg = Eigen::Vector3d::Zero();
        for (int j = 0; j < g.k; ++j)
            avg += g.weight(i, j) * cloud[g.neighbor(i, j)];
        out.row(i) = (cloud[i] - avg / g.degrees[i]).transpose();
    }
    return out;
}

Adjacency binary_adjacency(const KnnGraph& g) {
    Adjacency a;
    a.n = g.n;
    a.k = g.k;
    a.offsets.resize(g.n + 1);
    for (int i = 0; i <= g.n; ++i) a.offsets[i] = i * g.k;
    a.cols = g.neighbors;
    a.diag.assign(g.n, 0.0);
    return a;
}

}  // namespace pcsimp
