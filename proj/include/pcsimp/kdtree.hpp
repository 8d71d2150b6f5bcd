// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact 3D kd-tree. Queries return the true k nearest neighbors under
// Euclidean distance; ties in distance resolve to the smaller point index,
// so results match a brute-force scan sorted by (distance, index).

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pcsimp/core.hpp"

namespace pcsimp {

struct Neighbor {
    int index;
    double sq_dist;
};

class KdTree {
public:
    KdTree() = default;

    /// Build over the cloud's points; the cloud must outlive the tree.
    explicit KdTree(const PointCloud& cloud);

    bool empty() const { return nodes_.empty(); }

    /// The k nearest points to `query`, sorted by (distance, index) ascending.
    /// `exclude` removes one point (typically the query's own index) from
    /// candidacy. Throws std::invalid_argument if fewer than k candidates exist.
    std::vector<Neighbor> knn(const Eigen::Vector3d& query, int k, int exclude = -1) const;

    /// Single nearest neighbor, same tie rule.
    Neighbor nearest(const Eigen::Vector3d& query) const;

private:
    struct Node {
        // Leaf when count > 0: [first, first+count) into order_.
        // Internal when count == 0: children at child and child+1.
        double split = 0.0;
        int axis = 0;
        int child = -1;
        int first = 0;
        int count = 0;
    };

    struct SearchState;

    int build(int begin, int end);
    void search(int node_idx, const Eigen::Vector3d& query, SearchState& state) const;

    const PointCloud* cloud_ = nullptr;
    std::vector<Node> nodes_;
    std::vector<int> order_;
};

}  // namespace pcsimp
