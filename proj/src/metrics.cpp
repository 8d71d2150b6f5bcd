// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/metrics.hpp"

#include <stdexcept>
#include <vector>

#include "pcsimp/graph.hpp"

namespace pcsimp {

double in_degree_variance(const PointCloud& cloud, int k) {
    const KnnGraph g = build_knn_graph(cloud, k);
    std::vector<int> in_degree(static_cast<size_t>(g.n), 0);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.k; ++j) in_degree[static_cast<size_t>(g.neighbor(i, j))] += 1;

    const double mean = static_cast<double>(k);  // sum of in-degrees is N*k
    double acc = 0.0;
    for (int d : in_degree) {
        const double r = static_cast<double>(d) - mean;
        acc += r * r;
    }
    return acc / static_cast<double>(g.n);
}

double selection_degree_variance(const PointCloud& cloud, int k, const SelectionMask& mask) {
    const KnnGraph g = build_knn_graph(cloud, k);
    std::vector<char> kept(static_cast<size_t>(g.n), 0);
    for (int idx : mask.kept) {
        if (idx < 0 || idx >= g.n)
            throw std::out_of_range("selection_degree_variance: mask index out of range");
        kept[static_cast<size_t>(idx)] = 1;
    }

    std::vector<int> counts(static_cast<size_t>(g.n), 0);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.k; ++j)
            counts[static_cast<size_t>(i)] += kept[static_cast<size_t>(g.neighbor(i, j))];

    double mean = 0.0;
    for (int c : counts) mean += c;
    mean /= static_cast<double>(g.n);
    double acc = 0.0;
    for (int c : counts) {
        const double r = static_cast<double>(c) - mean;
        acc += r * r;
    }
    return acc / static_cast<double>(g.n);
}

double feature_mass_retained(const Eigen::VectorXd& feature, const SelectionMask& mask) {
    const double total = feature.sum();
    if (total <= 0.0) return 1.0;
    double kept = 0.0;
    for (int idx : mask.kept) {
        if (idx < 0 || idx >= feature.size())
            throw std::out_of_range("feature_mass_retained: mask index out of range");
        kept += feature[idx];
    }
    return kept / total;
}

}  // namespace pcsimp
