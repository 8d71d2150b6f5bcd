// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Uniformity and feature-retention statistics used in reports and sweeps.

#pragma once

#include <Eigen/Dense>

#include "pcsimp/core.hpp"

namespace pcsimp {

/// Variance of the in-degrees (column sums of the binary adjacency) of the
/// k-NN graph built over the cloud. Out-degrees are k by construction, so
/// the in-degree spread is what distinguishes uniform from clustered
/// sampling; the mean in-degree is always exactly k.
double in_degree_variance(const PointCloud& cloud, int k);

/// Degree variance of the simplified graph: for every point of the
/// original cloud, count how many of its k nearest neighbors survive the
/// selection, and return the variance of those counts. A uniform selection
/// keeps the counts near alpha*k everywhere; contour-concentrated
/// selections leave them bimodal. This is the uniformity statistic the
/// sweep reports track.
double selection_degree_variance(const PointCloud& cloud, int k, const SelectionMask& mask);

/// Share of total feature mass carried by the kept points:
/// sum_{i kept} f_i / sum_i f_i. Returns 1 when the cloud has no feature
/// mass at all.
double feature_mass_retained(const Eigen::VectorXd& feature, const SelectionMask& mask);

}  // namespace pcsimp
