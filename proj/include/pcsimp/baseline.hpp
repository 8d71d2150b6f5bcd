// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference simplifiers. Both return strict subsets of the input of
// exactly round(alpha*N) points, so every method is comparable under the
// same SelectionMask contract.

#pragma once

#include "pcsimp/core.hpp"
#include "pcsimp/partition.hpp"

namespace pcsimp {

/// Uniform voxel-grid sampling: the bounding box is divided into cubic
/// voxels and each nonempty voxel keeps the point nearest the centroid of
/// the points it contains. The voxel edge length is found by bisection so
/// the kept count lands within 1% of round(alpha*N), then the selection is
/// trimmed or padded to the exact count by distance-to-centroid rank.
SelectionMask uniform_voxel(const PointCloud& cloud, double alpha);

/// Contour-only mode: the optimization pipeline with the uniformity term
/// switched off (lambda = 0). Keeps almost exclusively sharp features.
SelectionMask contour_only(const PointCloud& cloud, const SimplifyParams& params);

}  // namespace pcsimp
