// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Point-to-point ICP and the registration harness that demonstrates
// simplification as a preprocessing step: simplify both clouds, register
// the simplified pair, evaluate the recovered transform on the full
// clouds.

#pragma once

#include <string>
#include <vector>

#include "pcsimp/core.hpp"
#include "pcsimp/partition.hpp"

namespace pcsimp {

struct IcpConfig {
    int max_iters = 100;
    /// Stop when the Frobenius change of the homogeneous transform between
    /// iterations drops below this.
    double trans_tol = 1e-8;
};

struct IcpResult {
    RigidTransform transform;      // maps source onto target
    double mse = 0.0;              // final mean squared correspondence error
    int iterations = 0;
    std::vector<double> error_trace;  // per-iteration mse, non-increasing
};

/// Least-squares rigid alignment of index-paired clouds: minimizes
/// sum_i ||R s_i + t - t_i||^2 by cross-covariance SVD with reflection
/// correction, so det(R) = +1 always. Throws std::invalid_argument on a
/// size mismatch, fewer than 3 points, or a rotationally ambiguous
/// (collinear/coincident) configuration.
RigidTransform best_rigid_transform(const PointCloud& source, const PointCloud& target);

/// Classic alternation of nearest-neighbor correspondence and rigid
/// alignment. The correspondence error is non-increasing per iteration.
IcpResult icp(const PointCloud& source, const PointCloud& target, const IcpConfig& config = {});

enum class SimplifierMethod { original, uniform, proposed };

SimplifierMethod parse_method(const std::string& name);

/// The evaluation protocol: perturb the cloud with `transform`, simplify
/// original and perturbed clouds independently with the same parameters,
/// register the simplified pair with ICP, then apply the estimate to the
/// full perturbed cloud and report the identity-correspondence RMSE
/// against the full original.
double registration_experiment(const PointCloud& cloud, const RigidTransform& transform,
                               SimplifierMethod method, double alpha,
                               const SimplifyParams& simplify_params = {},
                               const IcpConfig& icp_config = {});

}  // namespace pcsimp
