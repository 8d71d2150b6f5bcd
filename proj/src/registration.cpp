// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/registration.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "pcsimp/baseline.hpp"
#include "pcsimp/kdtree.hpp"

namespace pcsimp {

RigidTransform best_rigid_transform(const PointCloud& source, const PointCloud& target) {
    const int n = source.size();
    if (n != target.size()) throw std::invalid_argument("best_rigid_transform: size mismatch");
    if (n < 3) throw std::invalid_argument("best_rigid_transform: need at least 3 point pairs");

    Eigen::Vector3d centroid_src = Eigen::Vector3d::Zero();
    Eigen::Vector3d centroid_tgt = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i) {
        centroid_src += source[i];
        centroid_tgt += target[i];
    }
    centroid_src /= static_cast<double>(n);
    centroid_tgt /= static_cast<double>(n);

    Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
    for (int i = 0; i < n; ++i)
        cross += (source[i] - centroid_src) * (target[i] - centroid_tgt).transpose();

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d sv = svd.singularValues();
    // Rank <= 1 leaves the rotation about the dominant axis undetermined.
    if (sv(1) <= 1e-12 * std::max(sv(0), 1e-300))
        throw std::invalid_argument(
            "best_rigid_transform: degenerate configuration (collinear or coincident points)");

    Eigen::Matrix3d diag = Eigen::Matrix3d::Identity();
    if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0.0) diag(2, 2) = -1.0;
    Eigen::Matrix3d rotation = svd.matrixV() * diag * svd.matrixU().transpose();
    // Round off orthonormality drift before the constructor validates it.
    Eigen::JacobiSVD<Eigen::Matrix3d> polish(rotation, Eigen::ComputeFullU | Eigen::ComputeFullV);
    rotation = polish.matrixU() * polish.matrixV().transpose();

    const Eigen::Vector3d translation = centroid_tgt - rotation * centroid_src;
    return RigidTransform(rotation, translation);
}

IcpResult icp(const PointCloud& source, const PointCloud& target, const IcpConfig& config) {
    if (source.size() < 3 || target.size() < 3)
        throw std::invalid_argument("icp: both clouds need at least 3 points");
    if (config.max_iters < 1) throw std::invalid_argument("icp: max_iters must be >= 1");
    if (!(config.trans_tol > 0.0)) throw std::invalid_argument("icp: trans_tol must be positive");

    const KdTree tree(target);
    PointCloud current = source;
    IcpResult result;

    PointCloud matched;
    matched.points.resize(source.points.size());

    for (int iter = 0; iter < config.max_iters; ++iter) {
        const int n = current.size();
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) matched[i] = target[tree.nearest(current[i]).index];

        const RigidTransform increment = best_rigid_transform(current, matched);
        current = apply_transform(current, increment);
        result.transform = increment * result.transform;
        result.iterations = iter + 1;

        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += (current[i] - matched[i]).squaredNorm();
        result.mse = acc / static_cast<double>(n);
        result.error_trace.push_back(result.mse);

        const double change = (increment.homogeneous() - Eigen::Matrix4d::Identity()).norm();
        if (change < config.trans_tol) break;
    }
    return result;
}

SimplifierMethod parse_method(const std::string& name) {
    if (name == "original") return SimplifierMethod::original;
    if (name == "uniform") return SimplifierMethod::uniform;
    if (name == "proposed") return SimplifierMethod::proposed;
    throw std::invalid_argument("unknown method '" + name + "' (expected original, uniform or proposed)");
}

namespace {
PointCloud simplified_copy(const PointCloud& cloud, SimplifierMethod method, double alpha,
                           const SimplifyParams& params) {
    switch (method) {
        case SimplifierMethod::original:
            return cloud;
        case SimplifierMethod::uniform:
            return select(cloud, uniform_voxel(cloud, alpha));
        case SimplifierMethod::proposed: {
            SimplifyParams p = params;
            p.alpha = alpha;
            return select(cloud, simplify(cloud, p));
        }
    }
    throw std::logic_error("unreachable");
}
}  // namespace

double registration_experiment(const PointCloud& cloud, const RigidTransform& transform,
                               SimplifierMethod method, double alpha,
                               const SimplifyParams& simplify_params, const IcpConfig& icp_config) {
    const PointCloud transformed = apply_transform(cloud, transform);

    const PointCloud target = simplified_copy(cloud, method, alpha, simplify_params);
    const PointCloud moving = simplified_copy(transformed, method, alpha, simplify_params);

    const IcpResult reg = icp(moving, target, icp_config);

    const PointCloud registered_full = apply_transform(transformed, reg.transform);
    return rmse(registered_full, cloud);
}

}  // namespace pcsimp
