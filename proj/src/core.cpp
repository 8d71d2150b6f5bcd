// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcsimp {

bool PointCloud::all_finite() const {
    for (const auto& p : points) {
        if (!p.allFinite()) return false;
    }
    return true;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> PointCloud::bounding_box() const {
    if (points.empty()) throw std::invalid_argument("bounding_box: empty cloud");
    Eigen::Vector3d lo = points.front();
    Eigen::Vector3d hi = points.front();
    for (const auto& p : points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return {lo, hi};
}

double PointCloud::bounding_box_diagonal() const {
    auto [lo, hi] = bounding_box();
    return (hi - lo).norm();
}

RigidTransform::RigidTransform(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation)
    : rotation_(rotation), translation_(translation) {
    const Eigen::Matrix3d gram = rotation.transpose() * rotation;
    if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("RigidTransform: rotation is not orthonormal");
    if (std::abs(rotation.determinant() - 1.0) > 1e-9)
        throw std::invalid_argument("RigidTransform: rotation determinant is not +1");
}

RigidTransform RigidTransform::from_axis_angle(const Eigen::Vector3d& axis, double angle_rad,
                                               const Eigen::Vector3d& translation) {
    if (axis.norm() == 0.0) throw std::invalid_argument("from_axis_angle: zero axis");
    Eigen::AngleAxisd aa(angle_rad, axis.normalized());
    return RigidTransform(aa.toRotationMatrix(), translation);
}

RigidTransform RigidTransform::inverse() const {
    RigidTransform inv;
    inv.rotation_ = rotation_.transpose();
    inv.translation_ = -(rotation_.transpose() * translation_);
    return inv;
}

RigidTransform RigidTransform::operator*(const RigidTransform& other) const {
    RigidTransform out;
    out.rotation_ = rotation_ * other.rotation_;
    out.translation_ = rotation_ * other.translation_ + translation_;
    return out;
}

Eigen::Matrix4d RigidTransform::homogeneous() const {
    Eigen::Matrix4d h = Eigen::Matrix4d::Identity();
    h.topLeftCorner<3, 3>() = rotation_;
    h.topRightCorner<3, 1>() = translation_;
    return h;
}

PointCloud apply_transform(const PointCloud& cloud, const RigidTransform& t) {
    PointCloud out;
    out.points.reserve(cloud.points.size());
    for (const auto& p : cloud.points) out.points.push_back(t.apply(p));
    return out;
}

double rmse(const PointCloud& estimated, const PointCloud& reference) {
    if (estimated.size() != reference.size())
        throw std::invalid_argument("rmse: size mismatch (" + std::to_string(estimated.size()) +
                                    " vs " + std::to_string(reference.size()) + ")");
    if (estimated.empty()) return 0.0;
    double sum = 0.0;
    for (int i = 0; i < estimated.size(); ++i)
        sum += (estimated[i] - reference[i]).squaredNorm();
    return std::sqrt(sum / static_cast<double>(estimated.size()));
}

PointCloud select(const PointCloud& cloud, const SelectionMask& mask) {
    PointCloud out;
    out.points.reserve(mask.kept.size());
    int prev = -1;
    for (int idx : mask.kept) {
        if (idx < 0 || idx >= cloud.size())
            throw std::out_of_range("select: index " + std::to_string(idx) + " out of range [0, " +
                                    std::to_string(cloud.size()) + ")");
        if (idx <= prev) throw std::invalid_argument("select: mask indices must be strictly ascending");
        prev = idx;
        out.points.push_back(cloud[idx]);
    }
    return out;
}

int selection_budget(double alpha, int n) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("selection_budget: alpha must be in (0, 1]");
    return static_cast<int>(std::llround(alpha * static_cast<double>(n)));
}

}  // namespace pcsimp
