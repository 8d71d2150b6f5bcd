// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Core data model: point clouds, subset selections, rigid transforms and
// the distance/error metrics shared by the rest of the library.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace pcsimp {

/// A point cloud is an ordered list of 3D points. Indices are dense and
/// stable: simplification results refer back to positions in this list.
/// Coordinates are kept as 64-bit floats regardless of file precision.
struct PointCloud {
    std::vector<Eigen::Vector3d> points;

    PointCloud() = default;
    explicit PointCloud(std::vector<Eigen::Vector3d> pts) : points(std::move(pts)) {}

    int size() const { return static_cast<int>(points.size()); }
    bool empty() const { return points.empty(); }
    const Eigen::Vector3d& operator[](int i) const { return points[static_cast<size_t>(i)]; }
    Eigen::Vector3d& operator[](int i) { return points[static_cast<size_t>(i)]; }

    /// True iff every coordinate is finite.
    bool all_finite() const;

    /// Tight axis-aligned bounding box (min corner, max corner). Cloud must be non-empty.
    std::pair<Eigen::Vector3d, Eigen::Vector3d> bounding_box() const;

    /// Length of the bounding-box diagonal.
    double bounding_box_diagonal() const;
};

/// Subset of original indices kept by a simplifier, together with the
/// target rate alpha. Output clouds are strict subsets of the input:
/// no points are synthesized.
struct SelectionMask {
    std::vector<int> kept;  // ascending original indices
    double rate = 1.0;      // alpha in (0, 1]

    int size() const { return static_cast<int>(kept.size()); }
};

/// Rotation + translation. The rotation is validated to be a proper
/// orthonormal matrix (R^T R = I and det R = +1, both to 1e-9).
class RigidTransform {
public:
    RigidTransform() : rotation_(Eigen::Matrix3d::Identity()), translation_(Eigen::Vector3d::Zero()) {}

    /// Throws std::invalid_argument if the rotation is not proper orthonormal.
    RigidTransform(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);

    static RigidTransform identity() { return RigidTransform(); }

    /// Axis-angle constructor; axis need not be normalized.
    static RigidTransform from_axis_angle(const Eigen::Vector3d& axis, double angle_rad,
                                          const Eigen::Vector3d& translation);

    const Eigen::Matrix3d& rotation() const { return rotation_; }
    const Eigen::Vector3d& translation() const { return translation_; }

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation_ * p + translation_; }

    RigidTransform inverse() const;

    /// Composition: (a * b).apply(p) == a.apply(b.apply(p)).
    RigidTransform operator*(const RigidTransform& other) const;

    /// 4x4 homogeneous matrix.
    Eigen::Matrix4d homogeneous() const;

private:
    Eigen::Matrix3d rotation_;
    Eigen::Vector3d translation_;
};

/// Apply a rigid transform to every point, preserving index order.
PointCloud apply_transform(const PointCloud& cloud, const RigidTransform& t);

/// Root mean square error between clouds of equal size under identity
/// correspondence (index i in one cloud pairs with index i in the other).
/// Throws std::invalid_argument on size mismatch.
double rmse(const PointCloud& estimated, const PointCloud& reference);

/// Extract the masked points in ascending original-index order.
/// Throws std::out_of_range on an invalid index.
PointCloud select(const PointCloud& cloud, const SelectionMask& mask);

/// round(alpha * n), the global selection budget for rate alpha.
int selection_budget(double alpha, int n);

}  // namespace pcsimp
