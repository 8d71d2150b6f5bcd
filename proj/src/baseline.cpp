// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace pcsimp {

namespace {

// 21 bits per axis; the bisection never needs finer than ~1e-6 of the extent.
constexpr int kMaxCellsPerAxis = 1 << 21;

struct VoxelAssignment {
    std::vector<int64_t> voxel_of;     // per point
    std::vector<double> dist_to_rep;   // distance to the point centroid of its voxel
    std::vector<int> keeper_of_voxel;  // representative point per voxel, dense order
    int voxel_count = 0;
};

VoxelAssignment assign(const PointCloud& cloud, const Eigen::Vector3d& lo, double edge) {
    const int n = cloud.size();
    VoxelAssignment out;
    out.voxel_of.resize(static_cast<size_t>(n));

    auto cell = [&](double coord, double origin) {
        int c = static_cast<int>(std::floor((coord - origin) / edge));
        return std::clamp(c, 0, kMaxCellsPerAxis - 1);
    };
    for (int i = 0; i < n; ++i) {
        const auto& p = cloud[i];
        const int64_t ix = cell(p.x(), lo.x());
        const int64_t iy = cell(p.y(), lo.y());
        const int64_t iz = cell(p.z(), lo.z());
        out.voxel_of[static_cast<size_t>(i)] = (ix << 42) | (iy << 21) | iz;
    }

    // Point centroid per voxel.
    std::unordered_map<int64_t, std::pair<Eigen::Vector3d, int>> sums;
    sums.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& slot = sums.try_emplace(out.voxel_of[static_cast<size_t>(i)],
                                      std::make_pair(Eigen::Vector3d::Zero(), 0))
                         .first->second;
        slot.first += cloud[i];
        slot.second += 1;
    }
    out.voxel_count = static_cast<int>(sums.size());

    // Representative per voxel: nearest to the centroid, ties to the
    // smaller index. Iterating points in index order keeps this
    // deterministic regardless of hash-map layout.
    std::unordered_map<int64_t, int> rep;
    rep.reserve(sums.size());
    out.dist_to_rep.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& slot = sums.at(out.voxel_of[static_cast<size_t>(i)]);
        const Eigen::Vector3d centroid = slot.first / static_cast<double>(slot.second);
        out.dist_to_rep[static_cast<size_t>(i)] = (cloud[i] - centroid).norm();
        auto [it, inserted] = rep.try_emplace(out.voxel_of[static_cast<size_t>(i)], i);
        if (!inserted) {
            const int cur = it->second;
            if (out.dist_to_rep[static_cast<size_t>(i)] < out.dist_to_rep[static_cast<size_t>(cur)])
                it->second = i;
        }
    }
    out.keeper_of_voxel.reserve(rep.size());
    for (int i = 0; i < n; ++i) {
        auto it = rep.find(out.voxel_of[static_cast<size_t>(i)]);
        if (it != rep.end() && it->second == i) out.keeper_of_voxel.push_back(i);
    }
    return out;
}

}  // namespace

SelectionMask uniform_voxel(const PointCloud& cloud, double alpha) {
    if (cloud.empty()) throw std::invalid_argument("uniform_voxel: empty cloud");
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("uniform_voxel: alpha must be in (0, 1]");
    const int n = cloud.size();
    const int target = selection_budget(alpha, n);

    SelectionMask mask;
    mask.rate = alpha;
    if (target >= n) {
        mask.kept.resize(static_cast<size_t>(n));
        std::iota(mask.kept.begin(), mask.kept.end(), 0);
        return mask;
    }
    if (target == 0) return mask;

    const auto [lo, hi] = cloud.bounding_box();
    const double diagonal = (hi - lo).norm();
    const double max_extent = std::max({hi.x() - lo.x(), hi.y() - lo.y(), hi.z() - lo.z(), 1e-300});

    // Bisection on the voxel edge: larger edges keep fewer voxels.
    double edge_lo = max_extent / static_cast<double>(kMaxCellsPerAxis / 2);
    double edge_hi = std::max(diagonal, edge_lo) * 2.0;
    VoxelAssignment best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 20; ++it) {
        const double edge = 0.5 * (edge_lo + edge_hi);
        VoxelAssignment cur = assign(cloud, lo, edge);
        const int count = cur.voxel_count;
        const double gap = std::abs(count - target);
        if (gap < best_gap) {
            best = std::move(cur);
            best_gap = gap;
        }
        if (best_gap <= 0.01 * static_cast<double>(target)) break;
        if (count > target)
            edge_lo = edge;
        else
            edge_hi = edge;
    }

    std::vector<char> kept_flag(static_cast<size_t>(n), 0);
    for (int i : best.keeper_of_voxel) kept_flag[static_cast<size_t>(i)] = 1;
    int kept_count = static_cast<int>(best.keeper_of_voxel.size());

    auto by_rank = [&](int a, int b) {
        if (best.dist_to_rep[static_cast<size_t>(a)] != best.dist_to_rep[static_cast<size_t>(b)])
            return best.dist_to_rep[static_cast<size_t>(a)] < best.dist_to_rep[static_cast<size_t>(b)];
        return a < b;
    };

    if (kept_count > target) {
        // Trim: drop the representatives farthest from their centroid.
        std::vector<int> order = best.keeper_of_voxel;
        std::sort(order.begin(), order.end(), by_rank);
        for (int i = kept_count - 1; i >= target; --i)
            kept_flag[static_cast<size_t>(order[static_cast<size_t>(i)])] = 0;
    } else if (kept_count < target) {
        // Pad: pull in the unkept points closest to their voxel centroid.
        std::vector<int> pool;
        pool.reserve(static_cast<size_t>(n - kept_count));
        for (int i = 0; i < n; ++i)
            if (!kept_flag[static_cast<size_t>(i)]) pool.push_back(i);
        std::sort(pool.begin(), pool.end(), by_rank);
        for (int i = 0; i < target - kept_count; ++i)
            kept_flag[static_cast<size_t>(pool[static_cast<size_t>(i)])] = 1;
    }

    mask.kept.reserve(static_cast<size_t>(target));
    for (int i = 0; i < n; ++i)
        if (kept_flag[static_cast<size_t>(i)]) mask.kept.push_back(i);
    return mask;
}

SelectionMask contour_only(const PointCloud& cloud, const SimplifyParams& params) {
    SimplifyParams contour = params;
    contour.lambda = 0.0;
    return simplify(cloud, contour);
}

}  // namespace pcsimp
