// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pcsimp/core.hpp"

using namespace pcsimp;

namespace {

PointCloud small_cloud() {
    return PointCloud({{0, 0, 0}, {1, 0, 0}, {0, 2, 0}, {1, 1, 1}, {3, -1, 2}});
}

RigidTransform random_transform(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::Vector3d axis(unit(rng), unit(rng), unit(rng));
    if (axis.norm() < 1e-6) axis = Eigen::Vector3d::UnitX();
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    return RigidTransform::from_axis_angle(axis, angle(rng),
                                           Eigen::Vector3d(unit(rng), unit(rng), unit(rng)));
}

}  // namespace

TEST_SUITE_BEGIN("core");

TEST_CASE("identity transform leaves the cloud unchanged") {
    const PointCloud cloud = small_cloud();
    const PointCloud moved = apply_transform(cloud, RigidTransform::identity());
    REQUIRE(moved.size() == cloud.size());
    for (int i = 0; i < cloud.size(); ++i) CHECK(moved[i] == cloud[i]);
}

TEST_CASE("180 degree rotation about z flips x") {
    const RigidTransform t =
        RigidTransform::from_axis_angle({0, 0, 1}, std::numbers::pi, Eigen::Vector3d::Zero());
    const PointCloud out = apply_transform(PointCloud({{1, 0, 0}}), t);
    CHECK(out[0].isApprox(Eigen::Vector3d(-1, 0, 0), 1e-12));
}

TEST_CASE("transform composed with its inverse is the identity") {
    std::mt19937 rng(7);
    const PointCloud cloud = small_cloud();
    for (int trial = 0; trial < 20; ++trial) {
        const RigidTransform t = random_transform(rng);
        const PointCloud back = apply_transform(apply_transform(cloud, t), t.inverse());
        for (int i = 0; i < cloud.size(); ++i)
            CHECK((back[i] - cloud[i]).norm() < 1e-12);
    }
}

TEST_CASE("rigid transforms preserve pairwise distances") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unit(-5.0, 5.0);
    PointCloud cloud;
    for (int i = 0; i < 40; ++i) cloud.points.emplace_back(unit(rng), unit(rng), unit(rng));
    const RigidTransform t = random_transform(rng);
    const PointCloud moved = apply_transform(cloud, t);
    for (int i = 0; i < cloud.size(); ++i)
        for (int j = i + 1; j < cloud.size(); ++j) {
            const double before = (cloud[i] - cloud[j]).norm();
            const double after = (moved[i] - moved[j]).norm();
            CHECK(std::abs(after - before) <= 1e-9 * std::max(1.0, before));
        }
}

TEST_CASE("rotation validation rejects non-orthonormal and reflecting matrices") {
    Eigen::Matrix3d scaled = 1.5 * Eigen::Matrix3d::Identity();
    CHECK_THROWS_AS(RigidTransform(scaled, Eigen::Vector3d::Zero()), std::invalid_argument);

    Eigen::Matrix3d mirror = Eigen::Matrix3d::Identity();
    mirror(0, 0) = -1.0;  // orthonormal but det = -1
    CHECK_THROWS_AS(RigidTransform(mirror, Eigen::Vector3d::Zero()), std::invalid_argument);
}

TEST_CASE("rmse basics") {
    const PointCloud cloud = small_cloud();
    CHECK(rmse(cloud, cloud) == 0.0);

    const PointCloud a({{0, 0, 0}});
    const PointCloud b({{0, 3, 4}});
    CHECK(rmse(a, b) == doctest::Approx(5.0).epsilon(1e-14));

    // Two points with offsets (3,0,0) and (0,4,0): sqrt((9 + 16) / 2).
    const PointCloud ref({{0, 0, 0}, {10, 10, 10}});
    const PointCloud est({{3, 0, 0}, {10, 14, 10}});
    CHECK(rmse(est, ref) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-14));

    CHECK_THROWS_AS(rmse(a, cloud), std::invalid_argument);
}

TEST_CASE("rmse of a transformed cloud against itself is zero") {
    std::mt19937 rng(3);
    const RigidTransform t = random_transform(rng);
    const PointCloud moved = apply_transform(small_cloud(), t);
    CHECK(rmse(moved, moved) == 0.0);
}

TEST_CASE("select extracts masked points in order") {
    const PointCloud cloud = small_cloud();

    SelectionMask all;
    all.kept = {0, 1, 2, 3, 4};
    const PointCloud full = select(cloud, all);
    REQUIRE(full.size() == cloud.size());
    for (int i = 0; i < cloud.size(); ++i) CHECK(full[i] == cloud[i]);

    SelectionMask single;
    single.kept = {0};
    const PointCloud one = select(cloud, single);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == cloud[0]);

    SelectionMask pair;
    pair.kept = {1, 3};
    const PointCloud two = select(cloud, pair);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == cloud[1]);
    CHECK(two[1] == cloud[3]);
    CHECK(two.size() == pair.size());

    SelectionMask bad;
    bad.kept = {2, 9};
    CHECK_THROWS_AS(select(cloud, bad), std::out_of_range);
}

TEST_CASE("selection budget rounds the rate") {
    CHECK(selection_budget(1.0, 7) == 7);
    CHECK(selection_budget(0.1, 291220) == 29122);
    CHECK(selection_budget(0.05, 291220) == 14561);
    CHECK_THROWS_AS(selection_budget(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(selection_budget(1.5, 10), std::invalid_argument);
}

TEST_SUITE_END();
