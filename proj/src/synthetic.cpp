// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pcsimp {

double DeterministicRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u is kept away from zero so the log is finite.
    const double u = std::max(uniform(), 0x1.0p-60);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
}

int LabeledCloud::edge_count() const {
    int c = 0;
    for (uint8_t e : edge) c += e;
    return c;
}

LabeledCloud cube_surface(int count, uint64_t seed, double edge_band) {
    if (count < 1) throw std::invalid_argument("cube_surface: count must be >= 1");
    // Scale the unit cube so the mean point spacing is one length unit:
    // count points over a surface area of 6 s^2.
    const double scale = std::sqrt(static_cast<double>(count) / 6.0);
    DeterministicRng rng(seed);
    LabeledCloud out;
    out.cloud.points.reserve(static_cast<size_t>(count));
    out.edge.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int face = rng.uniform_int(6);
        const double u = rng.uniform();
        const double v = rng.uniform();
        Eigen::Vector3d p;
        switch (face) {
            case 0: p = {0.0, u, v}; break;
            case 1: p = {1.0, u, v}; break;
            case 2: p = {u, 0.0, v}; break;
            case 3: p = {u, 1.0, v}; break;
            case 4: p = {u, v, 0.0}; break;
            default: p = {u, v, 1.0}; break;
        }
        // In-face distance to the face boundary equals the 3D distance to
        // the nearest cube edge; the band is a fraction of the side length.
        const double border = std::min(std::min(u, 1.0 - u), std::min(v, 1.0 - v));
        out.cloud.points.push_back(scale * p);
        out.edge.push_back(border <= edge_band ? 1 : 0);
    }
    return out;
}

LabeledCloud sphere_surface(int count, uint64_t seed, double scale) {
    if (count < 1) throw std::invalid_argument("sphere_surface: count must be >= 1");
    // Unit mean spacing at scale 1: area 4 pi r^2 = count.
    const double radius = scale * std::sqrt(static_cast<double>(count) / (4.0 * std::numbers::pi));
    DeterministicRng rng(seed);
    LabeledCloud out;
    out.cloud.points.reserve(static_cast<size_t>(count));
    out.edge.assign(static_cast<size_t>(count), 0);
    for (int i = 0; i < count; ++i) {
        Eigen::Vector3d dir(rng.normal(), rng.normal(), rng.normal());
        const double norm = dir.norm();
        if (norm < 1e-12) {
            dir = {1.0, 0.0, 0.0};
        } else {
            dir /= norm;
        }
        out.cloud.points.push_back(radius * dir);
    }
    return out;
}

namespace {

// Axis-aligned rectangle patch with an outward-facing constant axis.
struct Patch {
    int axis;            // constant coordinate axis
    double level;        // value on that axis
    int ua, va;          // the two free axes
    double u0, u1, v0, v1;
    double area() const { return (u1 - u0) * (v1 - v0); }
};

struct Segment {
    Eigen::Vector3d a, b;
};

double segment_distance(const Eigen::Vector3d& p, const Segment& s) {
    const Eigen::Vector3d d = s.b - s.a;
    const double len_sq = d.squaredNorm();
    const double t = len_sq > 0.0 ? std::clamp((p - s.a).dot(d) / len_sq, 0.0, 1.0) : 0.0;
    return (p - (s.a + t * d)).norm();
}

void add_box_edges(std::vector<Segment>& segs, const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
    const double xs[2] = {lo.x(), hi.x()}, ys[2] = {lo.y(), hi.y()}, zs[2] = {lo.z(), hi.z()};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            segs.push_back({{lo.x(), ys[a], zs[b]}, {hi.x(), ys[a], zs[b]}});
            segs.push_back({{xs[a], lo.y(), zs[b]}, {xs[a], hi.y(), zs[b]}});
            segs.push_back({{xs[a], ys[b], lo.z()}, {xs[a], ys[b], hi.z()}});
        }
}

}  // namespace

LabeledCloud slotted_block(int count, uint64_t seed, double edge_band) {
    if (count < 1) throw std::invalid_argument("slotted_block: count must be >= 1");

    // Block [0,2]x[0,1]x[0,1]; two slots milled into the top face, each
    // x-width 0.2, y in [0.25, 0.75], floor at z = 0.6.
    const double slot_x[2] = {0.4, 1.4};
    const double slot_w = 0.2, slot_y0 = 0.25, slot_y1 = 0.75, slot_z = 0.6;

    std::vector<Patch> patches = {
        {0, 0.0, 1, 2, 0.0, 1.0, 0.0, 1.0},  // x = 0 face
        {0, 2.0, 1, 2, 0.0, 1.0, 0.0, 1.0},  // x = 2 face
        {1, 0.0, 0, 2, 0.0, 2.0, 0.0, 1.0},  // y = 0 face
        {1, 1.0, 0, 2, 0.0, 2.0, 0.0, 1.0},  // y = 1 face
        {2, 0.0, 0, 1, 0.0, 2.0, 0.0, 1.0},  // bottom
    };
    // Top face as patches around the two slot openings (y strips + x gaps).
    {
        double gaps[3][2] = {{0.0, slot_x[0]}, {slot_x[0] + slot_w, slot_x[1]}, {slot_x[1] + slot_w, 2.0}};
        for (auto& g : gaps) patches.push_back({2, 1.0, 0, 1, g[0], g[1], 0.0, 1.0});
        for (double x0 : slot_x) {
            patches.push_back({2, 1.0, 0, 1, x0, x0 + slot_w, 0.0, slot_y0});
            patches.push_back({2, 1.0, 0, 1, x0, x0 + slot_w, slot_y1, 1.0});
        }
    }
    // Slot cavities: four walls and a floor each.
    for (double x0 : slot_x) {
        const double x1 = x0 + slot_w;
        patches.push_back({0, x0, 1, 2, slot_y0, slot_y1, slot_z, 1.0});
        patches.push_back({0, x1, 1, 2, slot_y0, slot_y1, slot_z, 1.0});
        patches.push_back({1, slot_y0, 0, 2, x0, x1, slot_z, 1.0});
        patches.push_back({1, slot_y1, 0, 2, x0, x1, slot_z, 1.0});
        patches.push_back({2, slot_z, 0, 1, x0, x1, slot_y0, slot_y1});
    }

    std::vector<Segment> edges;
    add_box_edges(edges, {0, 0, 0}, {2, 1, 1});
    for (double x0 : slot_x) {
        const double x1 = x0 + slot_w;
        // Slot rim at the top face and the cavity floor rectangle.
        for (double z : {1.0, slot_z}) {
            edges.push_back({{x0, slot_y0, z}, {x1, slot_y0, z}});
            edges.push_back({{x0, slot_y1, z}, {x1, slot_y1, z}});
            edges.push_back({{x0, slot_y0, z}, {x0, slot_y1, z}});
            edges.push_back({{x1, slot_y0, z}, {x1, slot_y1, z}});
        }
        // Vertical cavity corners.
        edges.push_back({{x0, slot_y0, slot_z}, {x0, slot_y0, 1.0}});
        edges.push_back({{x0, slot_y1, slot_z}, {x0, slot_y1, 1.0}});
        edges.push_back({{x1, slot_y0, slot_z}, {x1, slot_y0, 1.0}});
        edges.push_back({{x1, slot_y1, slot_z}, {x1, slot_y1, 1.0}});
    }

    double total_area = 0.0;
    for (const auto& patch : patches) total_area += patch.area();
    const double scale = std::sqrt(static_cast<double>(count) / total_area);  // unit mean spacing

    DeterministicRng rng(seed);
    LabeledCloud out;
    out.cloud.points.reserve(static_cast<size_t>(count));
    out.edge.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        double pick = rng.uniform() * total_area;
        size_t chosen = 0;
        for (; chosen + 1 < patches.size(); ++chosen) {
            if (pick < patches[chosen].area()) break;
            pick -= patches[chosen].area();
        }
        const Patch& patch = patches[chosen];
        Eigen::Vector3d p;
        p[patch.axis] = patch.level;
        p[patch.ua] = rng.uniform(patch.u0, patch.u1);
        p[patch.va] = rng.uniform(patch.v0, patch.v1);

        double dist = std::numeric_limits<double>::infinity();
        for (const auto& seg : edges) dist = std::min(dist, segment_distance(p, seg));
        out.cloud.points.push_back(scale * p);
        out.edge.push_back(dist <= edge_band ? 1 : 0);
    }
    return out;
}

LabeledCloud generate_shape(const std::string& shape, int count, uint64_t seed) {
    if (shape == "cube") return cube_surface(count, seed);
    if (shape == "sphere") return sphere_surface(count, seed);
    if (shape == "block") return slotted_block(count, seed);
    throw std::invalid_argument("unknown shape '" + shape + "' (expected cube, sphere or block)");
}

}  // namespace pcsimp
