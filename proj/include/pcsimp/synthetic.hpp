// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic synthetic test shapes. Sampling uses an explicit
// mt19937_64-to-double mapping so identical seeds give identical clouds
// (and file bytes) across platforms and standard-library versions.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pcsimp/core.hpp"

namespace pcsimp {

/// Uniform [0,1) / integer / unit-normal draws with a pinned bit mapping.
class DeterministicRng {
public:
    explicit DeterministicRng(uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int n) { return static_cast<int>(engine_() % static_cast<uint64_t>(n)); }
    double normal();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Point cloud plus a per-point sharp-edge label.
struct LabeledCloud {
    PointCloud cloud;
    std::vector<uint8_t> edge;  // 1 = within the edge band of a sharp crease

    int edge_count() const;
};

/// All shapes are emitted with a mean point spacing of one length unit,
/// so feature magnitudes and lambda settings are comparable across counts.

/// Points sampled uniformly on a cube surface. A point is edge-labeled
/// when it lies within `edge_band` (a fraction of the side length) of one
/// of the 12 cube edges; that labels roughly 4*edge_band of the points.
LabeledCloud cube_surface(int count, uint64_t seed, double edge_band = 0.0125);

/// Points sampled uniformly on a sphere; no point is edge-labeled.
LabeledCloud sphere_surface(int count, uint64_t seed, double scale = 1.0);

/// A 2x1x1 machined block with two rectangular slots milled into the top
/// face; edges are the outer box creases and the slot rims/floors.
/// `edge_band` is in canonical (pre-scaling) units.
LabeledCloud slotted_block(int count, uint64_t seed, double edge_band = 0.02);

/// Named dispatch for the generator CLI: cube | sphere | block.
LabeledCloud generate_shape(const std::string& shape, int count, uint64_t seed);

}  // namespace pcsimp
