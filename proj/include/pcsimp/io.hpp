// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Point cloud file I/O. Supported formats:
//   - PLY, ascii and binary_little_endian, float32/float64 vertex
//     coordinates; other fixed-size vertex properties are skipped.
//   - XYZ, whitespace-separated coordinates, one point per line.
//   - OFF, vertex list only.
// Text writers print 9 significant digits, which round-trips float32
// sources exactly; binary PLY round-trips doubles bit-exactly.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "pcsimp/core.hpp"

namespace pcsimp {

enum class CloudFileFormat {
    ply_ascii,
    ply_binary_le,
    xyz,
    off,
};

/// Flat, line-oriented metric report ("name value" per line). std::map
/// keeps the key order deterministic.
using StatsReport = std::map<std::string, double>;

/// Parse failure with file position context.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Read a point cloud. When `format` is not given it is inferred from the
/// magic bytes ("ply", "OFF") and then the file extension.
/// Throws ParseError on malformed input, std::runtime_error on I/O failure.
PointCloud read_cloud(const std::filesystem::path& path,
                      std::optional<CloudFileFormat> format = std::nullopt);

/// Write a point cloud in the given format.
void write_cloud(const PointCloud& cloud, const std::filesystem::path& path, CloudFileFormat format);

/// Write "key value" lines sorted by key.
void write_stats(const StatsReport& report, const std::filesystem::path& path);

/// Format a metric value the way write_stats does (9 significant digits).
std::string format_stat(double value);

}  // namespace pcsimp
