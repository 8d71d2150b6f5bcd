// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/io.hpp"

#include <algorithm>
#include <bit>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace pcsimp {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_double(std::string_view tok, const std::string& where) {
    double value = 0.0;
    const char* begin = tok.data();
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(where + ": cannot parse number '" + std::string(tok) + "'");
    return value;
}

long long parse_int(std::string_view tok, const std::string& where) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(where + ": cannot parse integer '" + std::string(tok) + "'");
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

void check_finite(const Eigen::Vector3d& p, const std::string& where) {
    if (!p.allFinite()) throw ParseError(where + ": non-finite coordinate");
}

// ---------------------------------------------------------------------------
// PLY

struct PlyProperty {
    std::string name;
    int byte_size = 0;    // fixed-size scalar types only
    bool is_float = false;
    bool is_double = false;
};

int ply_type_size(const std::string& type) {
    if (type == "char" || type == "int8" || type == "uchar" || type == "uint8") return 1;
    if (type == "short" || type == "int16" || type == "ushort" || type == "uint16") return 2;
    if (type == "int" || type == "int32" || type == "uint" || type == "uint32" || type == "float" ||
        type == "float32")
        return 4;
    if (type == "double" || type == "float64" || type == "int64" || type == "uint64") return 8;
    return 0;
}

struct PlyHeader {
    bool binary = false;
    long long vertex_count = 0;
    std::vector<PlyProperty> vertex_props;
    int x = -1, y = -1, z = -1;  // property slots of the coordinates
    size_t body_offset = 0;      // byte offset right after "end_header\n"
    int header_lines = 0;
};

PlyHeader parse_ply_header(std::istream& in, const std::string& fname) {
    PlyHeader h;
    std::string line;
    int lineno = 0;
    auto where = [&]() { return fname + ":" + std::to_string(lineno); };

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        h.body_offset += line.size() + 1;  // getline consumed the '\n'
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next_line() || line != "ply") throw ParseError(where() + ": missing 'ply' magic");
    if (!next_line()) throw ParseError(where() + ": truncated header");
    {
        auto toks = split_ws(line);
        if (toks.size() < 2 || toks[0] != "format") throw ParseError(where() + ": expected format line");
        if (toks[1] == "ascii")
            h.binary = false;
        else if (toks[1] == "binary_little_endian")
            h.binary = true;
        else
            throw ParseError(where() + ": unsupported PLY format '" + std::string(toks[1]) + "'");
    }

    bool in_vertex = false;
    bool saw_vertex = false;
    while (true) {
        if (!next_line()) throw ParseError(fname + ": header missing end_header");
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "comment" || toks[0] == "obj_info") continue;
        if (toks[0] == "end_header") break;
        if (toks[0] == "element") {
            if (toks.size() < 3) throw ParseError(where() + ": malformed element line");
            if (toks[1] == "vertex") {
                h.vertex_count = parse_int(toks[2], where());
                if (h.vertex_count < 0) throw ParseError(where() + ": negative vertex count");
                in_vertex = true;
                saw_vertex = true;
            } else {
                if (!saw_vertex)
                    throw ParseError(where() + ": element '" + std::string(toks[1]) +
                                     "' precedes the vertex element (unsupported layout)");
                in_vertex = false;  // trailing elements (faces etc.) are never read
            }
            continue;
        }
        if (toks[0] == "property") {
            if (!in_vertex) continue;
            if (toks.size() >= 2 && toks[1] == "list")
                throw ParseError(where() + ": list property in vertex element is unsupported");
            if (toks.size() < 3) throw ParseError(where() + ": malformed property line");
            PlyProperty p;
            std::string type = lower(std::string(toks[1]));
            p.byte_size = ply_type_size(type);
            if (p.byte_size == 0) throw ParseError(where() + ": unknown property type '" + type + "'");
            p.is_float = (type == "float" || type == "float32");
            p.is_double = (type == "double" || type == "float64");
            p.name = std::string(toks[2]);
            h.vertex_props.push_back(p);
            continue;
        }
        throw ParseError(where() + ": unexpected header line '" + line + "'");
    }
    h.header_lines = lineno;

    if (!saw_vertex) throw ParseError(fname + ": no vertex element in header");
    for (int i = 0; i < static_cast<int>(h.vertex_props.size()); ++i) {
        const auto& name = h.vertex_props[i].name;
        if (name == "x") h.x = i;
        if (name == "y") h.y = i;
        if (name == "z") h.z = i;
    }
    if (h.x < 0 || h.y < 0 || h.z < 0) throw ParseError(fname + ": vertex element lacks x/y/z properties");
    for (int slot : {h.x, h.y, h.z}) {
        const auto& p = h.vertex_props[slot];
        if (!p.is_float && !p.is_double)
            throw ParseError(fname + ": coordinate property '" + p.name + "' must be float32 or float64");
    }
    return h;
}

PointCloud read_ply(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    const std::string fname = path.filename().string();
    PlyHeader h = parse_ply_header(in, fname);

    PointCloud cloud;
    if (h.binary) {
        int stride = 0;
        for (const auto& p : h.vertex_props) stride += p.byte_size;
        int off_x = 0, off_y = 0, off_z = 0, acc = 0;
        for (int i = 0; i < static_cast<int>(h.vertex_props.size()); ++i) {
            if (i == h.x) off_x = acc;
            if (i == h.y) off_y = acc;
            if (i == h.z) off_z = acc;
            acc += h.vertex_props[i].byte_size;
        }

        in.seekg(0, std::ios::end);
        const auto file_size = static_cast<unsigned long long>(in.tellg());
        const unsigned long long need =
            static_cast<unsigned long long>(h.vertex_count) * static_cast<unsigned long long>(stride);
        if (file_size < h.body_offset + need) {
            const auto have = (file_size - h.body_offset) / static_cast<unsigned long long>(stride);
            throw ParseError(fname + ": truncated body at byte " + std::to_string(file_size) + " (" +
                             std::to_string(have) + " of " + std::to_string(h.vertex_count) +
                             " vertices present)");
        }
        in.seekg(static_cast<std::streamoff>(h.body_offset), std::ios::beg);

        // Little-endian scalars; host is assumed little-endian (checked below).
        static_assert(std::endian::native == std::endian::little, "big-endian hosts are unsupported");
        std::vector<char> record(static_cast<size_t>(stride));
        cloud.points.reserve(static_cast<size_t>(h.vertex_count));
        auto load = [&](int off, const PlyProperty& p) -> double {
            if (p.is_double) {
                double v;
                std::memcpy(&v, record.data() + off, 8);
                return v;
            }
            float v;
            std::memcpy(&v, record.data() + off, 4);
            return static_cast<double>(v);
        };
        for (long long i = 0; i < h.vertex_count; ++i) {
            in.read(record.data(), stride);
            if (!in)
                throw ParseError(fname + ": truncated body while reading vertex " + std::to_string(i));
            Eigen::Vector3d pt(load(off_x, h.vertex_props[h.x]), load(off_y, h.vertex_props[h.y]),
                               load(off_z, h.vertex_props[h.z]));
            check_finite(pt, fname + ": vertex " + std::to_string(i) + " at byte " +
                                 std::to_string(h.body_offset + static_cast<size_t>(i * stride)));
            cloud.points.push_back(pt);
        }
    } else {
        std::string line;
        int lineno = h.header_lines;
        cloud.points.reserve(std::min<long long>(h.vertex_count, 1 << 20));
        for (long long i = 0; i < h.vertex_count; ++i) {
            if (!std::getline(in, line))
                throw ParseError(fname + ": truncated body at line " + std::to_string(lineno + 1) + " (" +
                                 std::to_string(i) + " of " + std::to_string(h.vertex_count) +
                                 " vertices present)");
            ++lineno;
            auto toks = split_ws(line);
            if (toks.size() < h.vertex_props.size())
                throw ParseError(fname + ":" + std::to_string(lineno) + ": expected " +
                                 std::to_string(h.vertex_props.size()) + " values, got " +
                                 std::to_string(toks.size()));
            const std::string where = fname + ":" + std::to_string(lineno);
            Eigen::Vector3d pt(parse_double(toks[h.x], where), parse_double(toks[h.y], where),
                               parse_double(toks[h.z], where));
            check_finite(pt, where);
            cloud.points.push_back(pt);
        }
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// XYZ

PointCloud read_xyz(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    const std::string fname = path.filename().string();
    PointCloud cloud;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#') continue;
        if (toks.size() < 3)
            throw ParseError(fname + ":" + std::to_string(lineno) + ": expected at least 3 coordinates");
        const std::string where = fname + ":" + std::to_string(lineno);
        Eigen::Vector3d pt(parse_double(toks[0], where), parse_double(toks[1], where),
                           parse_double(toks[2], where));
        check_finite(pt, where);
        cloud.points.push_back(pt);  // extra columns (normals etc.) are ignored
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// OFF

PointCloud read_off(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    const std::string fname = path.filename().string();

    // Token stream with line tracking; '#' starts a comment.
    std::vector<std::pair<std::string, int>> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        for (auto tok : split_ws(line)) tokens.emplace_back(std::string(tok), lineno);
    }
    size_t cursor = 0;
    auto next = [&](const char* what) -> const std::pair<std::string, int>& {
        if (cursor >= tokens.size())
            throw ParseError(fname + ": truncated file, expected " + std::string(what));
        return tokens[cursor++];
    };

    const auto& magic = next("OFF magic");
    if (magic.first != "OFF")
        throw ParseError(fname + ":" + std::to_string(magic.second) + ": missing OFF magic");
    long long nv = parse_int(next("vertex count").first, fname);
    parse_int(next("face count").first, fname);
    parse_int(next("edge count").first, fname);
    if (nv < 0) throw ParseError(fname + ": negative vertex count");

    PointCloud cloud;
    cloud.points.reserve(std::min<long long>(nv, 1 << 20));
    for (long long i = 0; i < nv; ++i) {
        Eigen::Vector3d pt;
        for (int c = 0; c < 3; ++c) {
            const auto& tok = next("vertex coordinate");
            pt[c] = parse_double(tok.first, fname + ":" + std::to_string(tok.second));
        }
        check_finite(pt, fname + ": vertex " + std::to_string(i));
        cloud.points.push_back(pt);
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Writers

void write_ply(const PointCloud& cloud, const std::filesystem::path& path, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << "ply\n";
    out << "format " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n";
    out << "element vertex " << cloud.size() << "\n";
    const char* type = binary ? "double" : "float";
    out << "property " << type << " x\n";
    out << "property " << type << " y\n";
    out << "property " << type << " z\n";
    out << "end_header\n";
    if (binary) {
        for (const auto& p : cloud.points) {
            double xyz[3] = {p.x(), p.y(), p.z()};
            out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
        }
    } else {
        char buf[128];
        for (const auto& p : cloud.points) {
            std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g\n", p.x(), p.y(), p.z());
            out << buf;
        }
    }
    if (!out) throw std::runtime_error("write failure on '" + path.string() + "'");
}

void write_text(const PointCloud& cloud, const std::filesystem::path& path, bool off_header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    if (off_header) out << "OFF\n" << cloud.size() << " 0 0\n";
    char buf[128];
    for (const auto& p : cloud.points) {
        std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g\n", p.x(), p.y(), p.z());
        out << buf;
    }
    if (!out) throw std::runtime_error("write failure on '" + path.string() + "'");
}

std::optional<CloudFileFormat> sniff_magic(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    if (in.gcount() >= 4 && std::memcmp(magic, "ply", 3) == 0 &&
        (magic[3] == '\n' || magic[3] == '\r'))
        return CloudFileFormat::ply_ascii;  // refined from the header's format line
    if (in.gcount() >= 4 && std::memcmp(magic, "OFF", 3) == 0) return CloudFileFormat::off;
    return std::nullopt;
}

}  // namespace

PointCloud read_cloud(const std::filesystem::path& path, std::optional<CloudFileFormat> format) {
    if (!std::filesystem::exists(path)) throw std::runtime_error("no such file: '" + path.string() + "'");
    CloudFileFormat fmt;
    if (format) {
        fmt = *format;
    } else if (auto sniffed = sniff_magic(path)) {
        fmt = *sniffed;
    } else {
        std::string ext = lower(path.extension().string());
        if (ext == ".ply")
            fmt = CloudFileFormat::ply_ascii;
        else if (ext == ".xyz" || ext == ".txt" || ext == ".pts")
            fmt = CloudFileFormat::xyz;
        else if (ext == ".off")
            fmt = CloudFileFormat::off;
        else
            throw std::runtime_error("cannot infer cloud format for '" + path.string() + "'");
    }
    switch (fmt) {
        case CloudFileFormat::ply_ascii:
        case CloudFileFormat::ply_binary_le:
            return read_ply(path);  // the header decides ascii vs binary
        case CloudFileFormat::xyz:
            return read_xyz(path);
        case CloudFileFormat::off:
            return read_off(path);
    }
    throw std::logic_error("unreachable");
}

void write_cloud(const PointCloud& cloud, const std::filesystem::path& path, CloudFileFormat format) {
    switch (format) {
        case CloudFileFormat::ply_ascii:
            write_ply(cloud, path, /*binary=*/false);
            return;
        case CloudFileFormat::ply_binary_le:
            write_ply(cloud, path, /*binary=*/true);
            return;
        case CloudFileFormat::xyz:
            write_text(cloud, path, /*off_header=*/false);
            return;
        case CloudFileFormat::off:
            write_text(cloud, path, /*off_header=*/true);
            return;
    }
    throw std::logic_error("unreachable");
}

std::string format_stat(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void write_stats(const StatsReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    for (const auto& [key, value] : report) out << key << " " << format_stat(value) << "\n";
    if (!out) throw std::runtime_error("write failure on '" + path.string() + "'");
}

}  // namespace pcsimp
