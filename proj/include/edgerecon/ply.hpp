#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "edgerecon/point_cloud.hpp"

namespace edgerecon {

enum class PlyFormat { ascii, binary_little_endian };

/// Parses the vertex element of an ASCII or binary-little-endian PLY file.
/// x, y, z are required; red, green, blue are optional and default to white.
/// Other elements and properties (faces, normals, ...) are skipped.
/// Throws ParseError naming the offending line or byte.
PointCloud parse_ply(std::string_view bytes);

/// Coordinates are written as doubles (shortest round-trip text in ASCII
/// mode), so parse_ply(write_ply(c)) reproduces c bit for bit. The cloud
/// label travels in a header comment.
std::string write_ply(const PointCloud& cloud, PlyFormat format);

PointCloud read_ply_file(const std::filesystem::path& path);
void write_ply_file(const std::filesystem::path& path, const PointCloud& cloud,
                    PlyFormat format = PlyFormat::binary_little_endian);

}  // namespace edgerecon
