#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "clfd/geometry/point_cloud.hpp"

namespace clfd::io {

/// Binary cloud block: u32 little-endian point count, then count * 3 * f64
/// little-endian coordinates in meters.
void write_cloud_binary(std::ostream& out, const PointCloud& cloud);

/// Reads one binary cloud block. Throws FormatError with the stream offset on
/// truncation.
PointCloud read_cloud_binary(std::istream& in, const std::string& label = "");

/// ASCII PLY with vertex properties x, y, z (float or double accepted).
void save_ply(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud load_ply(const std::filesystem::path& path,
                    const std::string& label = "");

}  // namespace clfd::io
