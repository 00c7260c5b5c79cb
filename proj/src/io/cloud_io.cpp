#include "clfd/io/cloud_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "clfd/errors.hpp"

namespace clfd::io {

namespace {

// on-disk layout is little-endian; all supported targets are little-endian
static_assert(std::endian::native == std::endian::little,
              "binary cloud IO assumes a little-endian host");

template <typename T>
void write_le(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const char* what) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) {
    throw FormatError(std::string("truncated cloud block reading ") + what +
                      " at offset " + std::to_string(in.tellg()));
  }
  return value;
}

}  // namespace

void write_cloud_binary(std::ostream& out, const PointCloud& cloud) {
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(cloud.size()));
  for (const auto& p : cloud.points) {
    write_le<double>(out, p.x());
    write_le<double>(out, p.y());
    write_le<double>(out, p.z());
  }
}

PointCloud read_cloud_binary(std::istream& in, const std::string& label) {
  PointCloud cloud;
  cloud.label = label;
  const auto count = read_le<std::uint32_t>(in, "point count");
  cloud.points.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const double x = read_le<double>(in, "x");
    const double y = read_le<double>(in, "y");
    const double z = read_le<double>(in, "z");
    cloud.points.emplace_back(x, y, z);
  }
  return cloud;
}

void save_ply(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << cloud.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  out << "end_header\n";
  out.precision(17);
  for (const auto& p : cloud.points)
    out << p.x() << " " << p.y() << " " << p.z() << "\n";
}

PointCloud load_ply(const std::filesystem::path& path,
                    const std::string& label) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());

  std::string line;
  std::getline(in, line);
  if (line != "ply") throw FormatError(path.string() + ": not a PLY file");

  std::size_t vertex_count = 0;
  std::vector<std::string> properties;
  bool ascii = false;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    if (word == "format") {
      std::string fmt;
      ss >> fmt;
      ascii = fmt == "ascii";
    } else if (word == "element") {
      std::string what;
      ss >> what >> vertex_count;
      if (what != "vertex")
        throw FormatError(path.string() + ": unsupported element '" + what +
                          "'");
    } else if (word == "property") {
      std::string type, name;
      ss >> type >> name;
      if (type != "float" && type != "float32" && type != "double" &&
          type != "float64")
        throw FormatError(path.string() + ": unsupported property type '" +
                          type + "'");
      properties.push_back(name);
    } else if (word == "end_header") {
      break;
    } else if (word == "comment") {
      continue;
    }
  }
  if (!ascii)
    throw FormatError(path.string() + ": only ascii PLY is supported");
  if (properties.size() < 3 || properties[0] != "x" || properties[1] != "y" ||
      properties[2] != "z")
    throw FormatError(path.string() + ": expected x y z vertex properties");

  PointCloud cloud;
  cloud.label = label;
  cloud.points.reserve(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (!std::getline(in, line))
      throw FormatError(path.string() + ": truncated at vertex " +
                        std::to_string(i));
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z))
      throw FormatError(path.string() + ": bad vertex line " +
                        std::to_string(i));
    cloud.points.emplace_back(x, y, z);
  }
  return cloud;
}

}  // namespace clfd::io
