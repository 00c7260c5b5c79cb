#include "clfd/io/demo_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "clfd/io/cloud_io.hpp"
#include "json_util.hpp"

namespace clfd::io {

namespace {

constexpr int kSupportedVersion = 1;

std::string frame_file_name(int index) {
  std::ostringstream ss;
  ss << std::setw(6) << std::setfill('0') << index << ".bin";
  return ss.str();
}

}  // namespace

void save_demo(const Demonstration& demo, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "models");
  fs::create_directories(dir / "frames");

  json meta;
  meta["format_version"] = kSupportedVersion;
  meta["frame_rate"] = demo.meta.frame_rate;

  json objects = json::array();
  for (const auto& obj : demo.meta.objects) {
    json o;
    o["name"] = obj.name;
    o["model"] = "models/" + obj.name + ".ply";
    if (obj.symmetry_axis) {
      o["symmetry_axis"] = to_json(*obj.symmetry_axis);
      o["symmetry_point"] = to_json(obj.symmetry_point);
    }
    objects.push_back(o);
    auto model = demo.models.find(obj.name);
    if (model == demo.models.end())
      throw UnknownObject("no model cloud for '" + obj.name + "'");
    save_ply(dir / "models" / (obj.name + ".ply"), model->second);
  }
  meta["objects"] = objects;

  json frames = json::array();
  for (const Frame& frame : demo.frames) {
    const std::string file = frame_file_name(frame.index);
    std::ofstream out(dir / "frames" / file, std::ios::binary);
    if (!out)
      throw FormatError("cannot write " + (dir / "frames" / file).string());

    json blocks = json::array();
    const auto write_block = [&](const std::string& name,
                                 const PointCloud& cloud) {
      json b;
      b["object"] = name;
      b["offset"] = static_cast<long long>(out.tellp());
      b["count"] = cloud.size();
      blocks.push_back(b);
      write_cloud_binary(out, cloud);
    };
    for (const auto& obj : demo.meta.objects) {
      auto it = frame.clouds.find(obj.name);
      if (it != frame.clouds.end()) write_block(obj.name, it->second);
    }
    if (frame.hand) write_block(kHandName, *frame.hand);

    json f;
    f["index"] = frame.index;
    f["file"] = "frames/" + file;
    f["blocks"] = blocks;
    frames.push_back(f);
  }
  meta["frames"] = frames;

  std::ofstream out(dir / "meta.json");
  if (!out) throw FormatError("cannot write " + (dir / "meta.json").string());
  out << meta.dump(2) << "\n";
}

Demonstration load_demo(const std::filesystem::path& dir) {
  const auto meta_path = dir / "meta.json";
  std::ifstream in(meta_path);
  if (!in) throw FormatError("cannot open " + meta_path.string());
  json meta;
  try {
    in >> meta;
  } catch (const json::exception& e) {
    throw FormatError(meta_path.string() + ": " + e.what());
  }

  const int version = meta.value("format_version", -1);
  if (version != kSupportedVersion)
    throw FormatError(meta_path.string() + ": format version " +
                      std::to_string(version) + " found, supported: " +
                      std::to_string(kSupportedVersion));

  Demonstration demo;
  demo.meta.format_version = version;
  demo.meta.frame_rate = meta.at("frame_rate").get<double>();
  if (demo.meta.frame_rate <= 0.0)
    throw FormatError(meta_path.string() + ": frame_rate must be > 0");

  for (const auto& o : meta.at("objects")) {
    ObjectMeta om;
    om.name = o.at("name").get<std::string>();
    om.model_path = o.at("model").get<std::string>();
    if (o.contains("symmetry_axis"))
      om.symmetry_axis = vec3_from_json(o["symmetry_axis"]);
    if (o.contains("symmetry_point"))
      om.symmetry_point = vec3_from_json(o["symmetry_point"]);
    demo.models[om.name] = load_ply(dir / om.model_path, om.name);
    demo.meta.objects.push_back(std::move(om));
  }

  for (const auto& f : meta.at("frames")) {
    Frame frame;
    frame.index = f.at("index").get<int>();
    const auto path = dir / f.at("file").get<std::string>();
    std::ifstream bin(path, std::ios::binary);
    if (!bin) throw FormatError("cannot open " + path.string());
    for (const auto& b : f.at("blocks")) {
      const auto name = b.at("object").get<std::string>();
      bin.seekg(b.at("offset").get<long long>());
      PointCloud cloud;
      try {
        cloud = read_cloud_binary(bin, name);
      } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
      }
      if (b.contains("count") && b["count"].get<std::size_t>() != cloud.size())
        throw FormatError(path.string() + ": block size mismatch for '" +
                          name + "'");
      if (name == kHandName)
        frame.hand = std::move(cloud);
      else
        frame.clouds[name] = std::move(cloud);
    }
    demo.frames.push_back(std::move(frame));
  }
  return demo;
}

}  // namespace clfd::io
