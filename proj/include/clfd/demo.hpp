#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clfd/geometry/point_cloud.hpp"

namespace clfd {

/// Reserved label for the demonstrator's hand cloud in contact pairs.
inline constexpr const char* kHandName = "hand";

/// One timestep of a recorded demonstration: per-object segmented clouds in
/// the scene frame, plus the hand blob when visible.
struct Frame {
  int index = 0;
  std::map<std::string, PointCloud> clouds;
  std::optional<PointCloud> hand;

  const PointCloud* find(const std::string& name) const {
    if (name == kHandName) return hand ? &*hand : nullptr;
    auto it = clouds.find(name);
    return it == clouds.end() ? nullptr : &it->second;
  }
};

struct ObjectMeta {
  std::string name;
  std::string model_path;  // relative path inside the demo directory
  // rotational symmetry of the object, in the model frame: unit axis plus a
  // point the axis passes through (model clouds are captured in the scene
  // frame, so the axis rarely passes through the origin)
  std::optional<Eigen::Vector3d> symmetry_axis;
  Eigen::Vector3d symmetry_point = Eigen::Vector3d::Zero();
};

struct DemoMeta {
  int format_version = 1;
  double frame_rate = 30.0;
  std::vector<ObjectMeta> objects;

  const ObjectMeta* find(const std::string& name) const {
    for (const auto& o : objects)
      if (o.name == name) return &o;
    return nullptr;
  }
};

/// A recorded demonstration: metadata, model clouds, and per-frame data.
/// Frame timestamps are index / frame_rate.
struct Demonstration {
  DemoMeta meta;
  std::map<std::string, PointCloud> models;  // model frame clouds
  std::vector<Frame> frames;

  double timestamp(int frame_index) const {
    return frame_index / meta.frame_rate;
  }
};

/// Outlier-filters every per-frame cloud once, at ingestion. Model clouds are
/// left as-is (they are filtered when recorded).
Demonstration filter_demonstration(const Demonstration& demo, int k = 8,
                                   double std_ratio = 2.0);

}  // namespace clfd
