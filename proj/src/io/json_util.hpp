#pragma once

#include <nlohmann/json.hpp>

#include "clfd/errors.hpp"
#include "clfd/geometry/convex.hpp"
#include "clfd/geometry/pose.hpp"

// nlohmann/json is vendored as vendor/json.hpp
#if !__has_include(<nlohmann/json.hpp>)
#error "expected vendored nlohmann/json"
#endif

namespace clfd::io {

using json = nlohmann::json;

inline json to_json(const Eigen::Vector3d& v) {
  return json::array({v.x(), v.y(), v.z()});
}

inline Eigen::Vector3d vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw FormatError("expected a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline json to_json(const Pose& p) {
  return json{{"q",
               {p.rotation.w(), p.rotation.x(), p.rotation.y(),
                p.rotation.z()}},
              {"t", to_json(p.translation)}};
}

inline Pose pose_from_json(const json& j) {
  if (!j.contains("q") || !j.contains("t"))
    throw FormatError("pose needs 'q' and 't'");
  const auto& q = j["q"];
  if (!q.is_array() || q.size() != 4)
    throw FormatError("pose 'q' must be [w,x,y,z]");
  Pose p(Eigen::Quaterniond(q[0].get<double>(), q[1].get<double>(),
                            q[2].get<double>(), q[3].get<double>()),
         vec3_from_json(j["t"]));
  if (!p.valid(1e-6)) throw FormatError("pose is not a valid rigid transform");
  p.normalize();
  return p;
}

inline json to_json(const CollisionModel& m) {
  json parts = json::array();
  for (const auto& shape : m.parts) {
    json verts = json::array();
    for (const auto& v : shape.vertices) verts.push_back(to_json(v));
    parts.push_back(verts);
  }
  return json{{"parts", parts}};
}

inline CollisionModel collision_from_json(const json& j) {
  CollisionModel m;
  if (j.contains("parts")) {
    for (const auto& part : j["parts"]) {
      ConvexShape s;
      for (const auto& v : part) s.vertices.push_back(vec3_from_json(v));
      if (s.vertices.size() < 4)
        throw FormatError("convex part needs >= 4 vertices");
      m.parts.push_back(std::move(s));
    }
  }
  if (j.contains("boxes")) {
    for (const auto& box : j["boxes"]) {
      const Eigen::Vector3d half = vec3_from_json(box.at("half"));
      const Eigen::Vector3d center = box.contains("center")
                                         ? vec3_from_json(box["center"])
                                         : Eigen::Vector3d::Zero();
      m.parts.push_back(make_box(half, center));
    }
  }
  if (m.parts.empty()) throw FormatError("collision model has no parts");
  return m;
}

}  // namespace clfd::io
