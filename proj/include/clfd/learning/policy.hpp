#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "clfd/contact/locations.hpp"
#include "clfd/geometry/convex.hpp"
#include "clfd/geometry/point_cloud.hpp"
#include "clfd/geometry/pose.hpp"

namespace clfd::learning {

enum class PrimitiveKind { MakeContact, MaintainContact, BreakContact };

const char* to_string(PrimitiveKind k);

using ObjectPair = std::pair<std::string, std::string>;

/// Grasp parameters: where the hand touched the object (model frame) and the
/// direction it approached from.
struct MakeContactParams {
  std::vector<contact::ContactLocation> locations;
  std::optional<std::vector<contact::ContactLocation>> manual_override;
  // unit vector, hand centroid toward contact, in the object model frame
  Eigen::Vector3d approach_dir = Eigen::Vector3d::UnitZ();

  const std::vector<contact::ContactLocation>& effective() const {
    return manual_override ? *manual_override : locations;
  }
};

/// A frame inside a maintain span where an object-object contact changed or
/// an object appeared/disappeared, plus the span endpoints.
struct KeyMoment {
  int frame = 0;
  double timestamp = 0.0;  // seconds from primitive start
  // (target, reference) -> pose of target in the reference object's frame
  std::map<ObjectPair, Pose> relative_poses;
  std::set<ObjectPair> contact_set;  // object-object pairs in contact
  std::string reference;  // most relevant reference object at this moment
};

struct MaintainContactParams {
  std::vector<KeyMoment> key_moments;  // strictly increasing frames
  std::string track_reference;  // reference object of the dense track
  std::vector<std::pair<double, Pose>> dense_track;  // (seconds, rel pose)
};

struct BreakContactParams {
  Pose final_pose;        // target relative to the reference at release
  std::string reference;  // supporting object the pose is anchored to
  std::optional<Pose> manual_override;

  const Pose& effective() const {
    return manual_override ? *manual_override : final_pose;
  }
};

struct Primitive {
  PrimitiveKind kind = PrimitiveKind::MakeContact;
  std::string target;
  std::pair<int, int> span{0, 0};  // inclusive frames
  std::variant<std::monostate, MakeContactParams, MaintainContactParams,
               BreakContactParams>
      params;
};

struct ObjectModel {
  PointCloud cloud;                // model frame
  CollisionModel collision;
  std::optional<Eigen::Vector3d> symmetry_axis;  // model frame, unit
  Eigen::Vector3d symmetry_point = Eigen::Vector3d::Zero();
  std::string model_path;          // provenance, relative path
};

struct Policy {
  std::vector<Primitive> primitives;
  std::map<std::string, ObjectModel> object_models;
  double frame_rate = 30.0;
  // clustering parameters the collision models were built with, kept so a
  // reloaded policy rebuilds identical models
  double collision_eps = 0.01;
  int collision_min_pts = 5;
};

}  // namespace clfd::learning
