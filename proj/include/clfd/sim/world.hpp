#pragma once

#include <map>
#include <optional>
#include <string>

#include "clfd/geometry/convex.hpp"
#include "clfd/geometry/point_cloud.hpp"
#include "clfd/planning/chain.hpp"
#include "clfd/planning/scene.hpp"

namespace clfd::sim {

struct SceneObject {
  std::string name;
  PointCloud cloud;          // model frame
  CollisionModel collision;  // model frame
  Pose pose;                 // scene frame
  bool collidable = true;    // water is contact-relevant but not solid
  bool present = true;
  std::optional<Eigen::Vector3d> symmetry_axis;  // model frame, unit
  Eigen::Vector3d symmetry_point = Eigen::Vector3d::Zero();
};

/// 1-DOF articulated faucet: the water object exists while the lever is
/// rotated past on_angle about its hinge axis relative to the off pose.
struct FaucetRule {
  std::string lever;
  std::string water;
  Eigen::Vector3d hinge_axis = Eigen::Vector3d::UnitY();  // lever model frame
  double on_angle = 0.5235987755982988;                   // 30 deg
  Pose lever_off_pose;  // scene frame
};

struct Attachment {
  std::string object;
  Pose grasp;  // tool frame -> object frame
};

/// Kinematic world: objects move only via attachment or scripted rules.
struct WorldState {
  std::map<std::string, SceneObject> objects;
  planning::JointConfig robot_config;
  std::optional<Attachment> attachment;
  double clock = 0.0;
  std::optional<FaucetRule> faucet;

  const SceneObject* find(const std::string& name) const {
    auto it = objects.find(name);
    return it == objects.end() ? nullptr : &it->second;
  }
  bool is_present(const std::string& name) const {
    const SceneObject* o = find(name);
    return o != nullptr && o->present;
  }
};

/// Current signed lever angle about the hinge, radians.
double lever_angle(const WorldState& world);

/// Applies scripted rules (water presence from the lever angle).
void apply_rules(WorldState& world);

/// Collision scene of all present, collidable objects; the attached object
/// (if any) is carried as the scene's attached body instead of a static.
planning::Scene make_planning_scene(const WorldState& world, double margin);

}  // namespace clfd::sim
