#pragma once

#include <string>
#include <vector>

#include "clfd/geometry/convex.hpp"
#include "clfd/geometry/pose.hpp"

namespace clfd::planning {

using JointConfig = Eigen::VectorXd;

enum class JointKind { Revolute, Prismatic };

struct Joint {
  std::string name;
  JointKind kind = JointKind::Revolute;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();  // joint frame, unit
  Pose origin;  // parent frame -> joint frame at zero position
  double min_limit = -3.14;
  double max_limit = 3.14;
  double vel_limit = 1.0;   // rad/s or m/s
  double acc_limit = 1.0;   // rad/s^2 or m/s^2
  CollisionModel collision;  // link body, in the joint's moving frame
};

/// Serial chain rooted at a base pose, with a tool frame offset from the last
/// joint's moving frame.
struct KinematicChain {
  std::string name;
  std::vector<Joint> joints;
  CollisionModel base_collision;  // fixed, in the base frame
  Pose tool_frame;
  Pose base;  // world -> base frame

  std::size_t dof() const { return joints.size(); }
  bool within_limits(const JointConfig& q, double tol = 0.0) const;
  JointConfig clamp_to_limits(const JointConfig& q) const;
};

struct FkResult {
  std::vector<Pose> link_poses;  // world pose of each joint's moving frame
  Pose tool;                     // world pose of the tool frame
};

/// Standard serial-chain composition of joint transforms.
/// Throws DimensionMismatch when q length differs from the joint count.
FkResult forward_kinematics(const KinematicChain& chain, const JointConfig& q);

Pose tool_pose(const KinematicChain& chain, const JointConfig& q);

/// Geometric Jacobian of the tool frame, world coordinates; rows are
/// [linear; angular].
Eigen::Matrix<double, 6, Eigen::Dynamic> tool_jacobian(
    const KinematicChain& chain, const JointConfig& q);

}  // namespace clfd::planning
