#pragma once

#include <optional>
#include <vector>

#include "clfd/geometry/convex.hpp"
#include "clfd/geometry/pose.hpp"

namespace clfd::planning {

/// Rotational symmetry of an object model, plus the perturbation angles to
/// try about its non-symmetric axes. All rotations pass through axis_point
/// (model frame), which lies on the object's axis.
struct SymmetrySpec {
  std::optional<Eigen::Vector3d> axis;  // model frame, unit
  Eigen::Vector3d axis_point = Eigen::Vector3d::Zero();
  std::vector<double> perturbation_angles{0.0872664625997165,   // +5 deg
                                          -0.0872664625997165,
                                          0.1745329251994330,   // +10 deg
                                          -0.1745329251994330};
  double symmetry_step = 0.1745329251994330;  // 10 deg
};

/// One pair the candidate object must stay in contact with: its separation
/// from `other` has to remain inside [0, band].
struct ContactBand {
  CollisionModel moving;  // posed at the candidate pose
  CollisionModel other;
  Pose other_pose;
  double band = 0.01;  // m
};

/// Enumerates goal poses equivalent to `desired`: the desired pose first,
/// then full-circle rotations about the symmetry axis, then the perturbation
/// angles about the remaining model axes. Candidates whose declared contact
/// pairs leave their separation band are dropped. Deterministic order.
std::vector<Pose> propose_alternative_poses(
    const Pose& desired, const SymmetrySpec& sym,
    const std::vector<ContactBand>& contact_pairs);

}  // namespace clfd::planning
