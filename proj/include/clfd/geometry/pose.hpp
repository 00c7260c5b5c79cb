#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace clfd {

/// Rigid transform in 3-space: unit quaternion rotation plus translation in
/// meters. Applies as p' = R * p + t.
struct Pose {
  Eigen::Quaterniond rotation{1.0, 0.0, 0.0, 0.0};
  Eigen::Vector3d translation{0.0, 0.0, 0.0};

  Pose() = default;
  Pose(const Eigen::Quaterniond& q, const Eigen::Vector3d& t)
      : rotation(q), translation(t) {}

  static Pose identity() { return Pose(); }
  static Pose from_translation(const Eigen::Vector3d& t);
  static Pose from_rotation(const Eigen::Vector3d& axis, double angle);
  static Pose from_matrix(const Eigen::Matrix4d& m);

  Eigen::Matrix4d matrix() const;
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const;

  /// Quaternion norm within tol of 1 and all components finite.
  bool valid(double tol = 1e-9) const;
  void normalize() { rotation.normalize(); }
};

/// Result applies b first, then a: (a * b)(p) = a(b(p)).
Pose compose(const Pose& a, const Pose& b);

Pose invert(const Pose& p);

/// Pose of `target` expressed in the frame of `reference`:
/// relative_to(t, r) = invert(r) * t.
Pose relative_to(const Pose& target, const Pose& reference);

/// Rotation angle of p in [0, pi].
double rotation_angle(const Pose& p);

/// Angle between the rotations of a and b in [0, pi].
double rotation_distance(const Pose& a, const Pose& b);

double translation_distance(const Pose& a, const Pose& b);

}  // namespace clfd
