#include "clfd/geometry/pose.hpp"

#include <cmath>

namespace clfd {

Pose Pose::from_translation(const Eigen::Vector3d& t) {
  return Pose(Eigen::Quaterniond::Identity(), t);
}

Pose Pose::from_rotation(const Eigen::Vector3d& axis, double angle) {
  return Pose(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis.normalized())),
              Eigen::Vector3d::Zero());
}

Pose Pose::from_matrix(const Eigen::Matrix4d& m) {
  Pose p;
  p.rotation = Eigen::Quaterniond(Eigen::Matrix3d(m.topLeftCorner<3, 3>()));
  p.rotation.normalize();
  p.translation = m.topRightCorner<3, 1>();
  return p;
}

Eigen::Matrix4d Pose::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation.toRotationMatrix();
  m.topRightCorner<3, 1>() = translation;
  return m;
}

Eigen::Vector3d Pose::apply(const Eigen::Vector3d& p) const {
  return rotation * p + translation;
}

bool Pose::valid(double tol) const {
  if (!translation.allFinite()) return false;
  const Eigen::Vector4d c = rotation.coeffs();
  if (!c.allFinite()) return false;
  return std::abs(rotation.norm() - 1.0) <= tol;
}

Pose compose(const Pose& a, const Pose& b) {
  Pose out;
  out.rotation = a.rotation * b.rotation;
  out.rotation.normalize();
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

Pose invert(const Pose& p) {
  Pose out;
  out.rotation = p.rotation.conjugate();
  out.translation = -(out.rotation * p.translation);
  return out;
}

Pose relative_to(const Pose& target, const Pose& reference) {
  return compose(invert(reference), target);
}

double rotation_angle(const Pose& p) {
  const double w = std::min(1.0, std::abs(p.rotation.normalized().w()));
  return 2.0 * std::acos(w);
}

double rotation_distance(const Pose& a, const Pose& b) {
  Eigen::Quaterniond d = a.rotation.conjugate() * b.rotation;
  return rotation_angle(Pose(d, Eigen::Vector3d::Zero()));
}

double translation_distance(const Pose& a, const Pose& b) {
  return (a.translation - b.translation).norm();
}

}  // namespace clfd
