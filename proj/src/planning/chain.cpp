#include "clfd/planning/chain.hpp"

#include "clfd/errors.hpp"

namespace clfd::planning {

bool KinematicChain::within_limits(const JointConfig& q, double tol) const {
  if (q.size() != static_cast<Eigen::Index>(joints.size())) return false;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    if (q[i] < joints[i].min_limit - tol || q[i] > joints[i].max_limit + tol)
      return false;
  }
  return true;
}

JointConfig KinematicChain::clamp_to_limits(const JointConfig& q) const {
  JointConfig out = q;
  for (std::size_t i = 0; i < joints.size(); ++i)
    out[i] = std::clamp(out[i], joints[i].min_limit, joints[i].max_limit);
  return out;
}

namespace {

Pose joint_motion(const Joint& j, double q) {
  if (j.kind == JointKind::Revolute) return Pose::from_rotation(j.axis, q);
  return Pose::from_translation(j.axis.normalized() * q);
}

}  // namespace

FkResult forward_kinematics(const KinematicChain& chain, const JointConfig& q) {
  if (q.size() != static_cast<Eigen::Index>(chain.joints.size()))
    throw DimensionMismatch("config has " + std::to_string(q.size()) +
                            " values for " +
                            std::to_string(chain.joints.size()) + " joints");
  FkResult out;
  out.link_poses.reserve(chain.joints.size());
  Pose cur = chain.base;
  for (std::size_t i = 0; i < chain.joints.size(); ++i) {
    cur = compose(compose(cur, chain.joints[i].origin),
                  joint_motion(chain.joints[i], q[i]));
    out.link_poses.push_back(cur);
  }
  out.tool = compose(cur, chain.tool_frame);
  return out;
}

Pose tool_pose(const KinematicChain& chain, const JointConfig& q) {
  return forward_kinematics(chain, q).tool;
}

Eigen::Matrix<double, 6, Eigen::Dynamic> tool_jacobian(
    const KinematicChain& chain, const JointConfig& q) {
  const FkResult fk = forward_kinematics(chain, q);
  const Eigen::Vector3d p_tool = fk.tool.translation;
  Eigen::Matrix<double, 6, Eigen::Dynamic> jac(6, chain.joints.size());
  for (std::size_t i = 0; i < chain.joints.size(); ++i) {
    const Pose& frame = fk.link_poses[i];
    const Eigen::Vector3d axis_w = frame.rotation * chain.joints[i].axis;
    if (chain.joints[i].kind == JointKind::Revolute) {
      jac.col(i).head<3>() = axis_w.cross(p_tool - frame.translation);
      jac.col(i).tail<3>() = axis_w;
    } else {
      jac.col(i).head<3>() = axis_w;
      jac.col(i).tail<3>().setZero();
    }
  }
  return jac;
}

}  // namespace clfd::planning
