#include "clfd/planning/ik.hpp"

#include <cmath>
#include <random>

#include "clfd/errors.hpp"

namespace clfd::planning {

Eigen::Matrix<double, 6, 1> pose_error(const Pose& target,
                                       const Pose& current) {
  Eigen::Matrix<double, 6, 1> err;
  err.head<3>() = target.translation - current.translation;
  Eigen::Quaterniond dq = target.rotation * current.rotation.conjugate();
  if (dq.w() < 0.0) dq.coeffs() *= -1.0;
  const Eigen::AngleAxisd aa(dq);
  err.tail<3>() = aa.angle() * aa.axis();
  return err;
}

namespace {

bool solve_from(const KinematicChain& chain, const Pose& target,
                JointConfig& q, const IkParams& params) {
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    const Pose tool = tool_pose(chain, q);
    const Eigen::Matrix<double, 6, 1> err = pose_error(target, tool);
    if (err.head<3>().norm() <= params.tol_pos &&
        err.tail<3>().norm() <= params.tol_rot)
      return true;

    const auto jac = tool_jacobian(chain, q);
    const Eigen::MatrixXd jjt =
        jac * jac.transpose() +
        params.damping * params.damping * Eigen::MatrixXd::Identity(6, 6);
    Eigen::VectorXd dq = jac.transpose() * jjt.ldlt().solve(err);

    const double max_step = dq.cwiseAbs().maxCoeff();
    if (max_step > params.step_clamp) dq *= params.step_clamp / max_step;
    q = chain.clamp_to_limits(q + dq);

    if (max_step < 1e-14) break;  // stalled
  }
  const Eigen::Matrix<double, 6, 1> err =
      pose_error(target, tool_pose(chain, q));
  return err.head<3>().norm() <= params.tol_pos &&
         err.tail<3>().norm() <= params.tol_rot;
}

}  // namespace

std::optional<JointConfig> inverse_kinematics(const KinematicChain& chain,
                                              const Pose& target,
                                              const JointConfig& seed,
                                              const IkParams& params) {
  if (params.tol_pos <= 0.0 || params.tol_rot <= 0.0)
    throw InvalidArgument("inverse_kinematics: tolerances must be > 0");
  if (seed.size() != static_cast<Eigen::Index>(chain.dof()))
    throw DimensionMismatch("ik seed size mismatch");

  JointConfig q = chain.clamp_to_limits(seed);
  if (solve_from(chain, target, q, params)) return q;

  std::mt19937_64 rng(params.rng_seed);
  for (int r = 0; r < params.max_restarts; ++r) {
    JointConfig start(chain.dof());
    for (std::size_t i = 0; i < chain.dof(); ++i) {
      std::uniform_real_distribution<double> u(chain.joints[i].min_limit,
                                               chain.joints[i].max_limit);
      start[i] = u(rng);
    }
    if (solve_from(chain, target, start, params)) return start;
  }
  return std::nullopt;
}

}  // namespace clfd::planning
