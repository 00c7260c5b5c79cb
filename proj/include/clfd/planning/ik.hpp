#pragma once

#include <cstdint>
#include <optional>

#include "clfd/planning/chain.hpp"

namespace clfd::planning {

struct IkParams {
  double tol_pos = 1e-4;  // m
  double tol_rot = 1e-3;  // rad
  int max_restarts = 30;
  std::uint64_t rng_seed = 0;
  int max_iterations = 150;  // damped least-squares steps per attempt
  double damping = 0.1;
  double step_clamp = 0.2;  // rad (or m) per joint per iteration
};

/// Damped least-squares IK from the seed, then uniform-random restarts within
/// joint limits. Deterministic for a given rng_seed. Returns nullopt when no
/// attempt reaches the tolerances.
std::optional<JointConfig> inverse_kinematics(const KinematicChain& chain,
                                              const Pose& target,
                                              const JointConfig& seed,
                                              const IkParams& params);

/// Twist that moves `current` onto `target`: [position error; rotation
/// vector], world coordinates.
Eigen::Matrix<double, 6, 1> pose_error(const Pose& target, const Pose& current);

}  // namespace clfd::planning
