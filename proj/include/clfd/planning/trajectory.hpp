#pragma once

#include <utility>
#include <vector>

#include "clfd/planning/rrt_connect.hpp"

namespace clfd::planning {

/// Time-parameterized joint-space trajectory. Samples are strictly increasing
/// from t = 0; configs between samples interpolate linearly.
struct JointTrajectory {
  std::vector<std::pair<double, JointConfig>> samples;
  double duration = 0.0;
};

/// Config at time t by linear interpolation, clamped to [0, duration].
JointConfig sample_at(const JointTrajectory& traj, double t);

/// Per-segment synchronized trapezoidal profiles with zero waypoint velocity.
/// Every joint in a segment follows a trapezoid (or triangle) of its own peak
/// velocity, stretched to the segment's critical-joint duration; sampled at
/// sample_dt plus exact segment boundaries.
JointTrajectory time_parameterize(const JointPath& path,
                                  const KinematicChain& chain,
                                  double sample_dt = 0.001);

/// Extends the trajectory to `target` seconds by uniform time scaling when it
/// is shorter; returns it unchanged (bit-identical) when already long enough.
/// Throws DegenerateTrajectory when duration is 0 and target > 0.
JointTrajectory match_duration(const JointTrajectory& traj, double target);

/// Samples at k / rate for k = 0..floor(duration * rate), linear interpolation
/// between trajectory samples.
std::vector<std::pair<double, JointConfig>> resample(
    const JointTrajectory& traj, double rate);

}  // namespace clfd::planning
