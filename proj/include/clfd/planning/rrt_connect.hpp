#pragma once

#include <cstdint>

#include "clfd/planning/scene.hpp"

namespace clfd::planning {

struct JointPath {
  std::vector<JointConfig> waypoints;  // >= 2, all within limits
};

struct RrtParams {
  double step = 0.05;       // rad, extension step and validation resolution
  int max_iters = 50000;
  std::uint64_t rng_seed = 0;
  double goal_bias = 0.1;   // probability of sampling the other tree's root
  bool shortcut = true;
};

enum class PlanStatus { Success, StartInCollision, GoalInCollision, Timeout };

const char* to_string(PlanStatus s);

struct PlanResult {
  PlanStatus status = PlanStatus::Timeout;
  JointPath path;  // populated on Success

  bool ok() const { return status == PlanStatus::Success; }
};

/// Straight-line validity at `resolution`: consecutive checked configs differ
/// by at most resolution in joint-space L2 norm, endpoints included.
bool edge_collision_free(const KinematicChain& chain, const Scene& scene,
                         const JointConfig& a, const JointConfig& b,
                         double resolution);

/// Bidirectional RRT with the connect heuristic, then greedy waypoint-skip
/// shortcutting. The returned path interpolates collision-free at the step
/// resolution and starts/ends exactly at the inputs. Deterministic for a
/// given rng_seed.
PlanResult plan_rrt_connect(const KinematicChain& chain, const Scene& scene,
                            const JointConfig& q_start,
                            const JointConfig& q_goal,
                            const RrtParams& params);

}  // namespace clfd::planning
