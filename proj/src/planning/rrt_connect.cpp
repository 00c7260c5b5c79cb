#include "clfd/planning/rrt_connect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "clfd/errors.hpp"

namespace clfd::planning {

const char* to_string(PlanStatus s) {
  switch (s) {
    case PlanStatus::Success: return "success";
    case PlanStatus::StartInCollision: return "start_in_collision";
    case PlanStatus::GoalInCollision: return "goal_in_collision";
    case PlanStatus::Timeout: return "timeout";
  }
  return "?";
}

bool edge_collision_free(const KinematicChain& chain, const Scene& scene,
                         const JointConfig& a, const JointConfig& b,
                         double resolution) {
  const double length = (b - a).norm();
  const int segments = std::max(1, static_cast<int>(std::ceil(length / resolution)));
  for (int i = 0; i <= segments; ++i) {
    const double t = static_cast<double>(i) / segments;
    if (in_collision(chain, a + t * (b - a), scene)) return false;
  }
  return true;
}

namespace {

struct Tree {
  std::vector<JointConfig> nodes;
  std::vector<int> parent;

  int add(const JointConfig& q, int par) {
    nodes.push_back(q);
    parent.push_back(par);
    return static_cast<int>(nodes.size()) - 1;
  }

  int nearest(const JointConfig& q) const {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double d = (nodes[i] - q).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  }
};

enum class Extend { Trapped, Advanced, Reached };

// one bounded step from the tree's nearest node toward q; a new node is added
// only when the whole sub-edge validates
Extend extend_tree(Tree& tree, const JointConfig& q,
                   const KinematicChain& chain, const Scene& scene,
                   const RrtParams& params, int& new_index) {
  const int near = tree.nearest(q);
  const JointConfig& from = tree.nodes[near];
  const double d = (q - from).norm();
  const bool reaches = d <= params.step;
  const JointConfig target =
      reaches ? q : JointConfig(from + (q - from) * (params.step / d));
  if (!chain.within_limits(target)) return Extend::Trapped;
  // validate at half the step so the returned path re-checks clean at that
  // resolution with identical sample points
  if (!edge_collision_free(chain, scene, from, target, params.step / 2.0))
    return Extend::Trapped;
  new_index = tree.add(target, near);
  return reaches ? Extend::Reached : Extend::Advanced;
}

Extend connect_tree(Tree& tree, const JointConfig& q,
                    const KinematicChain& chain, const Scene& scene,
                    const RrtParams& params, int& last_index) {
  Extend status = Extend::Advanced;
  while (status == Extend::Advanced)
    status = extend_tree(tree, q, chain, scene, params, last_index);
  return status;
}

std::vector<JointConfig> trace(const Tree& tree, int index) {
  std::vector<JointConfig> out;
  for (int i = index; i >= 0; i = tree.parent[i]) out.push_back(tree.nodes[i]);
  return out;
}

JointPath shortcut_path(const JointPath& path, const KinematicChain& chain,
                        const Scene& scene, double resolution) {
  JointPath out;
  std::size_t i = 0;
  out.waypoints.push_back(path.waypoints.front());
  while (i + 1 < path.waypoints.size()) {
    std::size_t best = i + 1;
    for (std::size_t j = path.waypoints.size() - 1; j > i + 1; --j) {
      if (edge_collision_free(chain, scene, path.waypoints[i],
                              path.waypoints[j], resolution)) {
        best = j;
        break;
      }
    }
    out.waypoints.push_back(path.waypoints[best]);
    i = best;
  }
  return out;
}

}  // namespace

PlanResult plan_rrt_connect(const KinematicChain& chain, const Scene& scene,
                            const JointConfig& q_start,
                            const JointConfig& q_goal,
                            const RrtParams& params) {
  if (q_start.size() != static_cast<Eigen::Index>(chain.dof()) ||
      q_goal.size() != static_cast<Eigen::Index>(chain.dof()))
    throw DimensionMismatch("planner config size mismatch");
  if (!chain.within_limits(q_start) || in_collision(chain, q_start, scene))
    return {PlanStatus::StartInCollision, {}};
  if (!chain.within_limits(q_goal) || in_collision(chain, q_goal, scene))
    return {PlanStatus::GoalInCollision, {}};

  Tree start_tree, goal_tree;
  start_tree.add(q_start, -1);
  goal_tree.add(q_goal, -1);
  Tree* a = &start_tree;
  Tree* b = &goal_tree;

  std::mt19937_64 rng(params.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int iter = 0; iter < params.max_iters; ++iter) {
    JointConfig sample(chain.dof());
    if (unit(rng) < params.goal_bias) {
      sample = b->nodes.front();
    } else {
      for (std::size_t i = 0; i < chain.dof(); ++i) {
        std::uniform_real_distribution<double> u(chain.joints[i].min_limit,
                                                 chain.joints[i].max_limit);
        sample[i] = u(rng);
      }
    }

    int new_a = -1;
    if (extend_tree(*a, sample, chain, scene, params, new_a) !=
        Extend::Trapped) {
      int new_b = -1;
      if (connect_tree(*b, a->nodes[new_a], chain, scene, params, new_b) ==
          Extend::Reached) {
        std::vector<JointConfig> from_a = trace(*a, new_a);
        std::reverse(from_a.begin(), from_a.end());
        std::vector<JointConfig> from_b = trace(*b, new_b);
        // from_b starts at the meeting config, already in from_a
        from_a.insert(from_a.end(), from_b.begin() + 1, from_b.end());
        if (a != &start_tree) std::reverse(from_a.begin(), from_a.end());

        JointPath path;
        path.waypoints = std::move(from_a);
        if (params.shortcut)
          path = shortcut_path(path, chain, scene, params.step / 2.0);
        if (path.waypoints.size() < 2)
          path.waypoints.push_back(path.waypoints.front());
        return {PlanStatus::Success, std::move(path)};
      }
    }
    std::swap(a, b);
  }
  return {PlanStatus::Timeout, {}};
}

}  // namespace clfd::planning
