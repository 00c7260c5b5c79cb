#include "clfd/planning/scene.hpp"

namespace clfd::planning {

namespace {

bool too_close(const CollisionModel& a, const Pose& pa,
               const CollisionModel& b, const Pose& pb, double margin) {
  if (a.empty() || b.empty()) return false;
  const ConvexDistanceResult r = model_distance(a, pa, b, pb);
  return r.intersecting || r.separation < margin;
}

}  // namespace

bool in_collision(const KinematicChain& chain, const JointConfig& q,
                  const Scene& scene) {
  const FkResult fk = forward_kinematics(chain, q);
  const int n = static_cast<int>(chain.joints.size());

  std::vector<const CollisionModel*> bodies;
  std::vector<Pose> body_poses;
  bodies.reserve(n + 1);
  for (int i = 0; i < n; ++i) {
    bodies.push_back(&chain.joints[i].collision);
    body_poses.push_back(fk.link_poses[i]);
  }
  if (scene.attached) {
    bodies.push_back(&scene.attached->model);
    body_poses.push_back(compose(fk.tool, scene.attached->grasp));
  }

  // every moving body against the static world
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    for (const auto& [name, entry] : scene.statics) {
      if (too_close(*bodies[b], body_poses[b], entry.first, entry.second,
                    scene.margin))
        return true;
    }
  }

  // base link counts as the link before joint 0
  for (int i = 0; i < static_cast<int>(bodies.size()); ++i) {
    if (i >= 2 &&
        too_close(chain.base_collision, chain.base, *bodies[i], body_poses[i],
                  scene.margin))
      return true;
    // skipping j = i + 1 exempts adjacent links, and the attached object
    // (index n) from the last link it hangs off
    for (int j = i + 2; j < static_cast<int>(bodies.size()); ++j) {
      if (too_close(*bodies[i], body_poses[i], *bodies[j], body_poses[j],
                    scene.margin))
        return true;
    }
  }
  return false;
}

}  // namespace clfd::planning
