#include "clfd/sim/world.hpp"

#include <cmath>

#include "clfd/errors.hpp"

namespace clfd::sim {

double lever_angle(const WorldState& world) {
  if (!world.faucet) return 0.0;
  const SceneObject* lever = world.find(world.faucet->lever);
  if (lever == nullptr) return 0.0;
  const Pose rel = compose(invert(world.faucet->lever_off_pose), lever->pose);
  Eigen::Quaterniond q = rel.rotation;
  if (q.w() < 0.0) q.coeffs() *= -1.0;
  const Eigen::AngleAxisd aa(q);
  return aa.angle() * aa.axis().dot(world.faucet->hinge_axis.normalized());
}

void apply_rules(WorldState& world) {
  if (!world.faucet) return;
  auto water = world.objects.find(world.faucet->water);
  if (water == world.objects.end()) return;
  water->second.present =
      std::abs(lever_angle(world)) >= world.faucet->on_angle;
}

planning::Scene make_planning_scene(const WorldState& world, double margin) {
  planning::Scene scene;
  scene.margin = margin;
  for (const auto& [name, obj] : world.objects) {
    if (!obj.present || !obj.collidable) continue;
    if (world.attachment && world.attachment->object == name) continue;
    scene.statics[name] = {obj.collision, obj.pose};
  }
  if (world.attachment) {
    const SceneObject* held = world.find(world.attachment->object);
    if (held == nullptr)
      throw UnknownObject("attached object '" + world.attachment->object +
                          "' is not in the world");
    planning::AttachedObject att;
    att.name = held->name;
    att.grasp = world.attachment->grasp;
    att.model = held->collision;
    scene.attached = att;
  }
  return scene;
}

}  // namespace clfd::sim
