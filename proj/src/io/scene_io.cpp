#include "clfd/io/scene_io.hpp"

#include <fstream>

#include "clfd/io/cloud_io.hpp"
#include "json_util.hpp"

namespace clfd::io {

sim::WorldState load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  const auto dir = path.parent_path().empty() ? std::filesystem::path(".")
                                              : path.parent_path();
  sim::WorldState world;
  for (const auto& [name, o] : root.at("objects").items()) {
    sim::SceneObject obj;
    obj.name = name;
    obj.pose = pose_from_json(o.at("pose"));
    obj.collidable = o.value("collidable", true);
    obj.present = o.value("present", true);
    if (o.contains("symmetry_axis"))
      obj.symmetry_axis = vec3_from_json(o["symmetry_axis"]);
    if (o.contains("symmetry_point"))
      obj.symmetry_point = vec3_from_json(o["symmetry_point"]);
    if (o.contains("model"))
      obj.cloud = load_ply(dir / o["model"].get<std::string>(), name);
    if (o.contains("collision")) {
      obj.collision = collision_from_json(o["collision"]);
    } else if (!obj.cloud.empty()) {
      obj.collision = build_collision_model(obj.cloud);
    } else {
      throw FormatError(path.string() + ": object '" + name +
                        "' has neither collision geometry nor a model cloud");
    }
    world.objects[name] = std::move(obj);
  }

  if (root.contains("faucet")) {
    const auto& f = root["faucet"];
    sim::FaucetRule rule;
    rule.lever = f.at("lever").get<std::string>();
    rule.water = f.at("water").get<std::string>();
    rule.hinge_axis = vec3_from_json(f.at("hinge_axis")).normalized();
    if (f.contains("on_angle_deg"))
      rule.on_angle = f["on_angle_deg"].get<double>() * M_PI / 180.0;
    const sim::SceneObject* lever = world.find(rule.lever);
    if (lever == nullptr)
      throw FormatError(path.string() + ": faucet lever '" + rule.lever +
                        "' is not an object");
    rule.lever_off_pose = f.contains("off_pose")
                              ? pose_from_json(f["off_pose"])
                              : lever->pose;
    world.faucet = rule;
  }

  if (root.contains("robot_config")) {
    const auto& q = root["robot_config"];
    world.robot_config.resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
      world.robot_config[i] = q[i].get<double>();
  }
  sim::apply_rules(world);
  return world;
}

void save_scene(const sim::WorldState& world,
                const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  const fs::path dir = path.parent_path().empty() ? "." : path.parent_path();

  json objects;
  for (const auto& [name, obj] : world.objects) {
    json o;
    o["pose"] = to_json(obj.pose);
    o["collidable"] = obj.collidable;
    o["present"] = obj.present;
    if (obj.symmetry_axis) {
      o["symmetry_axis"] = to_json(*obj.symmetry_axis);
      o["symmetry_point"] = to_json(obj.symmetry_point);
    }
    if (!obj.cloud.empty()) {
      const std::string rel = "scene_models/" + name + ".ply";
      fs::create_directories(dir / "scene_models");
      save_ply(dir / rel, obj.cloud);
      o["model"] = rel;
    }
    o["collision"] = to_json(obj.collision);
    objects[name] = o;
  }

  json root;
  root["objects"] = objects;
  if (world.faucet) {
    root["faucet"] = {
        {"lever", world.faucet->lever},
        {"water", world.faucet->water},
        {"hinge_axis", to_json(world.faucet->hinge_axis)},
        {"on_angle_deg", world.faucet->on_angle * 180.0 / M_PI},
        {"off_pose", to_json(world.faucet->lever_off_pose)},
    };
  }
  if (world.robot_config.size() > 0) {
    json q = json::array();
    for (Eigen::Index i = 0; i < world.robot_config.size(); ++i)
      q.push_back(world.robot_config[i]);
    root["robot_config"] = q;
  }

  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << root.dump(2) << "\n";
}

}  // namespace clfd::io
