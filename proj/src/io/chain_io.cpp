#include "clfd/io/chain_io.hpp"

#include <fstream>

#include "json_util.hpp"

namespace clfd::io {

namespace {

Pose origin_from_json(const json& j) {
  if (j.contains("q")) return pose_from_json(j);
  Pose p;
  if (j.contains("xyz")) p.translation = vec3_from_json(j["xyz"]);
  if (j.contains("rpy")) {
    const Eigen::Vector3d rpy = vec3_from_json(j["rpy"]);
    p.rotation = Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
                 Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
                 Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX());
  }
  return p;
}

}  // namespace

planning::KinematicChain load_chain(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  planning::KinematicChain chain;
  chain.name = root.value("name", "robot");
  if (root.contains("base")) chain.base = origin_from_json(root["base"]);
  if (root.contains("tool_frame"))
    chain.tool_frame = origin_from_json(root["tool_frame"]);
  if (root.contains("base_collision"))
    chain.base_collision = collision_from_json(root["base_collision"]);

  for (const auto& j : root.at("joints")) {
    planning::Joint joint;
    joint.name = j.value("name", "joint" + std::to_string(chain.joints.size()));
    const auto kind = j.value("kind", std::string("revolute"));
    if (kind == "revolute")
      joint.kind = planning::JointKind::Revolute;
    else if (kind == "prismatic")
      joint.kind = planning::JointKind::Prismatic;
    else
      throw FormatError(path.string() + ": unknown joint kind '" + kind + "'");
    joint.axis = vec3_from_json(j.at("axis")).normalized();
    joint.origin = origin_from_json(j.at("origin"));
    const auto& limits = j.at("limits");
    joint.min_limit = limits[0].get<double>();
    joint.max_limit = limits[1].get<double>();
    if (joint.min_limit >= joint.max_limit)
      throw FormatError(path.string() + ": joint '" + joint.name +
                        "' limits must satisfy min < max");
    joint.vel_limit = j.at("vel_limit").get<double>();
    joint.acc_limit = j.at("acc_limit").get<double>();
    if (joint.vel_limit <= 0.0 || joint.acc_limit <= 0.0)
      throw FormatError(path.string() + ": joint '" + joint.name +
                        "' velocity and acceleration limits must be > 0");
    if (j.contains("collision"))
      joint.collision = collision_from_json(j["collision"]);
    chain.joints.push_back(std::move(joint));
  }
  if (chain.joints.empty())
    throw FormatError(path.string() + ": chain has no joints");
  return chain;
}

}  // namespace clfd::io
