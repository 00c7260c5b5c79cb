#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clfd/demo.hpp"
#include "clfd/learning/policy.hpp"
#include "clfd/sim/world.hpp"

namespace clfd::io {

/// Primitive geometry the generator samples clouds from.
struct ShapeSpec {
  std::string name;
  enum class Kind { Box, Cylinder, Bowl, Basin } kind = Kind::Box;

  Eigen::Vector3d box_size{0.1, 0.1, 0.1};  // full extents
  Eigen::Vector3d box_center{0.0, 0.0, 0.0};

  double radius = 0.05;         // cylinder; bowl top (interior)
  double bottom_radius = 0.035;  // bowl interior bottom
  double height = 0.1;
  double thickness = 0.004;  // bowl / basin walls

  Eigen::Vector2d basin_inner_half{0.14, 0.12};
  double basin_floor_thickness = 0.01;

  int samples = 700;
  std::optional<Eigen::Vector3d> symmetry_axis;
  Pose initial_pose;
  bool initially_present = true;
};

/// Linear translation + slerp rotation between two poses over [t0, t1].
struct MoveEvent {
  std::string object;
  double t0 = 0.0, t1 = 0.0;
  Pose from, to;
};

struct HandTouchEvent {
  std::string object;
  double t_touch = 0.0, t_release = 0.0;
  Eigen::Vector3d local_point{0, 0, 0};  // object model frame
  Eigen::Vector3d approach{0, 0, 1};     // outward, model frame
};

struct PresenceEvent {
  std::string object;
  double time = 0.0;
  bool present = true;
};

struct ContactInterval {
  std::string a, b;
  int start_frame = 0, end_frame = 0;  // inclusive
};

struct ScenarioSpec {
  double frame_rate = 30.0;
  int frame_count = 120;
  double noise_sigma = 0.0005;  // m
  std::uint64_t seed = 0;

  std::vector<ShapeSpec> shapes;
  std::vector<MoveEvent> moves;
  std::vector<HandTouchEvent> hand;
  std::vector<PresenceEvent> presence;
  std::vector<ContactInterval> scripted_contacts;  // object-object truth

  double hand_radius = 0.015;
  int hand_samples = 120;
  Eigen::Vector3d hand_home{0.20, -0.45, 0.35};
  double hand_travel = 0.25;  // s, approach / retreat blend
  double contact_gap = 0.003;  // m, surface standoff while touching
};

struct TruthPrimitive {
  learning::PrimitiveKind kind;
  std::string target;
  int start = 0, end = 0;
};

/// Exact script-side answers, written to truth.json and read only by tests.
struct GroundTruth {
  std::vector<std::map<std::string, Pose>> poses;  // per frame, present objects
  std::vector<ContactInterval> hand_contacts;
  std::vector<ContactInterval> object_contacts;
  std::vector<TruthPrimitive> primitives;
};

Pose object_pose_at(const ScenarioSpec& spec, const std::string& name,
                    double t);
bool object_present_at(const ScenarioSpec& spec, const std::string& name,
                       double t);

PointCloud sample_shape(const ShapeSpec& shape, std::uint64_t seed);

/// Renders the scripted scene into a demonstration plus its ground-truth
/// sidecar. Deterministic for a given spec.
/// Throws InvalidScript for overlapping hand events.
std::pair<Demonstration, GroundTruth> generate_demo(const ScenarioSpec& spec);

void save_truth(const GroundTruth& truth, const std::filesystem::path& path);
GroundTruth load_truth(const std::filesystem::path& path);

ScenarioSpec load_scenario(const std::filesystem::path& path);
void save_scenario(const ScenarioSpec& spec,
                   const std::filesystem::path& path);

/// Five-step kitchen scenario: faucet on, pick bowl, rinse, place in sink,
/// faucet off. The deduced water column appears while the lever is past its
/// on angle.
ScenarioSpec make_dishwash_scenario(std::uint64_t seed = 0);

/// Randomized touch-and-move scenario for segmentation testing: 1-3 objects,
/// scripted non-overlapping hand episodes.
ScenarioSpec make_random_scenario(std::uint64_t seed);

/// Execution-scene variations of the dishwash kitchen.
struct DishwashVariant {
  Eigen::Vector2d sink_shift{0.0, 0.0};  // sink + faucet assembly, m
  Eigen::Vector2d bowl_shift{0.0, 0.0};
  double bowl_scale = 1.0;  // swapped-bowl size factor
};

sim::WorldState make_dishwash_world(const DishwashVariant& variant = {});

planning::JointConfig dishwash_home_config();

}  // namespace clfd::io
