#pragma once

#include <set>
#include <string>
#include <vector>

#include "clfd/learning/policy.hpp"
#include "clfd/planning/alternatives.hpp"
#include "clfd/planning/ik.hpp"
#include "clfd/planning/rrt_connect.hpp"
#include "clfd/pose_estimation/icp.hpp"
#include "clfd/sim/world.hpp"

namespace clfd::sim {

/// One timestamped target of the object trajectory. Poses are relative to
/// `reference`; an empty reference anchors to the scene frame.
struct TimedEntry {
  double timestamp = 0.0;  // seconds from primitive start
  std::string object;
  Pose pose;
  std::string reference;
  std::set<learning::ObjectPair> required_contacts;
  bool is_key_moment = false;
  int key_frame = -1;
};

struct TimedObjectTrajectory {
  std::vector<TimedEntry> entries;  // timestamps non-decreasing
};

enum class Outcome {
  Success,
  MotionPlanningFailure,
  IkFailure,
  PoseEstimationFailure,
};

const char* to_string(Outcome o);

struct KeyMomentError {
  std::size_t primitive_index = 0;
  int frame = 0;
  double translation_error = 0.0;  // m
  double rotation_error = 0.0;     // rad, symmetry axis removed when present
  bool contacts_ok = true;
};

struct PrimitiveReport {
  std::string name;                     // kind[target], for reporting
  Outcome outcome = Outcome::Success;
  double duration = 0.0;                // seconds of robot motion
  std::vector<int> candidate_indices;   // chosen proposal per executed entry
  std::string detail;
};

struct SimLogRow {
  double time = 0.0;
  planning::JointConfig config;
  std::map<std::string, Pose> object_poses;
};

struct ExecutionResult {
  std::vector<PrimitiveReport> reports;  // ordered as primitives, may stop early
  std::vector<KeyMomentError> key_moment_errors;
  double total_duration = 0.0;
  bool success = false;
  std::vector<SimLogRow> log;  // populated when record_rate > 0
};

struct PoseNoiseParams {
  bool enabled = false;
  double sigma = 0.0005;  // m, Gaussian per coordinate
  std::uint64_t seed = 0;
};

struct ExecParams {
  planning::IkParams ik;
  planning::RrtParams rrt;
  double margin = 0.002;      // m, collision clearance
  double d_contact = 0.01;    // m, contact band for proposals and checks
  double d_break = 0.02;      // m, required-absent separation
  bool propose_alternatives = true;
  bool continue_on_error = false;
  double record_rate = 0.0;   // Hz, 0 disables the sim log
  double grasp_yaw_step = 0.5235987755982988;  // 30 deg between grasp yaws
  PoseNoiseParams pose_noise;
  icp::IcpParams icp;  // used when pose_noise.enabled
};

/// Re-anchors the primitive's learned relative poses to the execution scene.
/// Throws MissingReference when a needed reference object is absent.
TimedObjectTrajectory instantiate_trajectory(const learning::Policy& policy,
                                             std::size_t primitive_index,
                                             const WorldState& world);

/// Runs one primitive: per trajectory entry, proposes alternative goal poses,
/// solves IK, plans, and advances a scratch world on the first full success.
/// On failure the returned world is the input world unchanged.
std::pair<WorldState, PrimitiveReport> execute_primitive(
    const learning::Policy& policy, std::size_t primitive_index,
    const WorldState& world, const planning::KinematicChain& chain,
    const ExecParams& params,
    std::vector<KeyMomentError>* key_errors = nullptr,
    std::vector<SimLogRow>* log = nullptr);

/// Executes the whole policy in order, stopping at the first failure unless
/// continue_on_error is set.
ExecutionResult execute_policy(const learning::Policy& policy,
                               const WorldState& world,
                               const planning::KinematicChain& chain,
                               const ExecParams& params);

struct VerifyParams {
  double d_contact = 0.01;  // m
  double d_break = 0.02;    // m
};

/// True when every `present` pair's separation is within [0, d_contact] and
/// every `absent` pair's separation exceeds d_break.
bool verify_contacts(const WorldState& world,
                     const std::set<learning::ObjectPair>& present,
                     const std::set<learning::ObjectPair>& absent,
                     const VerifyParams& params);

}  // namespace clfd::sim
