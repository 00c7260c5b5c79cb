#include "clfd/sim/executor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "clfd/errors.hpp"
#include "clfd/planning/trajectory.hpp"

namespace clfd::sim {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::MotionPlanningFailure: return "motion_planning_failure";
    case Outcome::IkFailure: return "ik_failure";
    case Outcome::PoseEstimationFailure: return "pose_estimation_failure";
  }
  return "?";
}

namespace {

using learning::ObjectPair;
using learning::Policy;
using learning::Primitive;
using learning::PrimitiveKind;

ObjectPair canonical(const std::string& a, const std::string& b) {
  return a <= b ? ObjectPair{a, b} : ObjectPair{b, a};
}

const SceneObject& require_present(const WorldState& world,
                                   const std::string& name) {
  const SceneObject* obj = world.find(name);
  if (obj == nullptr || !obj->present)
    throw MissingReference("object '" + name + "' is not in the scene");
  return *obj;
}

// tool frame at a grasp: origin on the contact point, z along the approach
Pose grasp_tool_pose(const Pose& object_pose, const Eigen::Vector3d& location,
                     const Eigen::Vector3d& approach_dir_model) {
  const Eigen::Vector3d p = object_pose.apply(location);
  Eigen::Vector3d z = object_pose.rotation * approach_dir_model;
  if (z.norm() < 1e-12) z = -Eigen::Vector3d::UnitZ();
  z.normalize();
  const Eigen::Vector3d ref = std::abs(z.z()) < 0.9
                                  ? Eigen::Vector3d::UnitZ()
                                  : Eigen::Vector3d::UnitX();
  const Eigen::Vector3d x = ref.cross(z).normalized();
  const Eigen::Vector3d y = z.cross(x);
  Eigen::Matrix3d r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return Pose(Eigen::Quaterniond(r).normalized(), p);
}

// rotation error with the twist about the symmetry axis removed
double rotation_error_mod_symmetry(
    const Pose& achieved_rel, const Pose& learned_rel,
    const std::optional<Eigen::Vector3d>& axis) {
  Eigen::Quaterniond d =
      learned_rel.rotation.conjugate() * achieved_rel.rotation;
  if (d.w() < 0.0) d.coeffs() *= -1.0;
  if (axis) {
    const Eigen::Vector3d a = axis->normalized();
    const Eigen::Vector3d qv(d.x(), d.y(), d.z());
    const Eigen::Vector3d proj = qv.dot(a) * a;
    Eigen::Quaterniond twist(d.w(), proj.x(), proj.y(), proj.z());
    if (twist.norm() < 1e-12) return 2.0 * std::acos(std::min(1.0, std::abs(d.w())));
    twist.normalize();
    d = d * twist.conjugate();
    if (d.w() < 0.0) d.coeffs() *= -1.0;
  }
  return 2.0 * std::acos(std::min(1.0, std::abs(d.w())));
}

using EstimateMap = std::map<std::string, Pose>;

// observed cloud = posed model + Gaussian noise; ICP initialized from the
// current world pose, mirroring a tracking-style execution loop
EstimateMap estimate_poses(const WorldState& world, const ExecParams& params) {
  EstimateMap out;
  if (!params.pose_noise.enabled) return out;
  std::mt19937_64 rng(params.pose_noise.seed);
  std::normal_distribution<double> gauss(0.0, params.pose_noise.sigma);
  for (const auto& [name, obj] : world.objects) {
    if (!obj.present || obj.cloud.size() < 3) continue;
    PointCloud observed = transform_cloud(obj.pose, obj.cloud);
    for (auto& p : observed.points)
      p += Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    const icp::PoseEstimate est =
        icp::icp_register(obj.cloud, observed, obj.pose, params.icp);
    out[name] = est.pose;
  }
  return out;
}

Pose anchor_pose(const WorldState& world, const EstimateMap& estimates,
                 const std::string& name) {
  auto it = estimates.find(name);
  if (it != estimates.end()) return it->second;
  return require_present(world, name).pose;
}

// advances clock and robot config through a finished motion, carrying the
// attached object and logging at record_rate
void advance_world(WorldState& world, const planning::KinematicChain& chain,
                   const planning::JointTrajectory& traj,
                   const ExecParams& params, std::vector<SimLogRow>* log) {
  if (log != nullptr && params.record_rate > 0.0 && !traj.samples.empty()) {
    for (const auto& [t, q] : planning::resample(traj, params.record_rate)) {
      SimLogRow row;
      row.time = world.clock + t;
      row.config = q;
      WorldState snapshot = world;
      snapshot.robot_config = q;
      if (snapshot.attachment) {
        auto& held = snapshot.objects.at(snapshot.attachment->object);
        held.pose = compose(planning::tool_pose(chain, q),
                            snapshot.attachment->grasp);
      }
      apply_rules(snapshot);
      for (const auto& [name, obj] : snapshot.objects)
        if (obj.present) row.object_poses[name] = obj.pose;
      log->push_back(std::move(row));
    }
  }
  if (!traj.samples.empty()) world.robot_config = traj.samples.back().second;
  if (world.attachment) {
    auto& held = world.objects.at(world.attachment->object);
    held.pose = compose(planning::tool_pose(chain, world.robot_config),
                        world.attachment->grasp);
  }
  world.clock += traj.duration;
  apply_rules(world);
}

void hold_position(WorldState& world, double dt, const ExecParams& params,
                   std::vector<SimLogRow>* log) {
  if (log != nullptr && params.record_rate > 0.0) {
    const int steps = static_cast<int>(std::floor(dt * params.record_rate));
    for (int k = 0; k <= steps; ++k) {
      SimLogRow row;
      row.time = world.clock + k / params.record_rate;
      row.config = world.robot_config;
      for (const auto& [name, obj] : world.objects)
        if (obj.present) row.object_poses[name] = obj.pose;
      log->push_back(std::move(row));
    }
  }
  world.clock += dt;
}

planning::SymmetrySpec symmetry_of(const WorldState& world,
                                   const Policy& policy,
                                   const std::string& name) {
  planning::SymmetrySpec spec;
  if (const SceneObject* obj = world.find(name); obj && obj->symmetry_axis) {
    spec.axis = obj->symmetry_axis;
    spec.axis_point = obj->symmetry_point;
  } else if (auto it = policy.object_models.find(name);
             it != policy.object_models.end()) {
    spec.axis = it->second.symmetry_axis;
    spec.axis_point = it->second.symmetry_point;
  }
  return spec;
}

std::vector<planning::ContactBand> contact_bands(const WorldState& world,
                                                 const TimedEntry& entry,
                                                 const ExecParams& params) {
  std::vector<planning::ContactBand> bands;
  const SceneObject* moving = world.find(entry.object);
  if (moving == nullptr) return bands;
  for (const auto& pair : entry.required_contacts) {
    std::string other;
    if (pair.first == entry.object)
      other = pair.second;
    else if (pair.second == entry.object)
      other = pair.first;
    else
      continue;  // pairs not involving the moved object cannot filter it
    const SceneObject* obj = world.find(other);
    if (obj == nullptr || !obj->present) continue;
    bands.push_back({moving->collision, obj->collision, obj->pose,
                     params.d_contact});
  }
  return bands;
}

struct AttemptCounters {
  int ik_failures = 0;
  int plan_failures = 0;
};

// IK then RRT toward a tool target; returns the time-parameterized motion
std::optional<planning::JointTrajectory> try_reach(
    const planning::KinematicChain& chain, const WorldState& world,
    const Pose& tool_target, const ExecParams& params, std::uint64_t salt,
    AttemptCounters& counters, planning::JointConfig* q_out) {
  planning::IkParams ik = params.ik;
  ik.rng_seed = params.ik.rng_seed ^ (salt * 0x9e3779b97f4a7c15ULL + 1);
  const auto q_goal =
      planning::inverse_kinematics(chain, tool_target, world.robot_config, ik);
  if (!q_goal) {
    ++counters.ik_failures;
    return std::nullopt;
  }
  planning::RrtParams rrt = params.rrt;
  rrt.rng_seed = params.rrt.rng_seed ^ (salt * 0xbf58476d1ce4e5b9ULL + 1);
  const planning::Scene scene = make_planning_scene(world, params.margin);
  const planning::PlanResult plan = planning::plan_rrt_connect(
      chain, scene, world.robot_config, *q_goal, rrt);
  if (!plan.ok()) {
    ++counters.plan_failures;
    return std::nullopt;
  }
  if (q_out != nullptr) *q_out = *q_goal;
  return planning::time_parameterize(plan.path, chain);
}

}  // namespace

TimedObjectTrajectory instantiate_trajectory(const Policy& policy,
                                             std::size_t primitive_index,
                                             const WorldState& world) {
  if (primitive_index >= policy.primitives.size())
    throw InvalidArgument("primitive index out of range");
  const Primitive& prim = policy.primitives[primitive_index];
  TimedObjectTrajectory out;

  switch (prim.kind) {
    case PrimitiveKind::MakeContact: {
      const SceneObject& obj = require_present(world, prim.target);
      TimedEntry entry;
      entry.timestamp = 0.0;
      entry.object = prim.target;
      entry.pose = obj.pose;  // scene frame; the object does not move
      out.entries.push_back(std::move(entry));
      break;
    }
    case PrimitiveKind::BreakContact: {
      const auto& bp = std::get<learning::BreakContactParams>(prim.params);
      require_present(world, prim.target);
      require_present(world, bp.reference);
      TimedEntry entry;
      entry.timestamp = 0.0;
      entry.object = prim.target;
      entry.pose = bp.effective();
      entry.reference = bp.reference;
      entry.required_contacts.insert(canonical(prim.target, bp.reference));
      out.entries.push_back(std::move(entry));
      break;
    }
    case PrimitiveKind::MaintainContact: {
      const auto& mp = std::get<learning::MaintainContactParams>(prim.params);
      require_present(world, prim.target);
      require_present(world, mp.track_reference);

      // key: nanosecond-quantized timestamp; key moments override the dense
      // entry that shares their frame
      std::map<long long, TimedEntry> merged;
      for (const auto& [t, rel] : mp.dense_track) {
        TimedEntry entry;
        entry.timestamp = t;
        entry.object = prim.target;
        entry.pose = rel;
        entry.reference = mp.track_reference;
        merged[std::llround(t * 1e9)] = std::move(entry);
      }
      for (const auto& km : mp.key_moments) {
        require_present(world, km.reference);
        auto rel = km.relative_poses.find({prim.target, km.reference});
        if (rel == km.relative_poses.end())
          throw MissingReference("key moment at frame " +
                                 std::to_string(km.frame) +
                                 " lacks a pose for reference '" +
                                 km.reference + "'");
        TimedEntry entry;
        entry.timestamp = km.timestamp;
        entry.object = prim.target;
        entry.pose = rel->second;
        entry.reference = km.reference;
        entry.required_contacts = km.contact_set;
        entry.is_key_moment = true;
        entry.key_frame = km.frame;
        merged[std::llround(km.timestamp * 1e9)] = std::move(entry);
      }

      std::set<ObjectPair> prevailing;
      for (auto& [t, entry] : merged) {
        if (entry.is_key_moment)
          prevailing = entry.required_contacts;
        else
          entry.required_contacts = prevailing;
        out.entries.push_back(std::move(entry));
      }
      break;
    }
  }
  return out;
}

std::pair<WorldState, PrimitiveReport> execute_primitive(
    const Policy& policy, std::size_t primitive_index, const WorldState& world,
    const planning::KinematicChain& chain, const ExecParams& params,
    std::vector<KeyMomentError>* key_errors, std::vector<SimLogRow>* log) {
  const Primitive& prim = policy.primitives.at(primitive_index);
  const TimedObjectTrajectory traj =
      instantiate_trajectory(policy, primitive_index, world);

  PrimitiveReport report;
  report.name =
      std::string(learning::to_string(prim.kind)) + "[" + prim.target + "]";
  WorldState scratch = world;

  EstimateMap estimates;
  if (params.pose_noise.enabled) {
    try {
      estimates = estimate_poses(scratch, params);
    } catch (const Error& e) {
      report.outcome = Outcome::PoseEstimationFailure;
      report.detail = e.what();
      return {world, report};
    }
  }

  const double clock_before = scratch.clock;

  if (prim.kind == PrimitiveKind::MakeContact) {
    const auto& mp = std::get<learning::MakeContactParams>(prim.params);
    const auto& locations = mp.effective();
    const Pose target_anchor = anchor_pose(scratch, estimates, prim.target);

    AttemptCounters counters;
    bool reached = false;
    const int yaws = std::max(
        1, static_cast<int>(std::round(2.0 * M_PI / params.grasp_yaw_step)));
    int candidate = 0;
    for (const auto& loc : locations) {
      const Pose base_tool =
          grasp_tool_pose(target_anchor, loc.point, mp.approach_dir);
      // the free grasp DOF: spin about the approach axis
      for (int k = 0; k < yaws && !reached; ++k, ++candidate) {
        const Pose tool_target =
            compose(base_tool, Pose::from_rotation(Eigen::Vector3d::UnitZ(),
                                                   k * params.grasp_yaw_step));
        auto motion = try_reach(chain, scratch, tool_target, params,
                                candidate + 1, counters, nullptr);
        if (!motion) continue;
        advance_world(scratch, chain, *motion, params, log);
        report.candidate_indices.push_back(candidate);
        reached = true;
      }
      if (reached) break;
    }
    if (!reached) {
      report.outcome = counters.plan_failures > 0
                           ? Outcome::MotionPlanningFailure
                           : Outcome::IkFailure;
      report.detail = "grasp unreachable: " +
                      std::to_string(counters.ik_failures) + " ik / " +
                      std::to_string(counters.plan_failures) +
                      " planning failures";
      return {world, report};
    }
    const Pose tool_now = planning::tool_pose(chain, scratch.robot_config);
    const Pose& true_pose = require_present(scratch, prim.target).pose;
    scratch.attachment = Attachment{prim.target,
                                    compose(invert(tool_now), true_pose)};
    report.duration = scratch.clock - clock_before;
    return {scratch, report};
  }

  // Maintain / Break move the held object along the timed entries
  if (!scratch.attachment || scratch.attachment->object != prim.target)
    throw InvalidArgument("primitive '" +
                          std::string(learning::to_string(prim.kind)) +
                          "' requires '" + prim.target + "' to be attached");

  double prev_t = 0.0;
  for (const TimedEntry& entry : traj.entries) {
    const Pose desired =
        entry.reference.empty()
            ? entry.pose
            : compose(anchor_pose(scratch, estimates, entry.reference),
                      entry.pose);

    std::vector<Pose> candidates;
    if (params.propose_alternatives) {
      candidates = planning::propose_alternative_poses(
          desired, symmetry_of(scratch, policy, entry.object),
          contact_bands(scratch, entry, params));
    } else {
      candidates.push_back(desired);
    }

    const double target_dt = std::max(0.0, entry.timestamp - prev_t);
    AttemptCounters counters;
    bool reached = false;
    for (std::size_t ci = 0; ci < candidates.size() && !reached; ++ci) {
      const Pose tool_target =
          compose(candidates[ci], invert(scratch.attachment->grasp));
      auto motion =
          try_reach(chain, scratch, tool_target, params, ci + 1, counters,
                    nullptr);
      if (!motion) continue;
      if (motion->duration <= 0.0) {
        // already at the target: hold for the demonstrated time
        hold_position(scratch, target_dt, params, log);
      } else {
        const planning::JointTrajectory matched =
            motion->duration >= target_dt
                ? *motion
                : planning::match_duration(*motion, target_dt);
        advance_world(scratch, chain, matched, params, log);
      }
      report.candidate_indices.push_back(static_cast<int>(ci));
      reached = true;
    }
    if (!reached) {
      report.outcome = counters.plan_failures > 0
                           ? Outcome::MotionPlanningFailure
                           : Outcome::IkFailure;
      report.detail = "entry at t=" + std::to_string(entry.timestamp) +
                      " unreachable over " +
                      std::to_string(candidates.size()) + " candidates";
      return {world, report};
    }

    if (entry.is_key_moment && key_errors != nullptr) {
      KeyMomentError err;
      err.primitive_index = primitive_index;
      err.frame = entry.key_frame;
      const Pose achieved_rel =
          relative_to(require_present(scratch, entry.object).pose,
                      require_present(scratch, entry.reference).pose);
      err.translation_error =
          (achieved_rel.translation - entry.pose.translation).norm();
      err.rotation_error = rotation_error_mod_symmetry(
          achieved_rel, entry.pose,
          symmetry_of(scratch, policy, entry.object).axis);
      err.contacts_ok = verify_contacts(scratch, entry.required_contacts, {},
                                        {params.d_contact, params.d_break});
      key_errors->push_back(err);
    }
    prev_t = std::max(prev_t, entry.timestamp);
  }

  if (prim.kind == PrimitiveKind::BreakContact) scratch.attachment.reset();
  report.duration = scratch.clock - clock_before;
  return {scratch, report};
}

ExecutionResult execute_policy(const Policy& policy, const WorldState& world,
                               const planning::KinematicChain& chain,
                               const ExecParams& params) {
  ExecutionResult result;
  WorldState current = world;
  const double clock_start = current.clock;
  bool all_ok = true;
  for (std::size_t i = 0; i < policy.primitives.size(); ++i) {
    auto [next, report] = execute_primitive(
        policy, i, current, chain, params, &result.key_moment_errors,
        params.record_rate > 0.0 ? &result.log : nullptr);
    const bool ok = report.outcome == Outcome::Success;
    result.reports.push_back(std::move(report));
    if (ok) {
      current = std::move(next);
    } else {
      all_ok = false;
      if (!params.continue_on_error) break;
    }
  }
  result.total_duration = current.clock - clock_start;
  result.success = all_ok && result.reports.size() == policy.primitives.size();
  return result;
}

bool verify_contacts(const WorldState& world,
                     const std::set<ObjectPair>& present,
                     const std::set<ObjectPair>& absent,
                     const VerifyParams& params) {
  const auto separation = [&](const ObjectPair& pair) {
    const SceneObject* a = world.find(pair.first);
    const SceneObject* b = world.find(pair.second);
    if (a == nullptr || b == nullptr)
      throw UnknownObject("verify_contacts: unknown pair " + pair.first +
                          "/" + pair.second);
    if (!a->present || !b->present)
      return std::numeric_limits<double>::infinity();
    return model_distance(a->collision, a->pose, b->collision, b->pose)
        .separation;
  };
  for (const auto& pair : present)
    if (separation(pair) > params.d_contact) return false;
  for (const auto& pair : absent)
    if (separation(pair) <= params.d_break) return false;
  return true;
}

}  // namespace clfd::sim
