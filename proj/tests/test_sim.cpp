#include <doctest.h>

#include "clfd/errors.hpp"
#include "clfd/io/chain_io.hpp"
#include "clfd/io/scenario.hpp"
#include "clfd/sim/executor.hpp"
#include "test_scenarios.hpp"

using namespace clfd;
using namespace clfd::sim;
using learning::BreakContactParams;
using learning::KeyMoment;
using learning::MaintainContactParams;
using learning::MakeContactParams;
using learning::Policy;
using learning::Primitive;
using learning::PrimitiveKind;

namespace {

const planning::KinematicChain& arm7() {
  static const planning::KinematicChain chain =
      io::load_chain(std::string(CLFD_DATA_DIR) + "/robots/arm7.json");
  return chain;
}

planning::JointConfig home_config() {
  planning::JointConfig q(7);
  q << 0.0, -0.5, 0.0, -2.0, 0.0, 2.0, 0.8;
  return q;
}

PointCloud sampled_box(const Eigen::Vector3d& size, std::uint64_t seed) {
  io::ShapeSpec spec;
  spec.name = "box";
  spec.kind = io::ShapeSpec::Kind::Box;
  spec.box_size = size;
  spec.samples = 400;
  return io::sample_shape(spec, seed);
}

PointCloud sampled_cylinder(double radius, double height, std::uint64_t seed) {
  io::ShapeSpec spec;
  spec.name = "cyl";
  spec.kind = io::ShapeSpec::Kind::Cylinder;
  spec.radius = radius;
  spec.height = height;
  spec.samples = 500;
  return io::sample_shape(spec, seed);
}

SceneObject make_object(const std::string& name, const PointCloud& cloud,
                        const Pose& pose) {
  SceneObject obj;
  obj.name = name;
  obj.cloud = cloud;
  obj.collision = build_collision_model(cloud, 0.02, 5);
  obj.pose = pose;
  return obj;
}

// table, a pedestal ("base"), and a graspable 5 cm cube ("box")
WorldState make_test_world() {
  WorldState world;
  SceneObject table;
  table.name = "table";
  table.collision.parts.push_back(
      make_box({0.6, 0.6, 0.02}, {0.4, 0.0, -0.02}));
  table.pose = Pose::identity();
  world.objects["table"] = table;

  world.objects["base"] =
      make_object("base", sampled_box({0.1, 0.1, 0.1}, 11),
                  Pose::from_translation({0.5, 0.2, 0.05}));
  world.objects["box"] =
      make_object("box", sampled_box({0.05, 0.05, 0.05}, 12),
                  Pose::from_translation({0.42, -0.18, 0.029}));
  world.robot_config = home_config();
  return world;
}

// pick the box, lift it, place it beside the pedestal
Policy make_test_policy(const WorldState& world) {
  Policy policy;
  policy.frame_rate = 30.0;
  for (const auto& [name, obj] : world.objects) {
    if (obj.cloud.empty()) continue;
    learning::ObjectModel om;
    om.cloud = obj.cloud;
    om.collision = obj.collision;
    policy.object_models[name] = om;
  }

  Primitive make;
  make.kind = PrimitiveKind::MakeContact;
  make.target = "box";
  make.span = {0, 0};
  MakeContactParams mp;
  mp.locations = {{{0.0, 0.0, 0.025}, 10}};
  mp.approach_dir = {0.0, 0.0, -1.0};
  make.params = mp;
  policy.primitives.push_back(make);

  Primitive maintain;
  maintain.kind = PrimitiveKind::MaintainContact;
  maintain.target = "box";
  maintain.span = {0, 30};
  MaintainContactParams mm;
  mm.track_reference = "base";
  // box relative to base: start arrangement, then lifted 0.15 m
  const Pose rel0 = Pose::from_translation({-0.08, -0.38, -0.021});
  const Pose rel1 = Pose::from_translation({-0.08, -0.38, 0.129});
  for (int k = 0; k <= 10; ++k) {
    Pose rel = rel0;
    rel.translation.z() += 0.015 * k;
    mm.dense_track.emplace_back(k / 10.0, rel);
  }
  KeyMoment first;
  first.frame = 0;
  first.timestamp = 0.0;
  first.reference = "base";
  first.relative_poses[{"box", "base"}] = rel0;
  KeyMoment last;
  last.frame = 30;
  last.timestamp = 1.0;
  last.reference = "base";
  last.relative_poses[{"box", "base"}] = rel1;
  mm.key_moments = {first, last};
  maintain.params = mm;
  policy.primitives.push_back(maintain);

  Primitive brk;
  brk.kind = PrimitiveKind::BreakContact;
  brk.target = "box";
  brk.span = {30, 30};
  BreakContactParams bp;
  bp.reference = "base";
  // beside the pedestal, resting height above the table
  bp.final_pose = Pose::from_translation({0.0, -0.15, -0.021});
  brk.params = bp;
  policy.primitives.push_back(brk);
  return policy;
}

ExecParams fast_params(std::uint64_t seed = 1) {
  ExecParams params;
  params.rrt.rng_seed = seed;
  params.ik.rng_seed = seed * 31 + 7;
  return params;
}

}  // namespace

TEST_SUITE_BEGIN("sim");

TEST_CASE("instantiate_trajectory re-anchoring") {
  WorldState world = make_test_world();
  const Policy policy = make_test_policy(world);

  SUBCASE("make contact anchors at the current object pose") {
    const auto traj = instantiate_trajectory(policy, 0, world);
    REQUIRE(traj.entries.size() == 1);
    CHECK(traj.entries[0].reference.empty());
    CHECK(translation_distance(traj.entries[0].pose,
                               world.objects.at("box").pose) == 0.0);
  }

  SUBCASE("maintain entries follow a displaced reference") {
    WorldState displaced = world;
    displaced.objects.at("base").pose =
        Pose::from_translation({0.62, 0.25, 0.05});
    const auto traj = instantiate_trajectory(policy, 1, displaced);
    const auto& mm =
        std::get<MaintainContactParams>(policy.primitives[1].params);
    REQUIRE(traj.entries.size() >= mm.dense_track.size());
    for (const auto& entry : traj.entries) {
      CHECK(entry.reference == "base");
      // re-anchoring arithmetic: scene pose = reference pose * relative
      const Pose scene =
          compose(displaced.objects.at("base").pose, entry.pose);
      CHECK(scene.translation.x() == doctest::Approx(0.62 - 0.08));
      CHECK(scene.translation.y() == doctest::Approx(0.25 - 0.38));
    }
    CHECK(traj.entries.front().is_key_moment);
    CHECK(traj.entries.back().is_key_moment);
  }

  SUBCASE("break override takes precedence") {
    Policy with = policy;
    const Pose override_pose = Pose::from_translation({0.1, -0.2, 0.05});
    std::get<BreakContactParams>(with.primitives[2].params).manual_override =
        override_pose;
    const auto traj = instantiate_trajectory(with, 2, world);
    REQUIRE(traj.entries.size() == 1);
    CHECK(translation_distance(traj.entries[0].pose, override_pose) == 0.0);
    CHECK(traj.entries[0].reference == "base");
  }

  SUBCASE("missing reference throws") {
    WorldState missing = world;
    missing.objects.erase("base");
    CHECK_THROWS_AS(instantiate_trajectory(policy, 1, missing),
                    MissingReference);
    CHECK_THROWS_AS(instantiate_trajectory(policy, 2, missing),
                    MissingReference);
  }
}

TEST_CASE("execute_policy runs pick, carry, place") {
  const WorldState world = make_test_world();
  const Policy policy = make_test_policy(world);
  ExecParams params = fast_params(3);
  params.record_rate = 1000.0;

  const ExecutionResult result =
      execute_policy(policy, world, arm7(), params);
  REQUIRE(result.success);
  REQUIRE(result.reports.size() == 3);
  for (const auto& r : result.reports)
    CHECK(r.outcome == Outcome::Success);
  CHECK(result.total_duration > 0.0);

  // key moment errors well inside IK tolerance scale
  REQUIRE_FALSE(result.key_moment_errors.empty());
  for (const auto& e : result.key_moment_errors) {
    CHECK(e.translation_error < 0.002);
    CHECK(e.rotation_error < 0.02);
  }

  // no teleportation: 1 kHz motion respects velocity limits
  const auto& chain = arm7();
  for (std::size_t i = 1; i < result.log.size(); ++i) {
    const double dt = result.log[i].time - result.log[i - 1].time;
    if (dt <= 0.0 || dt > 0.0015) continue;  // primitive boundary
    for (std::size_t j = 0; j < chain.dof(); ++j) {
      CHECK(std::abs(result.log[i].config[j] - result.log[i - 1].config[j]) <=
            chain.joints[j].vel_limit * dt + 1e-9);
    }
  }
}

TEST_CASE("attachment stays rigid while carrying") {
  const WorldState world = make_test_world();
  const Policy policy = make_test_policy(world);
  const auto& chain = arm7();
  ExecParams params = fast_params(4);

  auto [after_make, report_make] =
      execute_primitive(policy, 0, world, chain, params);
  REQUIRE(report_make.outcome == Outcome::Success);
  REQUIRE(after_make.attachment.has_value());
  CHECK(after_make.attachment->object == "box");

  std::vector<SimLogRow> log;
  ExecParams logged = params;
  logged.record_rate = 1000.0;
  auto [after_carry, report_carry] = execute_primitive(
      policy, 1, after_make, chain, logged, nullptr, &log);
  REQUIRE(report_carry.outcome == Outcome::Success);
  REQUIRE_FALSE(log.empty());
  const Pose grasp = after_make.attachment->grasp;
  for (const auto& row : log) {
    const Pose tool = planning::tool_pose(chain, row.config);
    const Pose held = row.object_poses.at("box");
    const Pose rel = compose(invert(tool), held);
    CHECK(translation_distance(rel, grasp) < 1e-9);
    CHECK(rotation_distance(rel, grasp) < 1e-9);
  }

  // after the break primitive the attachment is released and the object
  // rests at the commanded place pose
  auto [after_place, report_place] =
      execute_primitive(policy, 2, after_carry, chain, params);
  REQUIRE(report_place.outcome == Outcome::Success);
  CHECK_FALSE(after_place.attachment.has_value());
  const Pose want =
      compose(after_place.objects.at("base").pose,
              std::get<BreakContactParams>(policy.primitives[2].params)
                  .final_pose);
  CHECK(translation_distance(after_place.objects.at("box").pose, want) <
        0.001);
}

TEST_CASE("walled-off target fails and leaves the world unchanged") {
  WorldState world = make_test_world();
  // tall narrow chimney around the box: the wrist cannot fit inside and the
  // roof blocks reaching over
  const Eigen::Vector3d c(0.42, -0.18, 0.0);
  SceneObject cage;
  cage.name = "cage";
  cage.pose = Pose::identity();
  const double inner = 0.045, th = 0.008, h = 0.35;
  cage.collision.parts.push_back(make_box(
      {th, inner + th, h / 2}, c + Eigen::Vector3d(inner + th, 0, h / 2)));
  cage.collision.parts.push_back(make_box(
      {th, inner + th, h / 2}, c + Eigen::Vector3d(-(inner + th), 0, h / 2)));
  cage.collision.parts.push_back(make_box(
      {inner, th, h / 2}, c + Eigen::Vector3d(0, inner + th, h / 2)));
  cage.collision.parts.push_back(make_box(
      {inner, th, h / 2}, c + Eigen::Vector3d(0, -(inner + th), h / 2)));
  cage.collision.parts.push_back(
      make_box({inner + th, inner + th, th}, c + Eigen::Vector3d(0, 0, h)));
  world.objects["cage"] = cage;

  const Policy policy = make_test_policy(world);
  ExecParams params = fast_params(5);
  params.ik.max_restarts = 8;
  params.rrt.max_iters = 3000;

  const auto [after, report] =
      execute_primitive(policy, 0, world, arm7(), params);
  CHECK(report.outcome == Outcome::MotionPlanningFailure);
  // world unchanged on failure
  CHECK(translation_distance(after.objects.at("box").pose,
                             world.objects.at("box").pose) == 0.0);
  CHECK((after.robot_config - world.robot_config).norm() == 0.0);
  CHECK(after.clock == world.clock);
  CHECK_FALSE(after.attachment.has_value());
}

TEST_CASE("alternative poses rescue an unreachable goal") {
  // wide wheel grasped at its rim, then placed centered on a shelf plate:
  // keeping the demonstrated orientation puts the grasped rim point far
  // beyond reach, but spinning the wheel about its symmetry axis brings the
  // grasp around to the near side
  const auto [world, policy] = make_wheel_world_and_policy();
  const auto& chain = arm7();

  ExecParams params = fast_params(6);
  params.ik.max_restarts = 6;
  params.ik.max_iterations = 80;

  const auto [held, pick] = execute_primitive(policy, 0, world, chain, params);
  REQUIRE(pick.outcome == Outcome::Success);
  REQUIRE(held.attachment.has_value());

  const auto [after, place] =
      execute_primitive(policy, 1, held, chain, params);
  REQUIRE(place.outcome == Outcome::Success);
  REQUIRE_FALSE(place.candidate_indices.empty());
  CHECK(place.candidate_indices.front() > 0);  // a non-first candidate won

  ExecParams no_alt = params;
  no_alt.propose_alternatives = false;
  const auto [after2, place2] =
      execute_primitive(policy, 1, held, chain, no_alt);
  CHECK(place2.outcome != Outcome::Success);
}

TEST_CASE("verify_contacts") {
  const WorldState world = make_test_world();
  VerifyParams params;

  // the box rests 4 mm above the table
  CHECK(verify_contacts(world, {{"box", "table"}}, {}, params));
  CHECK(verify_contacts(world, {}, {}, params));  // vacuous

  WorldState hovering = world;
  hovering.objects.at("box").pose =
      Pose::from_translation({0.42, -0.18, 0.079});
  CHECK_FALSE(verify_contacts(hovering, {{"box", "table"}}, {}, params));
  // and the absent requirement flips
  CHECK(verify_contacts(hovering, {}, {{"box", "table"}}, params));
  CHECK_FALSE(verify_contacts(world, {}, {{"box", "table"}}, params));

  CHECK_THROWS_AS(verify_contacts(world, {{"box", "ghost"}}, {}, params),
                  UnknownObject);
}

TEST_CASE("execution is deterministic for fixed seeds") {
  const WorldState world = make_test_world();
  const Policy policy = make_test_policy(world);
  const ExecParams params = fast_params(8);

  const ExecutionResult a = execute_policy(policy, world, arm7(), params);
  const ExecutionResult b = execute_policy(policy, world, arm7(), params);
  REQUIRE(a.reports.size() == b.reports.size());
  CHECK(a.total_duration == b.total_duration);
  CHECK(a.success == b.success);
  for (std::size_t i = 0; i < a.reports.size(); ++i) {
    CHECK(a.reports[i].outcome == b.reports[i].outcome);
    CHECK(a.reports[i].duration == b.reports[i].duration);
    CHECK(a.reports[i].candidate_indices == b.reports[i].candidate_indices);
  }
  REQUIRE(a.key_moment_errors.size() == b.key_moment_errors.size());
  for (std::size_t i = 0; i < a.key_moment_errors.size(); ++i) {
    CHECK(a.key_moment_errors[i].translation_error ==
          b.key_moment_errors[i].translation_error);
    CHECK(a.key_moment_errors[i].rotation_error ==
          b.key_moment_errors[i].rotation_error);
  }
}

TEST_CASE("pose estimation route reports estimation failures") {
  const WorldState world = make_test_world();
  const Policy policy = make_test_policy(world);
  ExecParams params = fast_params(9);
  params.pose_noise.enabled = true;
  params.pose_noise.sigma = 0.0005;

  // nominal noise: the pick still succeeds
  const auto [after, report] =
      execute_primitive(policy, 0, world, arm7(), params);
  CHECK(report.outcome == Outcome::Success);

  // an impossible fitness requirement surfaces as an estimation failure
  ExecParams broken = params;
  broken.icp.min_fitness = 1.5;
  const auto [same, failed] =
      execute_primitive(policy, 0, world, arm7(), broken);
  CHECK(failed.outcome == Outcome::PoseEstimationFailure);
  CHECK(translation_distance(same.objects.at("box").pose,
                             world.objects.at("box").pose) == 0.0);
}

TEST_SUITE_END();
