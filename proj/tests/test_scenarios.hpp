#pragma once

#include "clfd/io/scenario.hpp"
#include "clfd/learning/policy.hpp"
#include "clfd/sim/world.hpp"

// Compact cup-onto-shelf scenario shared by the learning and io suites:
// one pick-carry-place episode with a scripted cup/shelf contact at the end.
inline clfd::io::ScenarioSpec make_cup_shelf_scenario(std::uint64_t seed = 0) {
  using namespace clfd;
  io::ScenarioSpec spec;
  spec.seed = seed;
  spec.frame_rate = 30.0;
  spec.frame_count = 165;

  io::ShapeSpec shelf;
  shelf.name = "shelf";
  shelf.kind = io::ShapeSpec::Kind::Box;
  shelf.box_size = {0.24, 0.24, 0.03};
  shelf.samples = 2400;
  shelf.initial_pose = Pose::from_translation({0.52, 0.18, 0.10});
  spec.shapes.push_back(shelf);

  io::ShapeSpec cup;
  cup.name = "cup";
  cup.kind = io::ShapeSpec::Kind::Bowl;
  cup.radius = 0.045;
  cup.bottom_radius = 0.03;
  cup.height = 0.045;
  cup.thickness = 0.004;
  cup.samples = 1200;
  cup.symmetry_axis = Eigen::Vector3d::UnitZ();
  cup.initial_pose = Pose::from_translation({0.38, -0.14, 0.05});
  spec.shapes.push_back(cup);

  spec.hand.push_back(
      {"cup", 1.0, 4.5, {0.045, 0.0, 0.045}, {0.0, 0.0, 1.0}});

  const Pose start = cup.initial_pose;
  const Pose lifted = Pose::from_translation({0.38, -0.14, 0.25});
  // cup rests 3 mm above the shelf top (shelf top z = 0.115)
  const Pose placed = Pose::from_translation({0.52, 0.18, 0.122});
  spec.moves.push_back({"cup", 1.3, 1.9, start, lifted});
  spec.moves.push_back({"cup", 2.2, 3.2, lifted, placed});

  // descent crosses the 5 mm make threshold one frame before settling
  spec.scripted_contacts.push_back({"cup", "shelf", 96, 164});
  return spec;
}

// Flat 0.5 m wheel on a table plus a small shelf plate; the policy picks the
// wheel at a rim point, then re-places it centered on the plate. Keeping the
// demonstrated orientation puts the grasped rim point beyond the arm's
// reach, so the place only succeeds through a symmetry-rotated goal pose.
inline std::pair<clfd::sim::WorldState, clfd::learning::Policy>
make_wheel_world_and_policy() {
  using namespace clfd;

  io::ShapeSpec cyl;
  cyl.name = "wheel";
  cyl.kind = io::ShapeSpec::Kind::Cylinder;
  cyl.radius = 0.25;
  cyl.height = 0.04;
  cyl.samples = 500;
  const PointCloud wheel_cloud = io::sample_shape(cyl, 21);

  sim::WorldState world;
  sim::SceneObject table;
  table.name = "table";
  table.collision.parts.push_back(
      make_box({0.8, 0.8, 0.02}, {0.3, 0.0, -0.02}));
  table.pose = Pose::identity();
  world.objects["table"] = table;

  sim::SceneObject plate;
  plate.name = "plate";
  plate.collision.parts.push_back(make_box({0.2, 0.2, 0.005}));
  plate.pose = Pose::from_translation({0.55, 0.0, 0.221});
  world.objects["plate"] = plate;

  sim::SceneObject wheel;
  wheel.name = "wheel";
  wheel.cloud = wheel_cloud;
  wheel.collision = build_collision_model(wheel_cloud, 0.02, 5);
  wheel.pose = Pose::from_translation({0.40, -0.38, 0.023});
  wheel.symmetry_axis = Eigen::Vector3d::UnitZ();
  world.objects["wheel"] = wheel;

  planning::JointConfig home(7);
  home << 0.0, -0.5, 0.0, -2.0, 0.0, 2.0, 0.8;
  world.robot_config = home;

  learning::Policy policy;
  policy.frame_rate = 30.0;
  learning::ObjectModel om;
  om.cloud = wheel.cloud;
  om.collision = wheel.collision;
  om.symmetry_axis = Eigen::Vector3d::UnitZ();
  policy.object_models["wheel"] = om;
  learning::ObjectModel pm;
  pm.collision = plate.collision;
  policy.object_models["plate"] = pm;

  learning::Primitive make;
  make.kind = learning::PrimitiveKind::MakeContact;
  make.target = "wheel";
  make.span = {0, 0};
  learning::MakeContactParams mp;
  mp.locations = {{{0.25, 0.0, 0.02}, 10}};  // rim edge, model frame
  mp.approach_dir = {0.0, 0.0, -1.0};
  make.params = mp;
  policy.primitives.push_back(make);

  learning::Primitive brk;
  brk.kind = learning::PrimitiveKind::BreakContact;
  brk.target = "wheel";
  brk.span = {1, 1};
  learning::BreakContactParams bp;
  bp.reference = "plate";
  bp.final_pose = Pose::from_translation({0.07, 0.0, 0.029});
  brk.params = bp;
  policy.primitives.push_back(brk);
  return {world, policy};
}
