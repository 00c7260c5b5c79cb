#include <doctest.h>

#include "clfd/errors.hpp"
#include "clfd/learning/learn.hpp"
#include "clfd/learning/segmentation.hpp"
#include "test_scenarios.hpp"

using namespace clfd;
using namespace clfd::learning;

namespace {

contact::ContactTimeline timeline_of(const std::string& object,
                                     const std::vector<bool>& states) {
  contact::ContactTimeline tl;
  tl.pair = {kHandName, object};
  tl.states = states;
  tl.events = contact::events_from_states(states);
  return tl;
}

std::vector<bool> span_states(int frames, int start, int end) {
  std::vector<bool> s(frames, false);
  for (int f = start; f <= end; ++f) s[f] = true;
  return s;
}

struct LearnedArtifacts {
  Demonstration demo;
  io::GroundTruth truth;
  ContactTimelines timelines;
  std::vector<Primitive> primitives;
  Policy policy;
};

LearnedArtifacts run_pipeline(const io::ScenarioSpec& spec) {
  LearnedArtifacts out;
  auto [demo, truth] = io::generate_demo(spec);
  out.truth = std::move(truth);
  out.demo = filter_demonstration(demo);
  out.timelines = analyze_contacts(out.demo, contact::HysteresisParams{});
  out.primitives = segment_primitives(out.timelines.hand);
  const PoseTracks tracks = track_all_objects(out.demo, icp::IcpParams{});
  out.policy = learn_policy(out.demo, out.primitives, out.timelines, tracks,
                            LearnParams{});
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("learning");

TEST_CASE("segment_primitives from a single contact run") {
  std::map<std::string, contact::ContactTimeline> timelines;
  timelines["bowl"] = timeline_of("bowl", span_states(100, 10, 50));
  const auto prims = segment_primitives(timelines);
  REQUIRE(prims.size() == 3);
  CHECK(prims[0].kind == PrimitiveKind::MakeContact);
  CHECK(prims[0].span == std::pair<int, int>{10, 10});
  CHECK(prims[1].kind == PrimitiveKind::MaintainContact);
  CHECK(prims[1].span == std::pair<int, int>{10, 50});
  CHECK(prims[2].kind == PrimitiveKind::BreakContact);
  CHECK(prims[2].span == std::pair<int, int>{50, 50});
  for (const auto& p : prims) CHECK(p.target == "bowl");
}

TEST_CASE("segment_primitives with no contact is empty") {
  std::map<std::string, contact::ContactTimeline> timelines;
  timelines["bowl"] = timeline_of("bowl", std::vector<bool>(60, false));
  CHECK(segment_primitives(timelines).empty());
}

TEST_CASE("segment_primitives interleaves objects by start frame") {
  std::map<std::string, contact::ContactTimeline> timelines;
  timelines["faucet"] = timeline_of("faucet", span_states(100, 5, 7));
  timelines["bowl"] = timeline_of("bowl", span_states(100, 20, 90));
  const auto prims = segment_primitives(timelines);
  REQUIRE(prims.size() == 6);
  for (int i = 0; i < 3; ++i) CHECK(prims[i].target == "faucet");
  for (int i = 3; i < 6; ++i) CHECK(prims[i].target == "bowl");
  CHECK(prims[0].kind == PrimitiveKind::MakeContact);
  CHECK(prims[5].kind == PrimitiveKind::BreakContact);
  CHECK(prims[5].span == std::pair<int, int>{90, 90});
}

TEST_CASE("segment_primitives rejects simultaneous holds") {
  std::map<std::string, contact::ContactTimeline> timelines;
  timelines["a"] = timeline_of("a", span_states(50, 10, 30));
  timelines["b"] = timeline_of("b", span_states(50, 25, 40));
  CHECK_THROWS_AS(segment_primitives(timelines), OverlappingContacts);
}

TEST_CASE("single-frame touch still yields all three primitives") {
  std::map<std::string, contact::ContactTimeline> timelines;
  timelines["cup"] = timeline_of("cup", span_states(40, 12, 12));
  const auto prims = segment_primitives(timelines);
  REQUIRE(prims.size() == 3);
  CHECK(prims[0].kind == PrimitiveKind::MakeContact);
  CHECK(prims[1].kind == PrimitiveKind::MaintainContact);
  CHECK(prims[2].kind == PrimitiveKind::BreakContact);
  for (const auto& p : prims) CHECK(p.span == std::pair<int, int>{12, 12});
}

TEST_CASE("pipeline on the cup-shelf scenario") {
  const auto art = run_pipeline(make_cup_shelf_scenario(3));

  SUBCASE("segmentation matches the scripted truth") {
    REQUIRE(art.primitives.size() == art.truth.primitives.size());
    for (std::size_t i = 0; i < art.primitives.size(); ++i) {
      const auto& got = art.primitives[i];
      const auto& want = art.truth.primitives[i];
      CHECK(got.kind == want.kind);
      CHECK(got.target == want.target);
      CHECK(std::abs(got.span.first - want.start) <= 2);
      CHECK(std::abs(got.span.second - want.end) <= 2);
    }
  }

  SUBCASE("policy bundles models for every object") {
    CHECK(art.policy.object_models.count("cup") == 1);
    CHECK(art.policy.object_models.count("shelf") == 1);
    CHECK(art.policy.object_models.at("cup").symmetry_axis.has_value());
    for (const auto& prim : art.policy.primitives)
      CHECK(art.policy.object_models.count(prim.target) == 1);
  }

  SUBCASE("make contact learned a rim grasp with a downward approach") {
    const auto& make = art.policy.primitives.at(0);
    REQUIRE(make.kind == PrimitiveKind::MakeContact);
    const auto& mp = std::get<MakeContactParams>(make.params);
    REQUIRE_FALSE(mp.locations.empty());
    // scripted touch point, in the captured model frame
    const Eigen::Vector3d expected =
        Eigen::Vector3d(0.38, -0.14, 0.05) + Eigen::Vector3d(0.045, 0, 0.045);
    CHECK((mp.locations.front().point - expected).norm() < 0.02);
    CHECK(mp.approach_dir.z() < -0.7);  // hand came from above
  }

  SUBCASE("break contact learned the shelf-relative place pose") {
    const auto& brk = art.policy.primitives.back();
    REQUIRE(brk.kind == PrimitiveKind::BreakContact);
    const auto& bp = std::get<BreakContactParams>(brk.params);
    CHECK(bp.reference == "shelf");
    const int f = brk.span.first;
    const Pose truth_rel =
        compose(invert(art.truth.poses[f].at("shelf")),
                art.truth.poses[f].at("cup"));
    CHECK(translation_distance(bp.final_pose, truth_rel) < 0.003);
    CHECK(rotation_distance(bp.final_pose, truth_rel) < 0.03);
  }

  SUBCASE("maintain has key moments at span ends and the contact change") {
    const auto& maintain = art.policy.primitives.at(1);
    REQUIRE(maintain.kind == PrimitiveKind::MaintainContact);
    const auto& mp = std::get<MaintainContactParams>(maintain.params);
    REQUIRE(mp.key_moments.size() == 3);
    CHECK(mp.key_moments.front().frame == maintain.span.first);
    CHECK(mp.key_moments.back().frame == maintain.span.second);
    const auto& middle = mp.key_moments[1];
    CHECK(std::abs(middle.frame - 96) <= 2);
    CHECK(middle.contact_set.count({"cup", "shelf"}) == 1);
    CHECK(mp.key_moments.front().contact_set.empty());
    CHECK(mp.key_moments.back().contact_set.count({"cup", "shelf"}) == 1);

    CHECK(mp.track_reference == "shelf");
    CHECK_FALSE(mp.dense_track.empty());
    for (std::size_t i = 1; i < mp.dense_track.size(); ++i)
      CHECK(mp.dense_track[i].first > mp.dense_track[i - 1].first);
  }

  SUBCASE("frame coverage: maintain span equals the in-contact frame set") {
    const auto& tl = art.timelines.hand.at("cup");
    const auto& maintain = art.policy.primitives.at(1);
    for (int f = 0; f < static_cast<int>(tl.states.size()); ++f) {
      const bool in_span =
          f >= maintain.span.first && f <= maintain.span.second;
      CHECK(tl.states[f] == in_span);
    }
  }
}

TEST_CASE("hold without object-object changes has exactly 2 key moments") {
  io::ScenarioSpec spec;
  spec.seed = 5;
  spec.frame_count = 140;
  io::ShapeSpec box;
  box.name = "box";
  box.kind = io::ShapeSpec::Kind::Box;
  box.box_size = {0.06, 0.06, 0.06};
  box.samples = 400;
  box.initial_pose = Pose::from_translation({0.4, -0.1, 0.1});
  spec.shapes.push_back(box);
  io::ShapeSpec other;
  other.name = "other";
  other.kind = io::ShapeSpec::Kind::Box;
  other.box_size = {0.08, 0.08, 0.04};
  other.samples = 400;
  other.initial_pose = Pose::from_translation({0.55, 0.25, 0.08});
  spec.shapes.push_back(other);
  spec.hand.push_back({"box", 1.0, 3.5, {0.0, 0.0, 0.03}, {0.0, 0.0, 1.0}});
  spec.moves.push_back({"box", 1.4, 3.0, box.initial_pose,
                        Pose::from_translation({0.45, 0.0, 0.2})});

  const auto art = run_pipeline(spec);
  REQUIRE(art.primitives.size() == 3);
  const auto& mp =
      std::get<MaintainContactParams>(art.policy.primitives[1].params);
  CHECK(mp.key_moments.size() == 2);
}

TEST_CASE("override_place_pose") {
  const auto art = run_pipeline(make_cup_shelf_scenario(7));
  const std::size_t brk = art.policy.primitives.size() - 1;
  const Pose override_pose = Pose::from_translation({0.0, 0.1, 0.02});

  const Policy with = override_place_pose(art.policy, brk, override_pose);
  const auto& bp = std::get<BreakContactParams>(with.primitives[brk].params);
  REQUIRE(bp.manual_override.has_value());
  CHECK(translation_distance(*bp.manual_override, override_pose) == 0.0);
  CHECK(translation_distance(bp.effective(), override_pose) == 0.0);
  CHECK(translation_distance(
            bp.final_pose,
            std::get<BreakContactParams>(art.policy.primitives[brk].params)
                .final_pose) == 0.0);

  CHECK_THROWS_AS(override_place_pose(art.policy, 1, override_pose),
                  WrongPrimitiveKind);
  CHECK_THROWS_AS(override_place_pose(art.policy, 99, override_pose),
                  InvalidArgument);
}

TEST_SUITE_END();
