#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "clfd/errors.hpp"
#include "clfd/io/cli.hpp"
#include "clfd/io/cloud_io.hpp"
#include "clfd/io/demo_io.hpp"
#include "clfd/io/policy_io.hpp"
#include "clfd/io/result_io.hpp"
#include "clfd/io/scenario.hpp"
#include "clfd/learning/learn.hpp"
#include "clfd/learning/segmentation.hpp"
#include "test_scenarios.hpp"

using namespace clfd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("clfd_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

PointCloud random_cloud(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PointCloud c;
  c.label = "cloud";
  for (int i = 0; i < n; ++i) c.points.emplace_back(u(rng), u(rng), u(rng));
  return c;
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool directories_identical(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel_a, rel_b;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) rel_a.push_back(fs::relative(e.path(), a));
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file()) rel_b.push_back(fs::relative(e.path(), b));
  std::sort(rel_a.begin(), rel_a.end());
  std::sort(rel_b.begin(), rel_b.end());
  if (rel_a != rel_b) return false;
  for (const auto& rel : rel_a)
    if (file_bytes(a / rel) != file_bytes(b / rel)) return false;
  return true;
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = io::cli_main(args, out, err);
  if (out_text != nullptr) *out_text = out.str() + err.str();
  return code;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("binary cloud block round-trips bit-exactly") {
  const PointCloud cloud = random_cloud(257, 1);
  std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
  io::write_cloud_binary(buf, cloud);
  const PointCloud back = io::read_cloud_binary(buf, cloud.label);
  REQUIRE(back.size() == cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i)
    CHECK(back.points[i] == cloud.points[i]);  // exact doubles

  // truncated block reports the offset
  std::stringstream cut(std::ios::in | std::ios::out | std::ios::binary);
  io::write_cloud_binary(cut, cloud);
  std::string bytes = cut.str();
  bytes.resize(bytes.size() / 2);
  std::stringstream half(bytes, std::ios::in | std::ios::binary);
  CHECK_THROWS_AS(io::read_cloud_binary(half, "x"), FormatError);
}

TEST_CASE("ply round-trips to full precision") {
  TempDir dir("ply");
  const PointCloud cloud = random_cloud(100, 2);
  io::save_ply(dir.path / "c.ply", cloud);
  const PointCloud back = io::load_ply(dir.path / "c.ply", cloud.label);
  REQUIRE(back.size() == cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i)
    CHECK((back.points[i] - cloud.points[i]).norm() == 0.0);

  std::ofstream bad(dir.path / "bad.ply");
  bad << "not a ply\n";
  bad.close();
  CHECK_THROWS_AS(io::load_ply(dir.path / "bad.ply"), FormatError);
}

TEST_CASE("demonstration save/load round-trip") {
  TempDir dir("demo");
  auto [demo, truth] = io::generate_demo(make_cup_shelf_scenario(11));
  io::save_demo(demo, dir.path);
  const Demonstration back = io::load_demo(dir.path);

  CHECK(back.meta.frame_rate == demo.meta.frame_rate);
  REQUIRE(back.meta.objects.size() == demo.meta.objects.size());
  REQUIRE(back.frames.size() == demo.frames.size());
  for (std::size_t f = 0; f < demo.frames.size(); ++f) {
    const Frame& a = demo.frames[f];
    const Frame& b = back.frames[f];
    REQUIRE(a.clouds.size() == b.clouds.size());
    for (const auto& [name, cloud] : a.clouds) {
      const PointCloud& other = b.clouds.at(name);
      REQUIRE(other.size() == cloud.size());
      for (std::size_t i = 0; i < cloud.size(); ++i)
        CHECK(other.points[i] == cloud.points[i]);  // bit-exact binary
    }
    REQUIRE(a.hand.has_value() == b.hand.has_value());
  }
  for (const auto& [name, model] : demo.models) {
    const PointCloud& other = back.models.at(name);
    REQUIRE(other.size() == model.size());
    for (std::size_t i = 0; i < model.size(); ++i)
      CHECK((other.points[i] - model.points[i]).norm() == 0.0);
  }
}

TEST_CASE("demo loader reports corrupted files") {
  TempDir dir("corrupt");
  auto [demo, truth] = io::generate_demo(make_cup_shelf_scenario(12));
  demo.frames.resize(3);
  io::save_demo(demo, dir.path);

  SUBCASE("truncated frame file names the file") {
    const fs::path victim = dir.path / "frames" / "000001.bin";
    const std::string bytes = file_bytes(victim);
    std::ofstream cut(victim, std::ios::binary | std::ios::trunc);
    cut.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 3));
    cut.close();
    try {
      io::load_demo(dir.path);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("000001.bin") != std::string::npos);
    }
  }

  SUBCASE("unsupported version reports found vs supported") {
    std::ifstream in(dir.path / "meta.json");
    std::stringstream ss;
    ss << in.rdbuf();
    in.close();
    std::string meta = ss.str();
    const auto pos = meta.find("\"format_version\": 1");
    REQUIRE(pos != std::string::npos);
    meta.replace(pos, 19, "\"format_version\": 9");
    std::ofstream out(dir.path / "meta.json", std::ios::trunc);
    out << meta;
    out.close();
    try {
      io::load_demo(dir.path);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      const std::string what = e.what();
      CHECK(what.find("9") != std::string::npos);
      CHECK(what.find("supported") != std::string::npos);
    }
  }
}

TEST_CASE("generator determinism: same spec, same seed, identical bytes") {
  TempDir a("gen_a"), b("gen_b");
  const io::ScenarioSpec spec = make_cup_shelf_scenario(33);
  {
    auto [demo, truth] = io::generate_demo(spec);
    io::save_demo(demo, a.path);
    io::save_truth(truth, a.path / "truth.json");
  }
  {
    auto [demo, truth] = io::generate_demo(spec);
    io::save_demo(demo, b.path);
    io::save_truth(truth, b.path / "truth.json");
  }
  CHECK(directories_identical(a.path, b.path));
}

TEST_CASE("generator rejects overlapping hand events") {
  io::ScenarioSpec spec = make_cup_shelf_scenario(1);
  spec.hand.push_back({"shelf", 2.0, 3.0, {0, 0, 0.015}, {0, 0, 1}});
  CHECK_THROWS_AS(io::generate_demo(spec), InvalidScript);
}

TEST_CASE("zero-noise static scene produces identical frames") {
  io::ScenarioSpec spec;
  spec.frame_count = 5;
  spec.noise_sigma = 0.0;
  io::ShapeSpec box;
  box.name = "box";
  box.kind = io::ShapeSpec::Kind::Box;
  box.samples = 200;
  box.initial_pose = Pose::from_translation({0.4, 0.0, 0.1});
  spec.shapes.push_back(box);
  auto [demo, truth] = io::generate_demo(spec);
  for (std::size_t f = 1; f < demo.frames.size(); ++f) {
    const auto& a = demo.frames[0].clouds.at("box").points;
    const auto& b = demo.frames[f].clouds.at("box").points;
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("sidecar consistency: derived contacts match the script") {
  auto [demo, truth] = io::generate_demo(make_cup_shelf_scenario(13));
  const Demonstration filtered = filter_demonstration(demo);
  const auto timelines =
      learning::analyze_contacts(filtered, contact::HysteresisParams{});

  // hand-object intervals within +-1 frame of the script
  for (const auto& ci : truth.hand_contacts) {
    const auto& tl = timelines.hand.at(ci.b);
    const auto events = tl.events;
    REQUIRE(events.size() == 2);
    CHECK(events[0].kind == contact::EventKind::Make);
    CHECK(std::abs(events[0].frame - ci.start_frame) <= 1);
    CHECK(events[1].kind == contact::EventKind::Break);
    CHECK(std::abs(events[1].frame - ci.end_frame) <= 1);
  }
  // scripted object-object contacts likewise
  for (const auto& ci : truth.object_contacts) {
    const auto key = ci.a <= ci.b ? std::make_pair(ci.a, ci.b)
                                  : std::make_pair(ci.b, ci.a);
    const auto& tl = timelines.objects.at(key);
    for (int f = 0; f < static_cast<int>(tl.states.size()); ++f) {
      const bool scripted = f >= ci.start_frame && f <= ci.end_frame;
      if (std::abs(f - ci.start_frame) <= 1 || std::abs(f - ci.end_frame) <= 1)
        continue;  // transition tolerance
      CHECK(tl.states[f] == scripted);
    }
  }
}

TEST_CASE("policy json round-trip") {
  TempDir dir("policy");
  auto [demo, truth] = io::generate_demo(make_cup_shelf_scenario(14));
  const Demonstration filtered = filter_demonstration(demo);
  const auto timelines =
      learning::analyze_contacts(filtered, contact::HysteresisParams{});
  const auto prims = learning::segment_primitives(timelines.hand);
  const auto tracks = learning::track_all_objects(filtered, icp::IcpParams{});
  const auto policy = learning::learn_policy(filtered, prims, timelines,
                                             tracks, learning::LearnParams{});

  io::save_policy(policy, dir.path / "policy.json");
  const auto back = io::load_policy(dir.path / "policy.json");

  CHECK(back.frame_rate == policy.frame_rate);
  REQUIRE(back.primitives.size() == policy.primitives.size());
  for (std::size_t i = 0; i < policy.primitives.size(); ++i) {
    CHECK(back.primitives[i].kind == policy.primitives[i].kind);
    CHECK(back.primitives[i].target == policy.primitives[i].target);
    CHECK(back.primitives[i].span == policy.primitives[i].span);
  }
  const auto& bp_a = std::get<learning::BreakContactParams>(
      policy.primitives.back().params);
  const auto& bp_b = std::get<learning::BreakContactParams>(
      back.primitives.back().params);
  CHECK(bp_a.reference == bp_b.reference);
  CHECK(translation_distance(bp_a.final_pose, bp_b.final_pose) < 1e-12);
  CHECK(rotation_distance(bp_a.final_pose, bp_b.final_pose) < 1e-12);

  const auto& mm_a = std::get<learning::MaintainContactParams>(
      policy.primitives[1].params);
  const auto& mm_b = std::get<learning::MaintainContactParams>(
      back.primitives[1].params);
  REQUIRE(mm_a.key_moments.size() == mm_b.key_moments.size());
  REQUIRE(mm_a.dense_track.size() == mm_b.dense_track.size());
  for (std::size_t i = 0; i < mm_a.key_moments.size(); ++i) {
    CHECK(mm_a.key_moments[i].frame == mm_b.key_moments[i].frame);
    CHECK(mm_a.key_moments[i].reference == mm_b.key_moments[i].reference);
    CHECK(mm_a.key_moments[i].contact_set == mm_b.key_moments[i].contact_set);
  }
  CHECK(back.object_models.at("cup").symmetry_axis.has_value());
  CHECK(back.object_models.at("cup").cloud.size() ==
        policy.object_models.at("cup").cloud.size());
}

TEST_CASE("result json round-trip and eval table") {
  TempDir dir("result");
  sim::ExecutionResult result;
  result.success = true;
  result.total_duration = 12.5;
  sim::PrimitiveReport r1;
  r1.name = "make_contact[bowl]";
  r1.outcome = sim::Outcome::Success;
  r1.duration = 2.0;
  r1.candidate_indices = {0};
  sim::PrimitiveReport r2;
  r2.name = "maintain_contact[bowl]";
  r2.outcome = sim::Outcome::MotionPlanningFailure;
  r2.duration = 0.0;
  r2.detail = "entry unreachable";
  result.reports = {r1, r2};
  result.key_moment_errors.push_back({1, 42, 0.001, 0.01, true});

  io::save_result(result, {{"obj", "S"}, {"loc", "U"}},
                  dir.path / "result.json");
  const auto back = io::load_result(dir.path / "result.json");
  CHECK(back.result.success == result.success);
  CHECK(back.result.total_duration == result.total_duration);
  REQUIRE(back.result.reports.size() == 2);
  CHECK(back.result.reports[0].name == r1.name);
  CHECK(back.result.reports[1].outcome == sim::Outcome::MotionPlanningFailure);
  CHECK(back.label.at("obj") == "S");
  REQUIRE(back.result.key_moment_errors.size() == 1);
  CHECK(back.result.key_moment_errors[0].frame == 42);

  std::ostringstream table;
  io::write_eval_table({back, back}, table);
  const std::string text = table.str();
  CHECK(text.find("make_contact[bowl]") != std::string::npos);
  CHECK(text.find("obj=S") != std::string::npos);
  CHECK(text.find("1.00") != std::string::npos);  // make succeeded in both
}

TEST_CASE("cli: gen-demo, segment, plot") {
  TempDir dir("cli");
  const fs::path demo_dir = dir.path / "demo";
  std::string text;

  // write a compact spec file and generate from it
  io::save_scenario(make_cup_shelf_scenario(15), dir.path / "spec.json");
  CHECK(run_cli({"gen-demo", (dir.path / "spec.json").string(),
                 demo_dir.string()},
                &text) == 0);
  CHECK(fs::exists(demo_dir / "meta.json"));
  CHECK(fs::exists(demo_dir / "truth.json"));

  const fs::path csv = dir.path / "timelines.csv";
  const fs::path prims = dir.path / "primitives.json";
  CHECK(run_cli({"segment", demo_dir.string(), "--csv-out", csv.string(),
                 "--primitives-out", prims.string()},
                &text) == 0);
  CHECK(fs::exists(csv));
  CHECK(fs::exists(prims));
  CHECK(text.find("make_contact cup") != std::string::npos);

  const fs::path svg = dir.path / "plot.svg";
  CHECK(run_cli({"plot", csv.string(), svg.string()}, &text) == 0);
  CHECK(fs::exists(svg));
  CHECK(file_bytes(svg).find("<svg") != std::string::npos);
}

TEST_CASE("cli usage errors exit with 2") {
  std::string text;
  CHECK(run_cli({"segment"}, &text) == 2);  // missing required argument
  CHECK(run_cli({"no-such-command"}, &text) == 2);
  CHECK(run_cli({"plot", "only-one-arg"}, &text) == 2);
}

TEST_CASE("cli task failures exit with 1") {
  std::string text;
  CHECK(run_cli({"segment", "/nonexistent/demo/dir"}, &text) == 1);
  CHECK(text.find("error") != std::string::npos);
}

TEST_SUITE_END();
