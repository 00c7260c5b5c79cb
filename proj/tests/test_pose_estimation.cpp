#include <doctest.h>

#include <random>

#include "clfd/errors.hpp"
#include "clfd/pose_estimation/icp.hpp"

using namespace clfd;
using icp::IcpParams;
using icp::PoseEstimate;

namespace {

// asymmetric rigid object: three box shells glued into an L
PointCloud make_test_object(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> pick_axis(0, 2);
  const Eigen::Vector3d centers[3] = {
      {0.0, 0.0, 0.0}, {0.09, 0.0, 0.0}, {0.0, 0.07, 0.03}};
  const Eigen::Vector3d halves[3] = {
      {0.05, 0.03, 0.02}, {0.04, 0.02, 0.02}, {0.02, 0.04, 0.05}};
  PointCloud c;
  c.label = "object";
  for (int i = 0; i < n; ++i) {
    const int b = i % 3;
    Eigen::Vector3d p(u(rng) * halves[b].x(), u(rng) * halves[b].y(),
                      u(rng) * halves[b].z());
    const int axis = pick_axis(rng);
    p[axis] = (u(rng) > 0.0 ? halves[b][axis] : -halves[b][axis]);
    c.points.push_back(centers[b] + p);
  }
  return c;
}

PointCloud add_noise(const PointCloud& c, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  PointCloud out = c;
  for (auto& p : out.points) p += Eigen::Vector3d(g(rng), g(rng), g(rng));
  return out;
}

Pose random_perturbation(std::mt19937_64& rng, double max_angle,
                         double max_trans) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Vector3d axis(u(rng), u(rng), u(rng));
  while (axis.norm() < 1e-6) axis = {u(rng), u(rng), u(rng)};
  std::uniform_real_distribution<double> ang(0.0, max_angle);
  Pose p = Pose::from_rotation(axis, ang(rng));
  Eigen::Vector3d t(u(rng), u(rng), u(rng));
  p.translation = t.normalized() * std::uniform_real_distribution<double>(
                                       0.0, max_trans)(rng);
  return p;
}

bool non_increasing(const std::vector<double>& v, double tol = 1e-12) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + tol) return false;
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("pose_estimation");

TEST_CASE("icp on identical clouds returns identity") {
  const PointCloud model = make_test_object(400, 1);
  const PoseEstimate est =
      icp::icp_register(model, model, Pose::identity(), IcpParams{});
  CHECK(est.fitness == doctest::Approx(1.0));
  CHECK(rotation_angle(est.pose) < 1e-9);
  CHECK(est.pose.translation.norm() < 1e-9);
  CHECK(est.rmse < 1e-12);
}

TEST_CASE("icp recovers a small translation exactly") {
  const PointCloud model = make_test_object(400, 2);
  const Pose truth = Pose::from_translation({0.02, 0.0, 0.0});
  const PointCloud observed = transform_cloud(truth, model);
  const PoseEstimate est =
      icp::icp_register(model, observed, Pose::identity(), IcpParams{});
  CHECK(translation_distance(est.pose, truth) < 1e-6);
  CHECK(rotation_distance(est.pose, truth) < 1e-6);
  CHECK(non_increasing(est.rmse_history));
}

TEST_CASE("icp recovers rotation under noise") {
  const PointCloud model = make_test_object(500, 3);
  const Pose truth = Pose::from_rotation({0, 0, 1}, 20.0 * M_PI / 180.0);
  const PointCloud observed =
      add_noise(transform_cloud(truth, model), 0.0005, 99);
  const PoseEstimate est =
      icp::icp_register(model, observed, Pose::identity(), IcpParams{});
  CHECK(rotation_distance(est.pose, truth) < 1.0 * M_PI / 180.0);
  CHECK(translation_distance(est.pose, truth) < 0.002);
  CHECK(non_increasing(est.rmse_history));
}

TEST_CASE("icp rmse history is monotone over random perturbations") {
  const PointCloud model = make_test_object(300, 4);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const Pose truth = random_perturbation(rng, 30.0 * M_PI / 180.0, 0.1);
    const PointCloud observed =
        add_noise(transform_cloud(truth, model), 0.0005, 1000 + trial);
    const PoseEstimate est =
        icp::icp_register(model, observed, Pose::identity(), IcpParams{});
    CHECK(non_increasing(est.rmse_history));
  }
}

TEST_CASE("icp equivariance under rigid motion of the observation") {
  const PointCloud model = make_test_object(350, 6);
  std::mt19937_64 rng(7);
  const Pose truth = random_perturbation(rng, 0.2, 0.02);
  const PointCloud observed = transform_cloud(truth, model);
  const PoseEstimate base =
      icp::icp_register(model, observed, Pose::identity(), IcpParams{});
  REQUIRE(base.fitness == doctest::Approx(1.0));

  const Pose motion = Pose::from_rotation({0, 1, 0}, 0.15);
  const PointCloud moved = transform_cloud(motion, observed);
  const PoseEstimate shifted =
      icp::icp_register(model, moved, compose(motion, base.pose), IcpParams{});
  const Pose expected = compose(motion, base.pose);
  CHECK(translation_distance(shifted.pose, expected) < 1e-6);
  CHECK(rotation_distance(shifted.pose, expected) < 1e-6);
}

TEST_CASE("icp determinism: identical inputs give identical outputs") {
  const PointCloud model = make_test_object(300, 8);
  const Pose truth = Pose::from_rotation({1, 0, 0}, 0.3);
  const PointCloud observed =
      add_noise(transform_cloud(truth, model), 0.0005, 42);
  const PoseEstimate a =
      icp::icp_register(model, observed, Pose::identity(), IcpParams{});
  const PoseEstimate b =
      icp::icp_register(model, observed, Pose::identity(), IcpParams{});
  CHECK(a.pose.translation == b.pose.translation);
  CHECK(a.pose.rotation.coeffs() == b.pose.rotation.coeffs());
  CHECK(a.rmse == b.rmse);
  CHECK(a.fitness == b.fitness);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("icp error paths") {
  const PointCloud model = make_test_object(300, 9);
  PointCloud tiny;
  tiny.points = {{0, 0, 0}, {0.01, 0, 0}};
  CHECK_THROWS_AS(
      icp::icp_register(model, tiny, Pose::identity(), IcpParams{}),
      TooFewPoints);

  // observation 1 m away: nothing within the 5 cm gate
  const PointCloud far =
      transform_cloud(Pose::from_translation({1.0, 0, 0}), model);
  CHECK_THROWS_AS(
      icp::icp_register(model, far, Pose::identity(), IcpParams{}),
      NoCorrespondences);

  // only one end of the object visible while min_fitness demands most of it
  PointCloud partial;
  for (const auto& p : model.points)
    if (p.x() < -0.02) partial.points.push_back(p);
  REQUIRE(partial.size() >= 3);
  IcpParams strict;
  strict.min_fitness = 0.9;
  CHECK_THROWS_AS(
      icp::icp_register(model, partial, Pose::identity(), strict),
      LowFitness);
}

TEST_CASE("track_poses across frames") {
  const PointCloud model = make_test_object(300, 10);

  SUBCASE("static object gives near-identity relative motion") {
    // the model cloud is captured from the demonstration, so the scene
    // offset relative to it stays small
    std::vector<Frame> frames(10);
    const Pose world = Pose::from_translation({0.01, -0.005, 0.002});
    for (int f = 0; f < 10; ++f) {
      frames[f].index = f;
      frames[f].clouds["object"] =
          add_noise(transform_cloud(world, model), 0.0003, 100 + f);
    }
    const auto track = icp::track_poses(model, frames, "object", IcpParams{});
    REQUIRE(track.size() == 10);
    for (int f = 1; f < 10; ++f) {
      REQUIRE(track[f].has_value());
      const Pose rel = compose(invert(track[f - 1]->pose), track[f]->pose);
      CHECK(rel.translation.norm() < 0.002);
      CHECK(rotation_angle(rel) < 0.02);
    }
  }

  SUBCASE("object translating 1 mm per frame") {
    std::vector<Frame> frames(12);
    for (int f = 0; f < 12; ++f) {
      frames[f].index = f;
      const Pose pose = Pose::from_translation({0.001 * f, 0.0, 0.0});
      frames[f].clouds["object"] = transform_cloud(pose, model);
    }
    const auto track = icp::track_poses(model, frames, "object", IcpParams{});
    for (int f = 1; f < 12; ++f) {
      const double dx =
          track[f]->pose.translation.x() - track[f - 1]->pose.translation.x();
      CHECK(std::abs(dx - 0.001) < 1e-4);
    }
  }

  SUBCASE("absent frames yield missing markers") {
    std::vector<Frame> frames(8);
    for (int f = 0; f < 8; ++f) {
      frames[f].index = f;
      if (f >= 3 && f <= 5) continue;  // occluded
      frames[f].clouds["object"] = transform_cloud(Pose::identity(), model);
    }
    const auto track = icp::track_poses(model, frames, "object", IcpParams{});
    for (int f = 0; f < 8; ++f) {
      if (f >= 3 && f <= 5)
        CHECK_FALSE(track[f].has_value());
      else
        CHECK(track[f].has_value());
    }
  }

  SUBCASE("never observed object throws") {
    std::vector<Frame> frames(4);
    CHECK_THROWS_AS(icp::track_poses(model, frames, "object", IcpParams{}),
                    NeverObserved);
  }
}

TEST_SUITE_END();
