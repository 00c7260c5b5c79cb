#include "clfd/geometry/point_cloud.hpp"

#include <cmath>

#include "clfd/errors.hpp"
#include "clfd/geometry/kdtree.hpp"

namespace clfd {

bool PointCloud::all_finite() const {
  for (const auto& p : points)
    if (!p.allFinite()) return false;
  return true;
}

PointCloud transform_cloud(const Pose& p, const PointCloud& c) {
  PointCloud out;
  out.label = c.label;
  out.points.reserve(c.points.size());
  const Eigen::Matrix3d r = p.rotation.toRotationMatrix();
  for (const auto& pt : c.points) out.points.push_back(r * pt + p.translation);
  return out;
}

Eigen::Vector3d centroid(const PointCloud& c) {
  if (c.empty()) throw EmptyCloud("centroid of empty cloud");
  Eigen::Vector3d s = Eigen::Vector3d::Zero();
  for (const auto& p : c.points) s += p;
  return s / static_cast<double>(c.points.size());
}

double min_distance(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty())
    throw EmptyCloud("min_distance requires non-empty clouds");
  // query the smaller cloud against an index over the larger one
  const PointCloud& query = a.size() <= b.size() ? a : b;
  const PointCloud& data = a.size() <= b.size() ? b : a;
  KdTree tree(data.points);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : query.points) {
    best = std::min(best, tree.nearest(p).second);
  }
  return std::sqrt(best);
}

PointCloud remove_statistical_outliers(const PointCloud& c, int k,
                                       double std_ratio) {
  if (k < 1) throw InvalidArgument("outlier removal: k must be >= 1");
  if (std_ratio <= 0.0)
    throw InvalidArgument("outlier removal: std_ratio must be > 0");
  const int n = static_cast<int>(c.size());
  if (n <= k)
    throw TooFewPoints("outlier removal needs more than k points, got " +
                       std::to_string(n) + " with k=" + std::to_string(k));

  KdTree tree(c.points);
  std::vector<double> mean_dist(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // k+1 neighbors: the point itself is always its own nearest neighbor
    const auto nb = tree.knn(c.points[i], k + 1);
    double sum = 0.0;
    int count = 0;
    for (int j : nb) {
      if (j == i) continue;
      sum += (c.points[j] - c.points[i]).norm();
      if (++count == k) break;
    }
    mean_dist[i] = sum / static_cast<double>(k);
  }

  double mean = 0.0;
  for (double d : mean_dist) mean += d;
  mean /= n;
  double var = 0.0;
  for (double d : mean_dist) var += (d - mean) * (d - mean);
  const double stddev = std::sqrt(var / n);

  const double cutoff = mean + std_ratio * stddev;
  PointCloud out;
  out.label = c.label;
  for (int i = 0; i < n; ++i) {
    if (mean_dist[i] <= cutoff) out.points.push_back(c.points[i]);
  }
  return out;
}

}  // namespace clfd
