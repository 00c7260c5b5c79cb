#pragma once

#include <string>
#include <vector>

#include "clfd/geometry/pose.hpp"

namespace clfd {

/// Labeled set of 3D points in meters.
struct PointCloud {
  std::vector<Eigen::Vector3d> points;
  std::string label;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool all_finite() const;
};

PointCloud transform_cloud(const Pose& p, const PointCloud& c);

Eigen::Vector3d centroid(const PointCloud& c);

/// Minimum nearest-neighbor distance from any point of a into b. Symmetric.
/// Throws EmptyCloud if either cloud is empty.
double min_distance(const PointCloud& a, const PointCloud& b);

/// Drops points whose mean distance to their k nearest neighbors exceeds
/// global mean + std_ratio * global std of that statistic.
/// Throws TooFewPoints if the cloud has <= k points.
PointCloud remove_statistical_outliers(const PointCloud& c, int k,
                                       double std_ratio);

}  // namespace clfd
