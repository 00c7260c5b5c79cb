#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace clfd {

struct Clustering {
  std::vector<std::vector<int>> clusters;  // disjoint index sets
  std::vector<int> noise;                  // indices in no cluster
};

/// Density-based clustering. A point is core when it has >= min_pts neighbors
/// within eps (itself included); clusters are connected components of core
/// points, and each non-core point within eps of a core joins the cluster of
/// its nearest core point. Output is invariant to input order up to cluster
/// relabeling; clusters are ordered by their smallest member index.
Clustering cluster(std::span<const Eigen::Vector3d> points, double eps,
                   int min_pts);

}  // namespace clfd
