#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace clfd {

/// Exact nearest-neighbor index over a fixed set of 3D points.
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(std::span<const Eigen::Vector3d> points) { build(points); }

  void build(std::span<const Eigen::Vector3d> points);

  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return points_.size(); }

  /// Index and squared distance of the nearest point. Tree must be non-empty.
  std::pair<int, double> nearest(const Eigen::Vector3d& q) const;

  /// Indices of the k nearest points, ascending by distance.
  std::vector<int> knn(const Eigen::Vector3d& q, int k) const;

  /// Indices of all points within radius (inclusive), ascending by index.
  std::vector<int> radius(const Eigen::Vector3d& q, double r) const;

 private:
  struct Node {
    int left = -1;
    int right = -1;
    int begin = 0;   // leaf: range into order_
    int end = 0;
    int axis = 0;
    double split = 0.0;
  };

  int build_range(int begin, int end);
  void nearest_impl(int node, const Eigen::Vector3d& q, int& best,
                    double& best_d2) const;
  void knn_impl(int node, const Eigen::Vector3d& q, int k,
                std::vector<std::pair<double, int>>& heap) const;
  void radius_impl(int node, const Eigen::Vector3d& q, double r2,
                   std::vector<int>& out) const;

  std::vector<Eigen::Vector3d> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;

  static constexpr int kLeafSize = 16;
};

}  // namespace clfd
