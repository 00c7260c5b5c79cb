#include "clfd/geometry/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace clfd {

void KdTree::build(std::span<const Eigen::Vector3d> points) {
  points_.assign(points.begin(), points.end());
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.clear();
  root_ = points_.empty() ? -1 : build_range(0, static_cast<int>(points_.size()));
}

int KdTree::build_range(int begin, int end) {
  const int idx = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{});
  if (end - begin <= kLeafSize) {
    nodes_[idx].begin = begin;
    nodes_[idx].end = end;
    return idx;
  }

  Eigen::Vector3d lo = points_[order_[begin]];
  Eigen::Vector3d hi = lo;
  for (int i = begin + 1; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);

  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](int a, int b) {
                     return points_[a][axis] < points_[b][axis];
                   });

  nodes_[idx].axis = axis;
  nodes_[idx].split = points_[order_[mid]][axis];
  nodes_[idx].begin = begin;
  nodes_[idx].end = end;
  const int l = build_range(begin, mid);
  const int r = build_range(mid, end);
  nodes_[idx].left = l;
  nodes_[idx].right = r;
  return idx;
}

std::pair<int, double> KdTree::nearest(const Eigen::Vector3d& q) const {
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  nearest_impl(root_, q, best, best_d2);
  return {best, best_d2};
}

void KdTree::nearest_impl(int node, const Eigen::Vector3d& q, int& best,
                          double& best_d2) const {
  const Node& n = nodes_[node];
  if (n.left < 0) {
    for (int i = n.begin; i < n.end; ++i) {
      const double d2 = (points_[order_[i]] - q).squaredNorm();
      if (d2 < best_d2 || (d2 == best_d2 && order_[i] < best)) {
        best_d2 = d2;
        best = order_[i];
      }
    }
    return;
  }
  const double delta = q[n.axis] - n.split;
  const int near = delta < 0.0 ? n.left : n.right;
  const int far = delta < 0.0 ? n.right : n.left;
  nearest_impl(near, q, best, best_d2);
  if (delta * delta <= best_d2) nearest_impl(far, q, best, best_d2);
}

std::vector<int> KdTree::knn(const Eigen::Vector3d& q, int k) const {
  std::vector<std::pair<double, int>> heap;  // max-heap by distance
  if (k > 0 && root_ >= 0) knn_impl(root_, q, k, heap);
  std::sort(heap.begin(), heap.end());
  std::vector<int> out;
  out.reserve(heap.size());
  for (const auto& [d2, i] : heap) out.push_back(i);
  return out;
}

void KdTree::knn_impl(int node, const Eigen::Vector3d& q, int k,
                      std::vector<std::pair<double, int>>& heap) const {
  const Node& n = nodes_[node];
  if (n.left < 0) {
    for (int i = n.begin; i < n.end; ++i) {
      const double d2 = (points_[order_[i]] - q).squaredNorm();
      if (static_cast<int>(heap.size()) < k) {
        heap.emplace_back(d2, order_[i]);
        std::push_heap(heap.begin(), heap.end());
      } else if (d2 < heap.front().first) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = {d2, order_[i]};
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }
  const double delta = q[n.axis] - n.split;
  const int near = delta < 0.0 ? n.left : n.right;
  const int far = delta < 0.0 ? n.right : n.left;
  knn_impl(near, q, k, heap);
  if (static_cast<int>(heap.size()) < k || delta * delta <= heap.front().first)
    knn_impl(far, q, k, heap);
}

std::vector<int> KdTree::radius(const Eigen::Vector3d& q, double r) const {
  std::vector<int> out;
  if (root_ >= 0 && r >= 0.0) radius_impl(root_, q, r * r, out);
  std::sort(out.begin(), out.end());
  return out;
}

void KdTree::radius_impl(int node, const Eigen::Vector3d& q, double r2,
                         std::vector<int>& out) const {
  const Node& n = nodes_[node];
  if (n.left < 0) {
    for (int i = n.begin; i < n.end; ++i) {
      if ((points_[order_[i]] - q).squaredNorm() <= r2) out.push_back(order_[i]);
    }
    return;
  }
  const double delta = q[n.axis] - n.split;
  const int near = delta < 0.0 ? n.left : n.right;
  const int far = delta < 0.0 ? n.right : n.left;
  radius_impl(near, q, r2, out);
  if (delta * delta <= r2) radius_impl(far, q, r2, out);
}

}  // namespace clfd
