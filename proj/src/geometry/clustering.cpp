#include "clfd/geometry/clustering.hpp"

#include <algorithm>
#include <limits>

#include "clfd/errors.hpp"
#include "clfd/geometry/kdtree.hpp"

namespace clfd {

Clustering cluster(std::span<const Eigen::Vector3d> points, double eps,
                   int min_pts) {
  if (eps <= 0.0) throw InvalidArgument("cluster: eps must be > 0");
  if (min_pts < 1) throw InvalidArgument("cluster: min_pts must be >= 1");

  Clustering out;
  const int n = static_cast<int>(points.size());
  if (n == 0) return out;

  KdTree tree(points);
  std::vector<std::vector<int>> nb(n);
  std::vector<bool> core(n, false);
  for (int i = 0; i < n; ++i) {
    nb[i] = tree.radius(points[i], eps);
    core[i] = static_cast<int>(nb[i].size()) >= min_pts;
  }

  // connected components over core points
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int i = 0; i < n; ++i) {
    if (!core[i] || label[i] >= 0) continue;
    const int id = next++;
    label[i] = id;
    stack.assign(1, i);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      for (int j : nb[cur]) {
        if (core[j] && label[j] < 0) {
          label[j] = id;
          stack.push_back(j);
        }
      }
    }
  }

  // border points join the cluster of their nearest core neighbor;
  // exact ties break toward the smaller core index so the result does not
  // depend on input order
  for (int i = 0; i < n; ++i) {
    if (core[i]) continue;
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int j : nb[i]) {
      if (!core[j]) continue;
      const double d2 = (points[i] - points[j]).squaredNorm();
      if (d2 < best_d2 || (d2 == best_d2 && j < best)) {
        best_d2 = d2;
        best = j;
      }
    }
    if (best >= 0) label[i] = label[best];
  }

  std::vector<std::vector<int>> groups(next);
  for (int i = 0; i < n; ++i) {
    if (label[i] >= 0)
      groups[label[i]].push_back(i);
    else
      out.noise.push_back(i);
  }
  // deterministic ordering: clusters sorted by smallest member index
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  out.clusters = std::move(groups);
  return out;
}

}  // namespace clfd
