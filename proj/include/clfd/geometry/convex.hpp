#pragma once

#include <span>
#include <vector>

#include "clfd/geometry/point_cloud.hpp"
#include "clfd/geometry/pose.hpp"

namespace clfd {

/// Convex solid given by the hull of its vertices (body frame, meters).
struct ConvexShape {
  std::vector<Eigen::Vector3d> vertices;
};

/// Convex hull of a point set. Returned vertices are a subset of the input.
/// Throws Degenerate when the points are coplanar or collinear.
ConvexShape convex_hull(std::span<const Eigen::Vector3d> points);

/// Outward halfspaces (n, d) with n.dot(x) <= d for hull interior.
std::vector<Eigen::Vector4d> hull_halfspaces(const ConvexShape& shape);

/// Triangulated boundary of the hull, as index triples into shape.vertices.
std::vector<std::array<int, 3>> hull_faces(const ConvexShape& shape);

/// Point containment against the hull's halfspaces, with slack tol.
bool contains(const ConvexShape& shape, const Eigen::Vector3d& p,
              double tol = 1e-9);

struct ConvexDistanceResult {
  double separation = 0.0;  // minimum distance between the posed sets, >= 0
  bool intersecting = false;
};

/// Minimum distance between two posed convex shapes (GJK). Symmetric in its
/// argument pairs; separation is 0 exactly when the sets overlap.
ConvexDistanceResult convex_distance(const ConvexShape& a, const Pose& pa,
                                     const ConvexShape& b, const Pose& pb);

/// Union of convex parts expressed in one body frame.
struct CollisionModel {
  std::vector<ConvexShape> parts;

  bool empty() const { return parts.empty(); }
};

/// Minimum separation between two posed collision models, plus overlap flag.
ConvexDistanceResult model_distance(const CollisionModel& a, const Pose& pa,
                                    const CollisionModel& b, const Pose& pb);

/// Outlier-filters the cloud, density-clusters it, and wraps each cluster of
/// >= 4 non-coplanar points in a convex hull.
/// Throws NoValidParts when no cluster yields a valid hull.
CollisionModel build_collision_model(const PointCloud& c, double eps = 0.01,
                                     int min_pts = 5);

/// Axis-aligned box helper used by scene descriptions and tests.
ConvexShape make_box(const Eigen::Vector3d& half_extents,
                     const Eigen::Vector3d& center = Eigen::Vector3d::Zero());

}  // namespace clfd
