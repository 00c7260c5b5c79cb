#include "clfd/geometry/convex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "clfd/errors.hpp"
#include "clfd/geometry/clustering.hpp"

namespace clfd {

namespace {

struct Face {
  std::array<int, 3> v;
  Eigen::Vector3d n;  // outward unit normal
  double d = 0.0;     // n.dot(x) <= d inside
  bool alive = true;
};

Face make_face(int a, int b, int c, std::span<const Eigen::Vector3d> pts,
               const Eigen::Vector3d& interior) {
  Face f;
  f.v = {a, b, c};
  Eigen::Vector3d n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
  const double len = n.norm();
  if (len > 0.0) n /= len;
  double d = n.dot(pts[a]);
  if (n.dot(interior) > d) {
    n = -n;
    d = -d;
    std::swap(f.v[1], f.v[2]);
  }
  f.n = n;
  f.d = d;
  return f;
}

struct HullBuild {
  std::vector<Face> faces;
  std::vector<int> vertex_indices;
};

HullBuild incremental_hull(std::span<const Eigen::Vector3d> pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw Degenerate("convex hull needs >= 4 points");

  // initial tetrahedron from spread-out extremes
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).squaredNorm();
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  double scale = std::sqrt(std::max(best, 0.0));
  const double eps_lin = std::max(1e-12 * scale, 1e-15);
  if (scale <= eps_lin) throw Degenerate("convex hull: points coincide");

  const Eigen::Vector3d dir = (pts[i1] - pts[i0]).normalized();
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d rel = pts[i] - pts[i0];
    const double d = (rel - rel.dot(dir) * dir).squaredNorm();
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (std::sqrt(std::max(best, 0.0)) <= eps_lin)
    throw Degenerate("convex hull: points are collinear");

  const Eigen::Vector3d normal =
      (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  const double plane_d = normal.dot(pts[i0]);
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(normal.dot(pts[i]) - plane_d);
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= eps_lin) throw Degenerate("convex hull: points are coplanar");

  const Eigen::Vector3d interior =
      (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;

  HullBuild hull;
  hull.faces.push_back(make_face(i0, i1, i2, pts, interior));
  hull.faces.push_back(make_face(i0, i1, i3, pts, interior));
  hull.faces.push_back(make_face(i0, i2, i3, pts, interior));
  hull.faces.push_back(make_face(i1, i2, i3, pts, interior));

  const double eps_vis = std::max(1e-10, 1e-13 * scale);
  std::vector<int> visible;
  std::map<std::pair<int, int>, int> edge_count;
  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    visible.clear();
    for (int fi = 0; fi < static_cast<int>(hull.faces.size()); ++fi) {
      const Face& f = hull.faces[fi];
      if (f.alive && f.n.dot(pts[p]) - f.d > eps_vis) visible.push_back(fi);
    }
    if (visible.empty()) continue;

    edge_count.clear();
    for (int fi : visible) {
      const auto& v = hull.faces[fi].v;
      for (int e = 0; e < 3; ++e) {
        int a = v[e], b = v[(e + 1) % 3];
        if (a > b) std::swap(a, b);
        edge_count[{a, b}]++;
      }
    }
    for (int fi : visible) hull.faces[fi].alive = false;
    for (const auto& [edge, count] : edge_count) {
      if (count != 1) continue;  // interior edge of the visible patch
      hull.faces.push_back(make_face(edge.first, edge.second, p, pts, interior));
    }
  }

  std::vector<bool> used(n, false);
  std::vector<Face> alive;
  for (const Face& f : hull.faces) {
    if (!f.alive) continue;
    alive.push_back(f);
    for (int v : f.v) used[v] = true;
  }
  hull.faces = std::move(alive);
  for (int i = 0; i < n; ++i)
    if (used[i]) hull.vertex_indices.push_back(i);
  return hull;
}

}  // namespace

ConvexShape convex_hull(std::span<const Eigen::Vector3d> points) {
  const HullBuild hull = incremental_hull(points);
  ConvexShape shape;
  shape.vertices.reserve(hull.vertex_indices.size());
  for (int i : hull.vertex_indices) shape.vertices.push_back(points[i]);
  return shape;
}

std::vector<Eigen::Vector4d> hull_halfspaces(const ConvexShape& shape) {
  const HullBuild hull = incremental_hull(shape.vertices);
  std::vector<Eigen::Vector4d> out;
  out.reserve(hull.faces.size());
  for (const Face& f : hull.faces)
    out.emplace_back(f.n.x(), f.n.y(), f.n.z(), f.d);
  return out;
}

std::vector<std::array<int, 3>> hull_faces(const ConvexShape& shape) {
  const HullBuild hull = incremental_hull(shape.vertices);
  // map original indices back: incremental_hull ran on shape.vertices
  std::vector<std::array<int, 3>> out;
  out.reserve(hull.faces.size());
  for (const Face& f : hull.faces) out.push_back(f.v);
  return out;
}

bool contains(const ConvexShape& shape, const Eigen::Vector3d& p, double tol) {
  for (const auto& h : hull_halfspaces(shape)) {
    if (h.head<3>().dot(p) - h[3] > tol) return false;
  }
  return true;
}

namespace {

Eigen::Vector3d support_point(const ConvexShape& s, const Eigen::Matrix3d& r,
                              const Eigen::Vector3d& t,
                              const Eigen::Vector3d& dir) {
  // argmax over posed vertices of dir . (R v + t)
  const Eigen::Vector3d local_dir = r.transpose() * dir;
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < static_cast<int>(s.vertices.size()); ++i) {
    const double d = local_dir.dot(s.vertices[i]);
    if (d > best) {
      best = d;
      best_i = i;
    }
  }
  return r * s.vertices[best_i] + t;
}

// closest point to the origin on segment [a, b], plus supporting vertex mask
Eigen::Vector3d closest_on_segment(const Eigen::Vector3d& a,
                                   const Eigen::Vector3d& b, int& mask) {
  const Eigen::Vector3d ab = b - a;
  const double denom = ab.squaredNorm();
  double t = denom > 0.0 ? -a.dot(ab) / denom : 0.0;
  if (t <= 0.0) {
    mask = 0b01;
    return a;
  }
  if (t >= 1.0) {
    mask = 0b10;
    return b;
  }
  mask = 0b11;
  return a + t * ab;
}

// closest point to the origin on triangle (a, b, c); Ericson's region tests
Eigen::Vector3d closest_on_triangle(const Eigen::Vector3d& a,
                                    const Eigen::Vector3d& b,
                                    const Eigen::Vector3d& c, int& mask) {
  const Eigen::Vector3d ab = b - a;
  const Eigen::Vector3d ac = c - a;
  const Eigen::Vector3d ap = -a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) {
    mask = 0b001;
    return a;
  }
  const Eigen::Vector3d bp = -b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) {
    mask = 0b010;
    return b;
  }
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    mask = 0b011;
    return a + v * ab;
  }
  const Eigen::Vector3d cp = -c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) {
    mask = 0b100;
    return c;
  }
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    mask = 0b101;
    return a + w * ac;
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    mask = 0b110;
    return b + w * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  mask = 0b111;
  return a + ab * v + ac * w;
}

struct SimplexResult {
  Eigen::Vector3d closest;
  std::vector<Eigen::Vector3d> reduced;
  bool contains_origin = false;
};

SimplexResult closest_on_simplex(const std::vector<Eigen::Vector3d>& w) {
  SimplexResult res;
  if (w.size() == 1) {
    res.closest = w[0];
    res.reduced = w;
    return res;
  }
  if (w.size() == 2) {
    int mask = 0;
    res.closest = closest_on_segment(w[0], w[1], mask);
    for (int i = 0; i < 2; ++i)
      if (mask & (1 << i)) res.reduced.push_back(w[i]);
    return res;
  }
  if (w.size() == 3) {
    int mask = 0;
    res.closest = closest_on_triangle(w[0], w[1], w[2], mask);
    for (int i = 0; i < 3; ++i)
      if (mask & (1 << i)) res.reduced.push_back(w[i]);
    return res;
  }

  // tetrahedron: origin inside iff it is on the inner side of all four faces
  const std::array<std::array<int, 3>, 4> tris = {
      {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  const std::array<int, 4> opposite = {3, 2, 1, 0};
  bool inside = true;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int f = 0; f < 4; ++f) {
    const Eigen::Vector3d& a = w[tris[f][0]];
    const Eigen::Vector3d& b = w[tris[f][1]];
    const Eigen::Vector3d& c = w[tris[f][2]];
    const Eigen::Vector3d& d = w[opposite[f]];
    const Eigen::Vector3d n = (b - a).cross(c - a);
    const double sign_p = n.dot(-a);
    const double sign_d = n.dot(d - a);
    if (sign_p * sign_d < 0.0) {
      inside = false;
      int mask = 0;
      const Eigen::Vector3d q = closest_on_triangle(a, b, c, mask);
      const double d2 = q.squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        res.closest = q;
        res.reduced.clear();
        for (int i = 0; i < 3; ++i)
          if (mask & (1 << i)) res.reduced.push_back(w[tris[f][i]]);
      }
    }
  }
  if (inside) {
    res.contains_origin = true;
    res.closest = Eigen::Vector3d::Zero();
    res.reduced = w;
  }
  return res;
}

ConvexDistanceResult gjk(const ConvexShape& a, const Pose& pa,
                         const ConvexShape& b, const Pose& pb) {
  const Eigen::Matrix3d ra = pa.rotation.toRotationMatrix();
  const Eigen::Matrix3d rb = pb.rotation.toRotationMatrix();
  const auto minkowski = [&](const Eigen::Vector3d& d) {
    return support_point(a, ra, pa.translation, d) -
           support_point(b, rb, pb.translation, -d);
  };

  double extent = (pa.translation - pb.translation).norm();
  for (const auto& v : a.vertices) extent = std::max(extent, v.norm());
  for (const auto& v : b.vertices) extent = std::max(extent, v.norm());
  const double eps_abs = 1e-12 * (1.0 + extent);

  std::vector<Eigen::Vector3d> simplex;
  Eigen::Vector3d v = minkowski(Eigen::Vector3d::UnitX());
  simplex.push_back(v);

  ConvexDistanceResult result;
  for (int iter = 0; iter < 128; ++iter) {
    const double vn2 = v.squaredNorm();
    if (vn2 <= eps_abs * eps_abs) {
      result.separation = 0.0;
      result.intersecting = true;
      return result;
    }
    const Eigen::Vector3d w = minkowski(-v);
    // no further progress toward the origin
    if (vn2 - v.dot(w) <= 1e-12 * vn2) break;
    bool duplicate = false;
    for (const auto& s : simplex) {
      if ((s - w).squaredNorm() <= eps_abs * eps_abs) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) break;

    simplex.push_back(w);
    SimplexResult sr = closest_on_simplex(simplex);
    if (sr.contains_origin) {
      result.separation = 0.0;
      result.intersecting = true;
      return result;
    }
    simplex = std::move(sr.reduced);
    v = sr.closest;
  }

  result.separation = v.norm();
  result.intersecting = result.separation <= eps_abs;
  if (result.intersecting) result.separation = 0.0;
  return result;
}

// deterministic total order over (shape, pose) pairs so that swapping the
// arguments cannot change the computed distance
bool pair_less(const ConvexShape& a, const Pose& pa, const ConvexShape& b,
               const Pose& pb) {
  if (a.vertices.size() != b.vertices.size())
    return a.vertices.size() < b.vertices.size();
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      if (a.vertices[i][k] != b.vertices[i][k])
        return a.vertices[i][k] < b.vertices[i][k];
    }
  }
  for (int k = 0; k < 3; ++k) {
    if (pa.translation[k] != pb.translation[k])
      return pa.translation[k] < pb.translation[k];
  }
  for (int k = 0; k < 4; ++k) {
    if (pa.rotation.coeffs()[k] != pb.rotation.coeffs()[k])
      return pa.rotation.coeffs()[k] < pb.rotation.coeffs()[k];
  }
  return false;
}

}  // namespace

ConvexDistanceResult convex_distance(const ConvexShape& a, const Pose& pa,
                                     const ConvexShape& b, const Pose& pb) {
  if (pair_less(b, pb, a, pa)) return gjk(b, pb, a, pa);
  return gjk(a, pa, b, pb);
}

ConvexDistanceResult model_distance(const CollisionModel& a, const Pose& pa,
                                    const CollisionModel& b, const Pose& pb) {
  ConvexDistanceResult best;
  best.separation = std::numeric_limits<double>::infinity();
  for (const auto& sa : a.parts) {
    for (const auto& sb : b.parts) {
      const ConvexDistanceResult r = convex_distance(sa, pa, sb, pb);
      if (r.intersecting) return r;
      best.separation = std::min(best.separation, r.separation);
    }
  }
  return best;
}

CollisionModel build_collision_model(const PointCloud& c, double eps,
                                     int min_pts) {
  if (c.empty()) throw NoValidParts("collision model from empty cloud");

  constexpr int kOutlierNeighbors = 8;
  constexpr double kOutlierStdRatio = 2.0;
  PointCloud filtered =
      static_cast<int>(c.size()) > kOutlierNeighbors
          ? remove_statistical_outliers(c, kOutlierNeighbors, kOutlierStdRatio)
          : c;

  const Clustering groups = cluster(filtered.points, eps, min_pts);
  CollisionModel model;
  for (const auto& idx : groups.clusters) {
    if (idx.size() < 4) continue;
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(idx.size());
    for (int i : idx) pts.push_back(filtered.points[i]);
    try {
      model.parts.push_back(convex_hull(pts));
    } catch (const Degenerate&) {
      // coplanar cluster: no volume to wrap
    }
  }
  if (model.parts.empty())
    throw NoValidParts("no cluster produced a valid convex part");
  return model;
}

ConvexShape make_box(const Eigen::Vector3d& half_extents,
                     const Eigen::Vector3d& center) {
  ConvexShape s;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1})
        s.vertices.push_back(center + Eigen::Vector3d(sx * half_extents.x(),
                                                      sy * half_extents.y(),
                                                      sz * half_extents.z()));
  return s;
}

}  // namespace clfd
