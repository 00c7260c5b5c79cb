#include "clfd/contact/locations.hpp"

#include <algorithm>

#include "clfd/errors.hpp"
#include "clfd/geometry/clustering.hpp"
#include "clfd/geometry/kdtree.hpp"

namespace clfd::contact {

std::vector<ContactLocation> contact_locations(
    const PointCloud& object_model, const Pose& object_pose,
    const PointCloud& hand_cloud, double d_contact, double eps, int min_pts) {
  if (object_model.empty() || hand_cloud.empty())
    throw EmptyCloud("contact_locations requires non-empty clouds");

  const KdTree hand_tree(hand_cloud.points);
  const double d2 = d_contact * d_contact;
  const Eigen::Matrix3d r = object_pose.rotation.toRotationMatrix();

  std::vector<Eigen::Vector3d> selected;  // model frame
  for (const auto& p : object_model.points) {
    const Eigen::Vector3d scene = r * p + object_pose.translation;
    if (hand_tree.nearest(scene).second <= d2) selected.push_back(p);
  }
  if (selected.empty())
    throw NoContactPoints("no object point within d_contact of the hand");

  const Clustering groups = cluster(selected, eps, min_pts);
  std::vector<ContactLocation> out;
  for (const auto& idx : groups.clusters) {
    ContactLocation loc;
    loc.support = static_cast<int>(idx.size());
    for (int i : idx) loc.point += selected[i];
    loc.point /= static_cast<double>(idx.size());
    out.push_back(loc);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ContactLocation& a, const ContactLocation& b) {
                     return a.support > b.support;
                   });
  return out;
}

}  // namespace clfd::contact
