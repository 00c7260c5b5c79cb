#pragma once

#include <vector>

#include "clfd/geometry/point_cloud.hpp"
#include "clfd/geometry/pose.hpp"

namespace clfd::contact {

/// Where the hand touched the held object, in the object's model frame.
struct ContactLocation {
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  int support = 0;  // clustered points backing this location
};

/// Selects object model points (posed by object_pose) within d_contact of any
/// hand point, maps them back to the model frame, density-clusters them, and
/// returns each cluster's centroid, ordered by descending support.
/// Throws NoContactPoints when no model point is near the hand.
std::vector<ContactLocation> contact_locations(
    const PointCloud& object_model, const Pose& object_pose,
    const PointCloud& hand_cloud, double d_contact, double eps, int min_pts);

}  // namespace clfd::contact
