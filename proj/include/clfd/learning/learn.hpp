#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clfd/contact/timeline.hpp"
#include "clfd/demo.hpp"
#include "clfd/learning/policy.hpp"
#include "clfd/pose_estimation/icp.hpp"

namespace clfd::learning {

/// Contact timelines for the whole demonstration: hand vs each object, and
/// every unordered object-object pair (keys sorted lexicographically).
struct ContactTimelines {
  std::map<std::string, contact::ContactTimeline> hand;
  std::map<ObjectPair, contact::ContactTimeline> objects;
};

ContactTimelines analyze_contacts(const Demonstration& demo,
                                  const contact::HysteresisParams& params);

using PoseTracks =
    std::map<std::string, std::vector<std::optional<icp::PoseEstimate>>>;

/// Tracks every demonstration object against its model cloud.
PoseTracks track_all_objects(const Demonstration& demo,
                             const icp::IcpParams& params);

struct LearnParams {
  double d_contact = 0.01;      // m, hand-point selection gate
  double location_eps = 0.01;   // m, contact-location clustering
  int location_min_pts = 5;
  double collision_eps = 0.02;  // m, collision-model clustering
  int collision_min_pts = 5;
};

/// Attaches learned parameters to the segmented primitives and bundles the
/// object models into an executable Policy.
/// Throws MissingPoseTrack when a needed pose estimate is unavailable.
Policy learn_policy(const Demonstration& demo,
                    const std::vector<Primitive>& primitives,
                    const ContactTimelines& timelines,
                    const PoseTracks& pose_tracks, const LearnParams& params);

/// Sets a manual place pose on a BreakContact primitive. The learned pose is
/// kept but superseded at execution.
/// Throws WrongPrimitiveKind for any other primitive kind.
Policy override_place_pose(Policy policy, std::size_t primitive_index,
                           const Pose& pose);

}  // namespace clfd::learning
