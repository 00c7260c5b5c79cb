#pragma once

#include <optional>
#include <vector>

#include "clfd/demo.hpp"
#include "clfd/geometry/point_cloud.hpp"
#include "clfd/geometry/pose.hpp"

namespace clfd::icp {

struct IcpParams {
  int max_iterations = 60;
  double correspondence_max_dist = 0.05;  // m
  double convergence_delta = 1e-7;        // m, RMSE change threshold
  double min_fitness = 0.3;
};

struct PoseEstimate {
  Pose pose;           // model frame -> scene frame
  double rmse = 0.0;   // m, see icp_register
  double fitness = 0.0;  // fraction of model points with a gated match
  int iterations = 0;
  std::vector<double> rmse_history;  // one value per evaluated iterate
};

/// Point-to-point ICP. Alternates gated nearest-neighbor correspondences with
/// the closed-form least-squares rigid update, stopping when the RMSE change
/// drops below convergence_delta or max_iterations updates were applied.
///
/// The reported RMSE is the root mean square over all model points of
/// min(nearest-neighbor distance, gate): points without a gated match
/// saturate at the gate. Under that measure each update cannot increase the
/// error, so rmse_history is non-increasing; with fitness 1 it coincides with
/// the plain inlier RMSE.
///
/// Throws TooFewPoints (< 3 points either side), NoCorrespondences (no gated
/// pair at init), LowFitness (final fitness below min_fitness).
PoseEstimate icp_register(const PointCloud& model, const PointCloud& observed,
                          const Pose& init, const IcpParams& params);

/// Per-frame tracking of one object across a demonstration. Frame t is
/// initialized from frame t-1's estimate (identity for the first detection);
/// frames without the object's cloud yield nullopt.
/// Throws NeverObserved when the object appears in no frame.
std::vector<std::optional<PoseEstimate>> track_poses(
    const PointCloud& model, const std::vector<Frame>& frames,
    const std::string& object, const IcpParams& params);

}  // namespace clfd::icp
