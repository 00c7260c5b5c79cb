#include "clfd/pose_estimation/icp.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "clfd/errors.hpp"
#include "clfd/geometry/kdtree.hpp"

namespace clfd::icp {

namespace {

// closed-form least-squares rigid transform mapping src onto dst (Kabsch)
Pose rigid_fit(const std::vector<Eigen::Vector3d>& src,
               const std::vector<Eigen::Vector3d>& dst) {
  const int n = static_cast<int>(src.size());
  Eigen::Vector3d cs = Eigen::Vector3d::Zero();
  Eigen::Vector3d cd = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    cs += src[i];
    cd += dst[i];
  }
  cs /= n;
  cd /= n;

  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (int i = 0; i < n; ++i) h += (src[i] - cs) * (dst[i] - cd).transpose();

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU |
                                               Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixV() * svd.matrixU().transpose();
  if (r.determinant() < 0.0) {
    Eigen::Matrix3d v = svd.matrixV();
    v.col(2) *= -1.0;
    r = v * svd.matrixU().transpose();
  }
  Pose out;
  out.rotation = Eigen::Quaterniond(r);
  out.rotation.normalize();
  out.translation = cd - out.rotation * cs;
  return out;
}

}  // namespace

PoseEstimate icp_register(const PointCloud& model, const PointCloud& observed,
                          const Pose& init, const IcpParams& params) {
  if (model.size() < 3 || observed.size() < 3)
    throw TooFewPoints("icp_register needs >= 3 points per cloud");
  if (params.max_iterations < 1 || params.correspondence_max_dist <= 0.0 ||
      params.convergence_delta < 0.0)
    throw InvalidArgument("icp_register: invalid params");

  const KdTree tree(observed.points);
  const double gate = params.correspondence_max_dist;
  const double gate2 = gate * gate;
  const int n = static_cast<int>(model.size());

  Pose pose = init;
  PoseEstimate est;
  est.pose = pose;

  std::vector<Eigen::Vector3d> src, dst;
  src.reserve(n);
  dst.reserve(n);

  double prev_rmse = 0.0;
  for (int iter = 0;; ++iter) {
    src.clear();
    dst.clear();
    const Eigen::Matrix3d r = pose.rotation.toRotationMatrix();
    double saturated_sq = 0.0;
    for (const auto& p : model.points) {
      const Eigen::Vector3d q = r * p + pose.translation;
      const auto [j, d2] = tree.nearest(q);
      if (d2 < gate2) {
        saturated_sq += d2;
        src.push_back(p);
        dst.push_back(observed.points[j]);
      } else {
        saturated_sq += gate2;
      }
    }
    const double rmse = std::sqrt(saturated_sq / n);
    const double fitness = static_cast<double>(src.size()) / n;

    est.pose = pose;
    est.rmse = rmse;
    est.fitness = fitness;
    est.iterations = iter;
    est.rmse_history.push_back(rmse);

    if (iter == 0 && src.empty())
      throw NoCorrespondences("no correspondence within gate at init");

    const bool converged = iter > 0 && prev_rmse - rmse < params.convergence_delta;
    if (converged || iter >= params.max_iterations || src.empty()) break;

    prev_rmse = rmse;
    pose = rigid_fit(src, dst);
  }

  if (est.fitness < params.min_fitness)
    throw LowFitness("icp fitness " + std::to_string(est.fitness) +
                     " below minimum " + std::to_string(params.min_fitness));
  return est;
}

std::vector<std::optional<PoseEstimate>> track_poses(
    const PointCloud& model, const std::vector<Frame>& frames,
    const std::string& object, const IcpParams& params) {
  std::vector<std::optional<PoseEstimate>> out(frames.size());
  bool seen = false;
  Pose init = Pose::identity();
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const PointCloud* cloud = frames[t].find(object);
    if (cloud == nullptr || cloud->empty()) continue;
    out[t] = icp_register(model, *cloud, init, params);
    init = out[t]->pose;
    seen = true;
  }
  if (!seen)
    throw NeverObserved("object '" + object + "' appears in no frame");
  return out;
}

}  // namespace clfd::icp
