#include "clfd/planning/alternatives.hpp"

#include <cmath>

#include "clfd/errors.hpp"

namespace clfd::planning {

namespace {

// the pair must stay touching-or-near (separation within the band) without
// interpenetrating
bool satisfies_bands(const Pose& candidate,
                     const std::vector<ContactBand>& pairs) {
  for (const auto& band : pairs) {
    const ConvexDistanceResult r =
        model_distance(band.moving, candidate, band.other, band.other_pose);
    if (r.intersecting || r.separation > band.band) return false;
  }
  return true;
}

// axes orthogonal to the symmetry axis; all three model axes otherwise
std::vector<Eigen::Vector3d> perturbation_axes(const SymmetrySpec& sym) {
  if (!sym.axis) {
    return {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(),
            Eigen::Vector3d::UnitZ()};
  }
  const Eigen::Vector3d a = sym.axis->normalized();
  Eigen::Vector3d ref = std::abs(a.z()) < 0.9 ? Eigen::Vector3d::UnitZ()
                                              : Eigen::Vector3d::UnitX();
  const Eigen::Vector3d u = a.cross(ref).normalized();
  const Eigen::Vector3d v = a.cross(u).normalized();
  return {u, v};
}

}  // namespace

std::vector<Pose> propose_alternative_poses(
    const Pose& desired, const SymmetrySpec& sym,
    const std::vector<ContactBand>& contact_pairs) {
  if (sym.axis && std::abs(sym.axis->norm() - 1.0) > 1e-9)
    throw InvalidArgument("symmetry axis must be unit length");

  std::vector<Pose> candidates;
  candidates.push_back(desired);  // always kept, never filtered

  // model-frame rotation about the axis line through axis_point, so the
  // object spins in place
  const auto spin = [&](const Eigen::Vector3d& axis, double angle) {
    const Pose rot = Pose::from_rotation(axis, angle);
    return compose(desired,
                   compose(Pose::from_translation(sym.axis_point),
                           compose(rot, Pose::from_translation(
                                            -sym.axis_point))));
  };

  if (sym.axis) {
    const int steps =
        static_cast<int>(std::round(2.0 * M_PI / sym.symmetry_step));
    for (int k = 1; k < steps; ++k)
      candidates.push_back(spin(*sym.axis, k * sym.symmetry_step));
  }
  for (const Eigen::Vector3d& axis : perturbation_axes(sym)) {
    for (double angle : sym.perturbation_angles)
      candidates.push_back(spin(axis, angle));
  }

  std::vector<Pose> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i == 0 || satisfies_bands(candidates[i], contact_pairs))
      out.push_back(candidates[i]);
  }
  return out;
}

}  // namespace clfd::planning
