#pragma once

#include <map>
#include <optional>
#include <string>

#include "clfd/geometry/convex.hpp"
#include "clfd/planning/chain.hpp"

namespace clfd::planning {

/// Object rigidly bound to the tool frame: object pose = tool ∘ grasp.
struct AttachedObject {
  std::string name;
  Pose grasp;  // tool frame -> object frame
  CollisionModel model;
};

/// Static collision world for planning. The attached object, when present,
/// moves with the tool and is checked like a link.
struct Scene {
  std::map<std::string, std::pair<CollisionModel, Pose>> statics;
  std::optional<AttachedObject> attached;
  double margin = 0.002;  // m, added clearance on every separation
};

/// True iff any posed link part (or the attached object) comes within margin
/// of a static part or of a non-adjacent link. Adjacent links and the
/// attached object vs the last link are exempt.
bool in_collision(const KinematicChain& chain, const JointConfig& q,
                  const Scene& scene);

}  // namespace clfd::planning
