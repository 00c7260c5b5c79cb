#pragma once

#include <filesystem>

#include "clfd/planning/chain.hpp"

namespace clfd::io {

/// Robot description JSON: joint list with kinds, axes, origins (xyz + rpy or
/// quaternion), limits, and collision parts (boxes or convex-vertex lists).
planning::KinematicChain load_chain(const std::filesystem::path& path);

}  // namespace clfd::io
