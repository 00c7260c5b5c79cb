#pragma once

#include <filesystem>

#include "clfd/planning/chain.hpp"
#include "clfd/sim/world.hpp"

namespace clfd::io {

/// Execution scene JSON: named objects with poses, model clouds (PLY path),
/// collision geometry (explicit parts/boxes, or clustered from the cloud),
/// presence/collidability flags, optional faucet rule, and the robot start
/// config.
sim::WorldState load_scene(const std::filesystem::path& path);

void save_scene(const sim::WorldState& world,
                const std::filesystem::path& path);

}  // namespace clfd::io
