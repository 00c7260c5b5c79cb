#pragma once

#include <filesystem>

#include "clfd/learning/policy.hpp"

namespace clfd::io {

/// Versioned policy JSON. Model clouds are written as PLY files under
/// models/ next to the policy file and referenced by relative path; collision
/// models are rebuilt on load from the stored clustering parameters.
void save_policy(const learning::Policy& policy,
                 const std::filesystem::path& path);

learning::Policy load_policy(const std::filesystem::path& path);

}  // namespace clfd::io
