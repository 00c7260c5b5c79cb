#pragma once

#include <filesystem>

#include "clfd/demo.hpp"

namespace clfd::io {

/// Demonstration directory layout:
///   meta.json            frame rate, object list, model paths, frame index
///   models/<name>.ply    per-object model clouds
///   frames/NNNNNN.bin    concatenated binary cloud blocks, offsets in meta
/// A truth.json sidecar may sit alongside; it is never read here.
void save_demo(const Demonstration& demo, const std::filesystem::path& dir);

/// Throws FormatError naming the offending file (and offset for binary
/// blocks), including unsupported format versions.
Demonstration load_demo(const std::filesystem::path& dir);

}  // namespace clfd::io
