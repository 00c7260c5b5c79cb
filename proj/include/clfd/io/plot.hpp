#pragma once

#include <filesystem>

namespace clfd::io {

/// Renders a CSV export to SVG. Timeline CSVs (frame,pair_a,pair_b,...) plot
/// per-pair distance curves with the two threshold lines and shaded contact
/// bands; log CSVs (time,q0,...) plot joint trajectories.
void plot_csv(const std::filesystem::path& csv,
              const std::filesystem::path& svg_out, double d_make = 0.005,
              double d_break = 0.010);

}  // namespace clfd::io
