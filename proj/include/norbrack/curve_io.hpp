#pragma once

// Curve CSV format:
//
//   # ambient=plane n=256
//   1,0
//   0.99969881869620425,0.024541228522912288
//   ...
//
// One line per node with 2 (plane) or 3 (sphere) comma-separated coordinates.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "norbrack/curve_core.hpp"

namespace norbrack {

void write_curve_csv(std::ostream& out, const DiscreteImmersion& c);
void write_curve_csv(const std::filesystem::path& path, const DiscreteImmersion& c);

/// Sphere points are accepted as written; they must already be unit length
/// within 1e-12.
DiscreteImmersion read_curve_csv(std::istream& in);
DiscreteImmersion read_curve_csv(const std::filesystem::path& path);

/// Writes frame_0000.csv, frame_0001.csv, ... into `dir`, creating it if
/// needed. Returns the written paths.
std::vector<std::filesystem::path> write_flow_frames(const std::filesystem::path& dir,
                                                     const std::vector<DiscreteImmersion>& frames);

} // namespace norbrack
