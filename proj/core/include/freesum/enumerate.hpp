#pragma once

#include <cstddef>
#include <vector>

#include "freesum/complex.hpp"

namespace freesum {

struct EnumerateOptions {
  std::size_t max_points = 10;
  std::size_t max_dim = 2;
  std::size_t limit = 0;  // stop after this many results; 0 for all
};

/// All triangulations of c (every point optional), regular or not. Starts
/// with the cell holding a generic interior point and then closes interior
/// ridges one at a time, so each triangulation is produced once. Output is
/// sorted by cell list. Throws std::length_error beyond the size guard.
std::vector<Triangulation> brute_force_triangulations(const ConfigPtr& c, const EnumerateOptions& options = {});

}  // namespace freesum
