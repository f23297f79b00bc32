#pragma once

#include <string>

#include "lcs/barriers.hpp"
#include "lcs/strain_fields.hpp"

namespace lcs {

// Binary grid format, version 1.
//   64-byte header: magic "LCS3DGRD" (8), version u32, nx u32, ny u32,
//   s1 f64, t0 f64, T f64, dx f64, dy f64, 4 pad bytes.
//   Then row-major little-endian f64 fields in the order listed in the
//   sidecar text file (path + ".txt"), which also records the plane origin,
//   layer spacing hz, and mask conventions.
void save_grid(const DeformationGrid& grid, const std::string& path);
DeformationGrid load_grid(const std::string& path);

// ASCII PLY with per-vertex helicity and lambda2 scalar properties.
void save_ply(const BarrierSurface& surface, const std::string& path);

// Legacy-ASCII VTK polydata with the same per-vertex scalars.
void save_vtk(const BarrierSurface& surface, const std::string& path);

}  // namespace lcs
