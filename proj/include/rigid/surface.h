#pragma once

#include <compare>
#include <string>

namespace rigid {

// Closed orientable surface of genus g with n >= 1 marked points.
struct Surface {
  int genus = 0;
  int marked_points = 1;

  auto operator<=>(const Surface&) const = default;

  std::string name() const;
};

struct SurfaceInvariants {
  int dim_arc_complex;
  int arcs_per_triangulation;
  int triangles_per_triangulation;
  // True only for S_{0,1}, which carries no essential arcs.
  bool empty_complex;
  // False for S_{0,1} and S_{0,2}: no triangulations exist there.
  bool has_triangulations;
};

// Closed-form counts. S_{0,1} reports dimension -1 (empty complex) and S_{0,2}
// dimension 0 (a single arc); both report zero triangulation counts.
SurfaceInvariants surface_invariants(const Surface& s);

} // namespace rigid
