#include "rigid/surface.h"

#include "rigid/error.h"

namespace rigid {

std::string Surface::name() const {
  return "S" + std::to_string(genus) + "," + std::to_string(marked_points);
}

SurfaceInvariants surface_invariants(const Surface& s) {
  if (s.genus < 0) throw Error(ErrorKind::InvalidSurface, "negative genus");
  if (s.marked_points < 1) throw Error(ErrorKind::InvalidSurface, "a surface needs at least one marked point");
  if (s.genus == 0 && s.marked_points == 1) return {-1, 0, 0, true, false};
  if (s.genus == 0 && s.marked_points == 2) return {0, 0, 0, false, false};
  const int arcs = 6 * s.genus + 3 * s.marked_points - 6;
  return {arcs - 1, arcs, 4 * s.genus + 2 * s.marked_points - 4, false, true};
}

} // namespace rigid
