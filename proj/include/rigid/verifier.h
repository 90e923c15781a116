#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rigid/constructions.h"
#include "rigid/isomorphism.h"

namespace rigid {

// A combinatorial isomorphism between two frames of (possibly different) arc
// spaces.
struct FrameIsomorphism {
  CombinatorialIsomorphism h;
  std::shared_ptr<ArcSpace> source_space;
  Frame source;
  std::shared_ptr<ArcSpace> target_space;
  Frame target;
  // Isomorphisms with the same edge map (more than one means a symmetry that
  // fixes every arc of the source frame).
  int alternatives = 1;
};

// Base coordinates (target space) of the image of an arc given by base
// coordinates of the source space.
Coords push_arc(const FrameIsomorphism& f, const Coords& source_base_coords);

// Pushes every vertex of x forward. The images must be vertices of target
// (UnknownVertex otherwise).
SimplicialMap induced_map(const FrameIsomorphism& f, const std::shared_ptr<const FiniteComplex>& x,
                          const std::shared_ptr<const FiniteComplex>& target);
// Same, into the full complex spanned by the images.
SimplicialMap induced_map(const FrameIsomorphism& f, const std::shared_ptr<const FiniteComplex>& x);

// Rebuilds the isomorphism forced by m on the triangulation t (whose arcs are
// vertices of m.source). Throws NotATriangulation, SurfaceMismatch,
// TypeMismatch or OrientationConflict.
FrameIsomorphism homeomorphism_from_map(const SimplicialMap& m, const Frame& t);

struct Propagation {
  bool conflict = false;
  int conflict_step = -1;
  ArcId conflict_vertex = -1;
  std::string reason;
  // Forced image of every arc met along the path (source id -> target id).
  std::map<ArcId, ArcId> images;
};

// Walks `path` from start.source, flipping the corresponding image edge at
// every step, and compares each forced image with m where m is defined.
// Arcs of start.source seed the images from m.
Propagation propagate(const SimplicialMap& m, const FrameIsomorphism& start, const FlipPath& path);

struct Soundness {
  bool sound = false;
  int radius = 0;
  int triangulation_types = 0;
  std::string reason;
};

// Whether every locally injective map of a set whose triangulations lie
// within `radius` flips of its base is, up to a homeomorphism of the target
// surface, a map into `target`: each combinatorial type of triangulation of
// the target surface needs a representative whose radius-ball of arcs lies in
// target.
Soundness truncation_soundness(const FiniteComplex& target, int radius, int type_cap = 64);

struct RigidityOptions {
  std::optional<long long> map_limit;
  int threads = 1;
  // Counterexample maps kept in the report (all are counted).
  int keep_counterexamples = 16;
};

struct RigidityReport {
  Surface source_surface;
  Surface target_surface;
  long long maps_examined = 0;
  long long maps_induced = 0;
  long long counterexample_count = 0;
  std::vector<SimplicialMap> counterexamples;
  std::vector<std::string> reasons;
  bool truncation_flag = false;
  // False when the set holds no triangulation.
  bool applicable = true;
  Soundness soundness;
  // Maps whose isomorphism was not unique on the nose.
  long long symmetric_maps = 0;
  double seconds = 0;

  bool rigid() const { return applicable && counterexample_count == 0 && !truncation_flag && soundness.sound; }
};

RigidityReport check_rigidity(const RigidSetReport& x, const std::shared_ptr<const FiniteComplex>& target,
                              const RigidityOptions& opts = {});
// Plain complex: a maximal simplex of triangulation size is used as base and
// no flip paths are followed.
RigidityReport check_rigidity(const std::shared_ptr<const FiniteComplex>& x,
                              const std::shared_ptr<const FiniteComplex>& target, const RigidityOptions& opts = {});

// Surfaces whose arc complexes have the same dimension as that of s.
std::vector<Surface> equal_dimension_surfaces(const Surface& s);

} // namespace rigid
