#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "rigid/complex.h"

namespace rigid {

// Vertex set of a construction, each arc tagged with the first construction
// that introduced it.
struct TaggedArcs {
  std::map<ArcId, std::string> tags;

  void add(ArcId a, const std::string& tag) { tags.emplace(a, tag); }
  void merge(const TaggedArcs& o) {
    for (const auto& [a, t] : o.tags) tags.emplace(a, t);
  }
  bool contains(ArcId a) const { return tags.count(a) > 0; }
  std::vector<ArcId> arcs() const;
};

struct RigidSetReport {
  std::shared_ptr<const FiniteComplex> complex;
  Triangulation base;
  // For each vertex: flips from `base` to a triangulation containing it whose
  // every intermediate triangulation has all its arcs in the complex.
  std::map<ArcId, FlipPath> paths;
  std::map<ArcId, std::string> provenance;
};

// Builds the rigid-set pieces over one arc space. Sub-results are memoized,
// so reusing a builder across calls is cheaper than starting over.
class RigidBuilder {
public:
  explicit RigidBuilder(std::shared_ptr<ArcSpace> space);

  const std::shared_ptr<ArcSpace>& space() const { return space_; }

  // Arcs of two triangulations differing by the flip exchanging a and b.
  // Throws NotIntersectionOne unless i(a, b) = 1.
  TaggedArcs B(ArcId a, ArcId b);

  // Frame sharing f's edges of triangle `tri` (which must be embedded) in
  // which the three triangles across its sides are pairwise distinct.
  // Flips never touch the triangle's sides, so `tri` keeps its index.
  Frame nice_triangulation(const Frame& f, int tri, int depth_cap = 8);

  // Embedded triangle `tri` of f.
  TaggedArcs C(const Frame& f, int tri);
  // Non-embedded triangle `tri` of f (inner arc = repeated side).
  TaggedArcs D(const Frame& f, int tri);
  // Two distinct embedded triangles of f sharing edge e.
  TaggedArcs E(const Frame& f, int e);
  TaggedArcs F(const Frame& f);

  // Rigid set for the base triangulation of the space.
  RigidSetReport X();
  // Adds the flip path to x and its triangulations' arcs.
  RigidSetReport exhaustion_step(const RigidSetReport& prev, ArcId x);

  // Arc crossing edges `first` and `second` of a nice frame once each and no
  // other edge: it runs between the corners opposite those sides.
  ArcId corner_arc(const Frame& nice, int first, int second);

  // Counters of the last F() call, for reporting.
  struct Counts {
    int embedded = 0;
    int non_embedded = 0;
    int shared_sides = 0;
    int skipped_shared_sides = 0;
  };
  const Counts& last_counts() const { return counts_; }

private:
  void require_dimension() const;

  std::shared_ptr<ArcSpace> space_;
  std::map<std::pair<ArcId, ArcId>, TaggedArcs> b_memo_;
  std::map<std::vector<ArcId>, TaggedArcs> c_memo_;
  std::map<std::vector<ArcId>, TaggedArcs> d_memo_; // inner, outer, then the far sides
  Counts counts_;
};

// Free-function forms returning full complexes on the construction's arcs.
FiniteComplex build_B(const std::shared_ptr<ArcSpace>& space, ArcId a, ArcId b);
FiniteComplex build_C(const std::shared_ptr<ArcSpace>& space, const Frame& f, int tri);
FiniteComplex build_D(const std::shared_ptr<ArcSpace>& space, const Frame& f, int tri);
FiniteComplex build_E(const std::shared_ptr<ArcSpace>& space, const Frame& f, int e);
FiniteComplex build_F(const std::shared_ptr<ArcSpace>& space, const Frame& f);
RigidSetReport build_X(const std::shared_ptr<ArcSpace>& space);

// Complex on `arcs` with the arcs of every triangulation along the report
// paths; helper shared by X and the exhaustion.
RigidSetReport make_report(const std::shared_ptr<ArcSpace>& space, const TaggedArcs& arcs,
                           const std::map<ArcId, FlipPath>& known_paths, const std::vector<ArcId>& path_targets,
                           const std::string& closure_tag);

} // namespace rigid
