#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rigid/arc.h"
#include "rigid/triangulation.h"

namespace rigid {

using ArcId = int;

// A sequence of flips applied from a root triangulation.
struct FlipPath {
  std::vector<int> flips;
  bool operator==(const FlipPath&) const = default;
};

// A triangulation reached from the base of an ArcSpace by `path`.
struct Frame {
  Triangulation tri;
  FlipPath path;
};

// Applies path to t; throws NotFlippable if some prefix is not applicable.
Triangulation apply_path(const Triangulation& t, const FlipPath& path);

// Coordinates of c (against t) after each flip of path.
Coords transport_along(const Triangulation& t, const Coords& c, const FlipPath& path);

struct DescentOptions {
  // Edges that must never be flipped.
  std::set<int> frozen;
  // Breadth-first fallback depth used when no single flip lowers the total.
  int fallback_depth = 4;
};

// Greedy descent: repeatedly flips the edge whose flip lowers the coordinate
// sum of c the most (ties to the smallest edge id) until c becomes an edge.
// Returns the flips from t. Throws NoneFound if the fallback search is
// exhausted.
FlipPath flip_path_to_contain(const Triangulation& t, const Coords& c, const DescentOptions& opts = {});

// Same descent, stopping once c crosses only `edge`, exactly once.
FlipPath flip_path_to_single_crossing(const Triangulation& t, const Coords& c, int edge,
                                      const DescentOptions& opts = {});

// Number of times the greedy descent needed its fallback search (process-wide).
long long descent_fallback_count();

// i(a, b) for two arcs against the same triangulation.
long long intersection_number(const Triangulation& t, const Coords& a, const Coords& b);

// All arcs of s whose coordinate sum against base_triangulation(s) is at most
// bound, edges included, ordered by (sum, coordinates). S_{0,2} yields its
// single arc with empty coordinates; S_{0,1} throws EmptyComplex.
std::vector<ArcCoordinates> enumerate_arcs(const Surface& s, long long bound);

// Arcs of t (as above, against t itself).
std::vector<Coords> enumerate_arcs(const Triangulation& t, long long bound);

std::string base_reference(const Surface& s);

// Interned arcs of one surface, expressed against its base triangulation,
// with cached frames and intersection numbers. Not thread-safe for mutation.
class ArcSpace {
public:
  explicit ArcSpace(const Surface& s);
  ArcSpace(Triangulation base, std::string reference);

  const Triangulation& base() const { return base_; }
  const Surface& surface() const { return base_.surface(); }
  const std::string& reference() const { return reference_; }
  Frame base_frame() const { return Frame{base_, {}}; }

  // Validates and interns base coordinates.
  ArcId intern(const Coords& base_coords);
  std::optional<ArcId> find(const Coords& base_coords) const;
  const Coords& coords(ArcId a) const { return arcs_.at(a).coords; }
  int size() const { return static_cast<int>(arcs_.size()); }
  ArcCoordinates arc_coordinates(ArcId a) const { return {reference_, coords(a)}; }

  Coords to_frame(const Coords& base_coords, const Frame& f) const;
  Coords to_base(const Coords& frame_coords, const Frame& f) const;
  Frame flip(const Frame& f, int e) const;
  Frame extend(const Frame& f, const FlipPath& more) const;

  ArcId edge_arc(const Frame& f, int e);
  // Arcs of all edges of f, by edge id.
  std::vector<ArcId> frame_arcs(const Frame& f);
  // Edge of f carrying arc a, if any.
  std::optional<int> edge_of(const Frame& f, ArcId a) const;

  // Cached frame reached from the base by greedy descent in which a is an edge.
  const Frame& frame_containing(ArcId a);
  int edge_in_containing_frame(ArcId a);

  long long intersection(ArcId a, ArcId b);
  bool disjoint(ArcId a, ArcId b) { return intersection(a, b) == 0; }

  // Frame whose edges include every arc; arcs must be pairwise disjoint
  // (NotDisjoint otherwise). For a codimension-one system the result lists
  // both completions when the free edge is flippable; otherwise one frame.
  std::vector<Frame> completions(const std::vector<ArcId>& arcs);
  Frame complete_to_triangulation(const std::vector<ArcId>& arcs) { return completions(arcs).front(); }

  // Precomputes frames for arcs so later intersection queries are read-only.
  void prepare(const std::vector<ArcId>& arcs);

private:
  struct Entry {
    Coords coords;
    std::unique_ptr<Frame> frame;
    std::vector<Triangulation> trail; // triangulations along frame->path
    int edge = -1;
  };

  Triangulation base_;
  std::string reference_;
  std::vector<Entry> arcs_;
  std::map<Coords, ArcId> index_;
  std::unordered_map<std::uint64_t, long long> meets_;
};

} // namespace rigid
