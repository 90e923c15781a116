#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "rigid/arc_space.h"

namespace rigid {

using Simplex = std::vector<int>; // sorted vertex indices

// Finite simplicial complex whose vertices are arcs of one ArcSpace. Only the
// maximal simplices are stored; faces are implied. A complex without a space
// is purely combinatorial (its vertex ids are opaque labels).
class FiniteComplex {
public:
  FiniteComplex() = default;
  // Vertices are deduplicated and sorted; simplices are given as vertex ids
  // (not indices) and reduced to the maximal ones. Every simplex vertex must
  // be listed in `vertices` (UnknownVertex otherwise).
  FiniteComplex(std::shared_ptr<ArcSpace> space, std::vector<ArcId> vertices,
                const std::vector<std::vector<ArcId>>& simplices);

  const std::shared_ptr<ArcSpace>& space() const { return space_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<ArcId>& vertices() const { return vertices_; }
  ArcId vertex(int i) const { return vertices_.at(i); }
  std::optional<int> index_of(ArcId a) const;
  bool has_vertex(ArcId a) const { return index_of(a).has_value(); }

  const std::vector<Simplex>& maximal_simplices() const { return maximal_; }
  // Indices into maximal_simplices() of those containing vertex i.
  const std::vector<int>& simplices_at(int i) const { return at_.at(i); }
  const std::vector<int>& neighbours(int i) const { return adj_.at(i); }
  bool adjacent(int i, int j) const;
  int dimension() const;

  // Whether the index set (any order) is a simplex.
  bool contains_simplex(Simplex s) const;
  // Simplex given by arc ids.
  bool contains_arcs(const std::vector<ArcId>& arcs) const;
  // f-vector: entry k counts k-dimensional simplices.
  std::vector<long long> face_counts() const;
  long long edge_count() const;
  // Maximal simplices as arc id lists.
  std::vector<std::vector<ArcId>> simplex_arcs() const;

  // Structural equality (same vertices, same maximal simplices).
  bool operator==(const FiniteComplex& o) const { return vertices_ == o.vertices_ && maximal_ == o.maximal_; }
  // Every simplex of this lies in o (vertex ids compared).
  bool is_subcomplex_of(const FiniteComplex& o) const;

private:
  std::shared_ptr<ArcSpace> space_;
  std::vector<ArcId> vertices_;
  std::vector<Simplex> maximal_;
  std::vector<std::vector<int>> at_;
  std::vector<std::vector<int>> adj_;
};

// Full subcomplex of the arc complex on the given arcs: every set of pairwise
// disjoint arcs is a simplex.
FiniteComplex build_complex(const std::shared_ptr<ArcSpace>& space, const std::vector<ArcId>& arcs);

// Simplices of ambient whose vertices all lie in `vertices` (VertexNotInAmbient
// if one is missing).
FiniteComplex span(const FiniteComplex& ambient, const std::vector<ArcId>& vertices);
// Same, with the vertex set given as the union of simplices.
FiniteComplex span(const FiniteComplex& ambient, const std::vector<std::vector<ArcId>>& simplices);

// All simplices (faces included) containing vertex id v, sorted.
std::vector<std::vector<ArcId>> star(const FiniteComplex& c, ArcId v);
// Closure of the star as a complex.
FiniteComplex closed_star(const FiniteComplex& c, ArcId v);

struct SimplicialMap {
  std::shared_ptr<const FiniteComplex> source;
  std::shared_ptr<const FiniteComplex> target;
  // Target vertex index for each source vertex index.
  std::vector<int> assignment;

  ArcId image(ArcId source_vertex) const;
  bool operator==(const SimplicialMap& o) const { return assignment == o.assignment; }
};

bool is_simplicial(const SimplicialMap& m);
// Throws NotSimplicial when m is not simplicial.
bool is_locally_injective(const SimplicialMap& m);
bool is_injective(const SimplicialMap& m);
// first then second, which must share the middle complex.
SimplicialMap compose(const SimplicialMap& first, const SimplicialMap& second);

struct MapSearchOptions {
  // Stop after this many maps; the result is then flagged truncated.
  std::optional<long long> limit;
  // Keep only maps injective on all vertices.
  bool injective_only = false;
  int threads = 1;
};

struct MapSearchResult {
  long long found = 0;
  bool truncated = false;
};

// Streams every locally injective simplicial map x -> target exactly once, in
// a fixed order. The callback returns false to stop early (not a truncation).
MapSearchResult enumerate_locally_injective_maps(const std::shared_ptr<const FiniteComplex>& x,
                                                 const std::shared_ptr<const FiniteComplex>& target,
                                                 const std::function<bool(const SimplicialMap&)>& visit,
                                                 const MapSearchOptions& opts = {});

// Collects the maps; the search is split over the images of the first vertex
// across opts.threads workers and merged back in sequential order.
std::vector<SimplicialMap> collect_locally_injective_maps(const std::shared_ptr<const FiniteComplex>& x,
                                                          const std::shared_ptr<const FiniteComplex>& target,
                                                          const MapSearchOptions& opts, bool* truncated = nullptr);

} // namespace rigid
