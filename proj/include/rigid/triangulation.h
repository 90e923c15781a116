#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rigid/surface.h"

namespace rigid {

// One side of a triangle: the edge it carries and whether it runs along the
// edge's orientation (+1) or against it (-1).
struct Side {
  int edge = 0;
  int dir = 1;
  bool operator==(const Side&) const = default;
};

using TriangleSides = std::array<Side, 3>;

// Position of a side: triangle index and slot 0..2.
struct SideRef {
  int tri = 0;
  int slot = 0;
  bool operator==(const SideRef&) const = default;
};

struct TriangleInfo {
  int index = 0;
  bool embedded = true;
  int inner_edge = -1; // non-embedded only: the repeated side
  int outer_edge = -1; // non-embedded only: the remaining side
};

// A labelled gluing of triangles along edges.
//
// Side k of a triangle runs from corner k to corner k+1 (mod 3), so corner k
// sits between sides k-1 and k and is opposite side k+1. A side with dir +1
// runs from the edge's tail to its head.
//
// Construction validates the gluing and brings every triangle into the
// orientation of the component of triangle 0: a triangle that disagrees is
// reversed (slot order reversed, directions negated) and recorded with
// orientation() == -1. After construction each edge occurs exactly once with
// dir +1 and once with dir -1.
class Triangulation {
public:
  Triangulation(int edge_count, std::vector<TriangleSides> triangles);

  int edge_count() const { return edge_count_; }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int vertex_count() const { return vertex_count_; }
  const Surface& surface() const { return surface_; }

  const std::vector<TriangleSides>& triangles() const { return triangles_; }
  const Side& side(SideRef r) const { return triangles_[r.tri][r.slot]; }
  const Side& side(int tri, int slot) const { return triangles_[tri][slot]; }

  // Sides carrying edge e: [0] has dir +1, [1] has dir -1.
  const std::array<SideRef, 2>& edge_sides(int e) const { return edge_sides_[e]; }
  // The side glued to r.
  SideRef glued(SideRef r) const;

  // Vertex class of corner `slot` of triangle `tri`.
  int corner_vertex(int tri, int slot) const { return corner_vertex_[3 * tri + slot]; }
  int edge_tail(int e) const;
  int edge_head(int e) const;

  // +1 when the input triangle was kept as given, -1 when it was reversed.
  int orientation(int tri) const { return orientation_[tri]; }

  // An edge is flippable when its two sides lie in distinct triangles.
  bool is_flippable(int e) const;

  // Replaces e by the other diagonal of its quadrilateral. Only the two
  // triangles adjacent to e change; flip(flip(t, e), e) == t.
  Triangulation flip(int e) const;

  std::vector<TriangleInfo> classify_triangles() const;

  // Triangles adjacent across each side of `tri` (one per slot).
  std::array<int, 3> neighbours(int tri) const;

  bool operator==(const Triangulation& o) const {
    return edge_count_ == o.edge_count_ && triangles_ == o.triangles_;
  }

  std::size_t hash() const;

private:
  Triangulation() = default;
  void derive();

  int edge_count_ = 0;
  std::vector<TriangleSides> triangles_;
  std::vector<int> orientation_;
  std::vector<std::array<SideRef, 2>> edge_sides_;
  std::vector<int> corner_vertex_;
  int vertex_count_ = 0;
  Surface surface_;
};

struct TriangulationHash {
  std::size_t operator()(const Triangulation& t) const { return t.hash(); }
};

// Validates and returns the derived surface (same as t.surface()).
Surface validate(const Triangulation& t);

// Canonical base triangulation of S_{g,n}.
//
// g >= 1: the 4g-gon with boundary word a_1 b_1 a_1^-1 b_1^-1 ... is
// triangulated by the fan of diagonals from polygon corner 0. Edge a_i has id
// 2i, b_i has id 2i+1, the diagonal from corner 0 to corner k has id
// 2g + k - 2. Fan triangle k (k = 1..4g-2) is (corner 0, corner k, corner k+1).
// g = 0: two triangles [(0,+),(1,+),(2,-)] and [(2,+),(1,-),(0,-)] on three
// marked points.
// Each further marked point is added by a stellar subdivision of triangle 0
// [s0, s1, s2] with corners X, Y, Z: new edges E (X->P), E+1 (Y->P),
// E+2 (Z->P); triangle 0 becomes [s0, (E+1,+), (E,-)] and
// [s1, (E+2,+), (E+1,-)], [s2, (E,+), (E+2,-)] are appended.
//
// Throws InvalidSurface for S_{0,1}, S_{0,2} (no triangulations).
Triangulation base_triangulation(const Surface& s);

} // namespace rigid
