#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rigid/triangulation.h"

namespace rigid {

// Edge-intersection coordinates of an arc against a triangulation: entry e is
// the minimal number of crossings with edge e, except for an arc isotopic to
// edge e itself, which is encoded as -1 at e and 0 elsewhere.
using Coords = std::vector<long long>;

struct ArcCoordinates {
  std::string reference;
  Coords coords;
  bool operator==(const ArcCoordinates&) const = default;
};

// Normal pieces of an arc inside one triangle with side counts n[0..2].
// corner[k] counts segments cutting off corner k (joining sides k-1 and k);
// at most one corner carries terminal segments, which run from that corner to
// the opposite side.
struct TrianglePieces {
  std::array<long long, 3> corner{0, 0, 0};
  int terminal_corner = -1;
  long long terminals = 0;
};

std::optional<TrianglePieces> decompose_triangle(long long n0, long long n1, long long n2);

// The arc of edge e of t: -1 at e, 0 elsewhere. Throws OutOfRange.
Coords edge_arc(const Triangulation& t, int e);

// Index of the -1 entry when c encodes an edge, nullopt otherwise.
std::optional<int> edge_index(const Coords& c);

long long coordinate_sum(const Coords& c);

struct ArcTrace {
  int start_vertex = -1;
  int end_vertex = -1;
  std::vector<int> crossed_edges; // in order from start to end
};

// Follows the arc through the triangulation. Throws InvalidArc unless c is a
// single connected arc with both ends at marked points (or an edge).
ArcTrace trace_arc(const Triangulation& t, const Coords& c);

bool is_valid_arc(const Triangulation& t, const Coords& c);

// Coordinates of the same arc against t.flip(e). Throws NotFlippable.
Coords transport(const Triangulation& t, const Coords& c, int e);

// Convenience: the arc whose coordinates are 1 on the given edges, 0 elsewhere.
Coords unit_coords(const Triangulation& t, std::initializer_list<int> edges);

} // namespace rigid
