#pragma once

#include <array>
#include <vector>

#include "rigid/triangulation.h"

namespace rigid {

// Gluing-preserving bijection source -> target.
//
// slot_map[t][k] is the slot of triangle triangle_map[t] that receives side k
// of triangle t. edge_sign[e] is +1 when edge e is carried onto edge_map[e]
// with matching direction.
struct CombinatorialIsomorphism {
  std::vector<int> triangle_map;
  std::vector<std::array<int, 3>> slot_map;
  std::vector<int> edge_map;
  std::vector<int> edge_sign;
  std::vector<int> vertex_map;
  bool orientation_preserving = true;

  bool operator==(const CombinatorialIsomorphism&) const = default;
};

// Every isomorphism source -> target, orientation-preserving ones first, each
// group ordered by (image of triangle 0, slot of its side 0).
std::vector<CombinatorialIsomorphism> isomorphisms(const Triangulation& source, const Triangulation& target);

// Orientation-preserving only, same order.
std::vector<CombinatorialIsomorphism> preserving_isomorphisms(const Triangulation& source,
                                                              const Triangulation& target);

CombinatorialIsomorphism identity_isomorphism(const Triangulation& t);

// (second o first): source of first -> target of second.
CombinatorialIsomorphism compose(const CombinatorialIsomorphism& first, const CombinatorialIsomorphism& second);

CombinatorialIsomorphism inverse(const CombinatorialIsomorphism& h);

// True when h maps sides, gluings and directions of source onto target.
bool is_isomorphism(const CombinatorialIsomorphism& h, const Triangulation& source, const Triangulation& target);

// The mirror image of t: every triangle reversed. reflect(t) has the same
// edges; slot k of a reflected triangle is slot 2-k of the original.
Triangulation reflect(const Triangulation& t);

} // namespace rigid
