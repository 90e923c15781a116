#pragma once

#include <functional>
#include <memory>
#include <string>

#include <json.hpp>

#include "rigid/constructions.h"
#include "rigid/verifier.h"

namespace rigid {

using json = nlohmann::ordered_json;

json to_json(const Triangulation& t);
// Malformed (or the triangulation's own validation errors) on bad input.
Triangulation triangulation_from_json(const json& j);

json to_json(const ArcCoordinates& a);
ArcCoordinates arc_from_json(const json& j);

// {"reference", "arcs", "vertices", "simplices"}; simplices hold indices into
// "vertices" and only maximal simplices are written.
json to_json(const FiniteComplex& c);
// Arcs are interned into space by coordinates; its reference must match.
FiniteComplex complex_from_json(const json& j, const std::shared_ptr<ArcSpace>& space);

json to_json(const SimplicialMap& m);
// Assignment onto existing complexes; Malformed when not total or out of range.
SimplicialMap map_from_json(const json& j, const std::shared_ptr<const FiniteComplex>& source,
                            const std::shared_ptr<const FiniteComplex>& target);

// Complex plus "base", "paths" and "provenance" keyed by vertex id.
json to_json(const RigidSetReport& r);
// Rebuilds the arc space from the stored base.
RigidSetReport report_from_json(const json& j);

json to_json(const RigidityReport& r, const json& truncation);

json error_json(const std::exception& e);

// Dual graph: one node per triangle, one link per edge.
std::string triangulation_dot(const Triangulation& t);
// 1-skeleton; label defaults to the arc coordinates.
std::string complex_dot(const FiniteComplex& c, const std::function<std::string(ArcId)>& label = {});

} // namespace rigid
