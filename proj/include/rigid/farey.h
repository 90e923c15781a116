#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>

#include "rigid/constructions.h"

namespace rigid {

// Reduced slope p/q with q > 0, or 1/0.
struct Slope {
  long long p = 1;
  long long q = 0;

  auto operator<=>(const Slope&) const = default;
  std::string str() const;
};

// Reduces and normalizes; OutOfRange for 0/0.
Slope make_slope(long long p, long long q);
// |ps - qr|
long long farey_det(const Slope& a, const Slope& b);
// Slope from "p/q" (or an integer); Malformed otherwise.
Slope parse_slope(const std::string& text);

// Slopes of the once-marked torus as arcs of an S_{1,1} arc space whose base
// is the canonical one (edges 0, 1, 2 carry 0/1, 1/0, 1/1).
class FareyModel {
public:
  FareyModel();
  explicit FareyModel(std::shared_ptr<ArcSpace> space);

  const std::shared_ptr<ArcSpace>& space() const { return space_; }

  // Flips from the base walking down the Farey tessellation towards s.
  FlipPath path_to(const Slope& s) const;
  ArcId arc(const Slope& s);
  // Slope of an arc previously produced by arc().
  std::optional<Slope> slope_of(ArcId a) const;

private:
  std::shared_ptr<ArcSpace> space_;
  std::map<ArcId, Slope> slopes_;
};

// Full subcomplex on all slopes with max(|p|, q) <= height.
FiniteComplex farey_truncation(FareyModel& m, long long height);
// The four Farey triangles {1/0, n, n+1}, n = -2..1.
FiniteComplex farey_rigid_set(FareyModel& m);
// The same set with flip paths from the base triangle {0/1, 1/0, 1/1}.
RigidSetReport farey_rigid_report(FareyModel& m);
// Adds every Farey triangle sharing a side with a triangle of prev.
FiniteComplex farey_exhaustion_step(FareyModel& m, const FiniteComplex& prev);

// Injective simplicial map from the full arc complex of the thrice-marked
// sphere into farey_truncation(height). NoneFound if there is none.
SimplicialMap s03_embedding(FareyModel& m, long long height = 5);

} // namespace rigid
