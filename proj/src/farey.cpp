#include "rigid/farey.h"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "rigid/error.h"

namespace rigid {

std::string Slope::str() const { return std::to_string(p) + "/" + std::to_string(q); }

Slope make_slope(long long p, long long q) {
  if (p == 0 && q == 0) throw Error(ErrorKind::OutOfRange, "0/0 is not a slope");
  const long long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

long long farey_det(const Slope& a, const Slope& b) { return std::llabs(a.p * b.q - a.q * b.p); }

Slope parse_slope(const std::string& text) {
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long p = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return make_slope(p, 1);
    }
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    const long long p = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const long long q = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return make_slope(p, q);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Malformed, "not a slope: " + text);
  }
}

namespace {

long long cross(const Slope& a, const Slope& b) { return a.p * b.q - a.q * b.p; }

const Slope kBase[3] = {{0, 1}, {1, 0}, {1, 1}};

} // namespace

FareyModel::FareyModel() : FareyModel(std::make_shared<ArcSpace>(Surface{1, 1})) {}

FareyModel::FareyModel(std::shared_ptr<ArcSpace> space) : space_(std::move(space)) {
  if (!(space_->base() == base_triangulation(Surface{1, 1})))
    throw Error(ErrorKind::Precondition, "Farey slopes need the canonical torus base");
}

FlipPath FareyModel::path_to(const Slope& target) const {
  const Slope s = make_slope(target.p, target.q);
  Slope cur[3] = {kBase[0], kBase[1], kBase[2]};
  FlipPath path;
  while (cur[0] != s && cur[1] != s && cur[2] != s) {
    int chosen = -1;
    Slope replacement;
    for (int k = 0; k < 3; ++k) {
      const Slope& u = cur[(k + 1) % 3];
      const Slope& v = cur[(k + 2) % 3];
      const Slope& w = cur[k];
      // Coordinates in the basis (u, v); det(u, v) = +-1 keeps them integral.
      const long long d = cross(u, v);
      const long long alpha = cross(s, v) * d, beta = cross(u, s) * d;
      const long long eps = cross(w, v) * d, delta = cross(u, w) * d;
      // s and w sit on opposite arcs of the circle cut at u and v exactly
      // when their coordinate products have opposite signs.
      if (alpha == 0 || beta == 0 || (alpha * beta > 0) == (eps * delta > 0)) continue;
      chosen = k;
      replacement = make_slope(eps * u.p - delta * v.p, eps * u.q - delta * v.q);
      break;
    }
    if (chosen < 0) throw Error(ErrorKind::NoneFound, "Farey walk lost its way to " + s.str());
    cur[chosen] = replacement;
    path.flips.push_back(chosen);
  }
  return path;
}

ArcId FareyModel::arc(const Slope& s) {
  const Slope n = make_slope(s.p, s.q);
  const FlipPath path = path_to(n);
  const Frame f = space_->extend(space_->base_frame(), path);
  int edge = -1;
  // The walk ends with n on the edge flipped last (or on a base edge).
  if (path.flips.empty()) {
    for (int k = 0; k < 3; ++k) {
      if (kBase[k] == n) edge = k;
    }
  } else {
    edge = path.flips.back();
  }
  const ArcId a = space_->edge_arc(f, edge);
  slopes_.emplace(a, n);
  return a;
}

std::optional<Slope> FareyModel::slope_of(ArcId a) const {
  if (auto it = slopes_.find(a); it != slopes_.end()) return it->second;
  return std::nullopt;
}

namespace {

FiniteComplex complex_from_triangles(FareyModel& m, const std::set<Slope>& vertices,
                                     const std::set<std::array<Slope, 3>>& triangles, bool with_edges) {
  std::vector<ArcId> ids;
  std::map<Slope, ArcId> id_of;
  for (const Slope& s : vertices) {
    const ArcId a = m.arc(s);
    ids.push_back(a);
    id_of[s] = a;
  }
  std::vector<std::vector<ArcId>> simplices;
  for (const auto& t : triangles) simplices.push_back({id_of.at(t[0]), id_of.at(t[1]), id_of.at(t[2])});
  if (with_edges) {
    const std::vector<Slope> v(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (farey_det(v[i], v[j]) == 1) simplices.push_back({id_of.at(v[i]), id_of.at(v[j])});
      }
    }
  }
  return FiniteComplex(m.space(), ids, simplices);
}

std::array<Slope, 3> sorted_triangle(Slope a, Slope b, Slope c) {
  std::array<Slope, 3> t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

} // namespace

FiniteComplex farey_truncation(FareyModel& m, long long height) {
  if (height < 1) throw Error(ErrorKind::OutOfRange, "height must be positive");
  std::set<Slope> v{{1, 0}};
  for (long long q = 1; q <= height; ++q) {
    for (long long p = -height; p <= height; ++p) {
      if (std::gcd(p, q) == 1) v.insert({p, q});
    }
  }
  std::set<std::array<Slope, 3>> triangles;
  for (const Slope& u : v) {
    for (const Slope& w : v) {
      if (!(u < w) || farey_det(u, w) != 1) continue;
      for (int sign : {1, -1}) {
        const Slope x = make_slope(u.p + sign * w.p, u.q + sign * w.q);
        if (v.count(x)) triangles.insert(sorted_triangle(u, w, x));
      }
    }
  }
  return complex_from_triangles(m, v, triangles, true);
}

FiniteComplex farey_rigid_set(FareyModel& m) {
  std::set<Slope> v{{1, 0}};
  std::set<std::array<Slope, 3>> triangles;
  for (long long n = -2; n <= 1; ++n) {
    v.insert({n, 1});
    v.insert({n + 1, 1});
    triangles.insert(sorted_triangle({1, 0}, {n, 1}, {n + 1, 1}));
  }
  return complex_from_triangles(m, v, triangles, false);
}

RigidSetReport farey_rigid_report(FareyModel& m) {
  auto set = std::make_shared<const FiniteComplex>(farey_rigid_set(m));
  RigidSetReport report{set, m.space()->base(), {}, {}};
  const auto base_arcs = m.space()->frame_arcs(m.space()->base_frame());
  for (ArcId a : set->vertices()) {
    report.paths[a] = m.path_to(*m.slope_of(a));
    const bool in_base = std::find(base_arcs.begin(), base_arcs.end(), a) != base_arcs.end();
    report.provenance[a] = in_base ? "F" : "X-closure";
  }
  return report;
}

FiniteComplex farey_exhaustion_step(FareyModel& m, const FiniteComplex& prev) {
  std::set<Slope> v;
  std::set<std::array<Slope, 3>> triangles;
  auto slope = [&](ArcId a) {
    auto s = m.slope_of(a);
    if (!s) throw Error(ErrorKind::UnknownVertex, "arc " + std::to_string(a) + " is not a known slope");
    return *s;
  };
  for (ArcId a : prev.vertices()) v.insert(slope(a));
  std::vector<std::vector<Slope>> others;
  for (const auto& simplex : prev.simplex_arcs()) {
    std::vector<Slope> s;
    for (ArcId a : simplex) s.push_back(slope(a));
    if (s.size() != 3) {
      others.push_back(s);
      continue;
    }
    triangles.insert(sorted_triangle(s[0], s[1], s[2]));
  }
  const auto old = triangles;
  for (const auto& t : old) {
    for (int k = 0; k < 3; ++k) {
      const Slope& u = t[(k + 1) % 3];
      const Slope& w = t[(k + 2) % 3];
      for (int sign : {1, -1}) {
        const Slope x = make_slope(u.p + sign * w.p, u.q + sign * w.q);
        v.insert(x);
        triangles.insert(sorted_triangle(u, w, x));
      }
    }
  }
  FiniteComplex grown = complex_from_triangles(m, v, triangles, false);
  if (others.empty()) return grown;
  auto simplices = grown.simplex_arcs();
  for (const auto& s : others) {
    std::vector<ArcId> ids;
    for (const Slope& x : s) ids.push_back(m.arc(x));
    simplices.push_back(ids);
  }
  return FiniteComplex(m.space(), grown.vertices(), simplices);
}

SimplicialMap s03_embedding(FareyModel& m, long long height) {
  auto sphere = std::make_shared<ArcSpace>(Surface{0, 3});
  std::vector<ArcId> arcs;
  for (const auto& a : enumerate_arcs(Surface{0, 3}, 4)) arcs.push_back(sphere->intern(a.coords));
  auto source = std::make_shared<const FiniteComplex>(build_complex(sphere, arcs));
  auto target = std::make_shared<const FiniteComplex>(farey_truncation(m, height));
  MapSearchOptions opts;
  opts.injective_only = true;
  opts.limit = 1;
  auto maps = collect_locally_injective_maps(source, target, opts);
  if (maps.empty()) throw Error(ErrorKind::NoneFound, "no embedding within height " + std::to_string(height));
  return maps.front();
}

} // namespace rigid
