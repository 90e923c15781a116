#include "rigid/triangulation.h"

#include <numeric>
#include <queue>
#include <string>

#include "rigid/error.h"

namespace rigid {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

TriangleSides reversed(const TriangleSides& t) {
  return {Side{t[2].edge, -t[2].dir}, Side{t[1].edge, -t[1].dir}, Side{t[0].edge, -t[0].dir}};
}

} // namespace

Triangulation::Triangulation(int edge_count, std::vector<TriangleSides> triangles)
    : edge_count_(edge_count), triangles_(std::move(triangles)) {
  if (edge_count_ <= 0 || triangles_.empty()) throw Error(ErrorKind::Malformed, "empty triangulation");

  std::vector<std::vector<SideRef>> uses(edge_count_);
  for (int t = 0; t < triangle_count(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const Side& s = triangles_[t][k];
      if (s.edge < 0 || s.edge >= edge_count_)
        throw Error(ErrorKind::Malformed, "edge index " + std::to_string(s.edge) + " out of range");
      if (s.dir != 1 && s.dir != -1) throw Error(ErrorKind::Malformed, "direction must be +1 or -1");
      uses[s.edge].push_back({t, k});
    }
  }
  for (int e = 0; e < edge_count_; ++e) {
    if (uses[e].size() != 2)
      throw Error(ErrorKind::EdgeUsedNotTwice,
                  "edge " + std::to_string(e) + " used " + std::to_string(uses[e].size()) + " times");
  }

  // Orientation signs: s_t * dir1 == -s_u * dir2 across every edge.
  orientation_.assign(triangle_count(), 0);
  orientation_[0] = 1;
  std::queue<int> pending;
  pending.push(0);
  while (!pending.empty()) {
    const int t = pending.front();
    pending.pop();
    for (int k = 0; k < 3; ++k) {
      const Side& s = triangles_[t][k];
      for (const SideRef& other : uses[s.edge]) {
        if (other == SideRef{t, k}) continue;
        const int want = -orientation_[t] * s.dir * side(other).dir;
        if (orientation_[other.tri] == 0) {
          orientation_[other.tri] = want;
          pending.push(other.tri);
        } else if (orientation_[other.tri] != want) {
          throw Error(ErrorKind::NonOrientable, "inconsistent orientation across edge " + std::to_string(s.edge));
        }
      }
    }
  }
  for (int t = 0; t < triangle_count(); ++t) {
    if (orientation_[t] == 0) throw Error(ErrorKind::Disconnected, "triangle " + std::to_string(t) + " unreachable");
    if (orientation_[t] < 0) triangles_[t] = reversed(triangles_[t]);
  }

  derive();

  const int chi = vertex_count_ - edge_count_ + triangle_count();
  if (chi > 2 || (chi % 2) != 0)
    throw Error(ErrorKind::NonIntegerGenus, "Euler characteristic " + std::to_string(chi));
  surface_ = Surface{(2 - chi) / 2, vertex_count_};
}

void Triangulation::derive() {
  edge_sides_.assign(edge_count_, {SideRef{-1, -1}, SideRef{-1, -1}});
  for (int t = 0; t < triangle_count(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const Side& s = triangles_[t][k];
      edge_sides_[s.edge][s.dir > 0 ? 0 : 1] = SideRef{t, k};
    }
  }

  const int corners = 3 * triangle_count();
  std::vector<int> parent(corners);
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](int a, int b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (int e = 0; e < edge_count_; ++e) {
    const SideRef plus = edge_sides_[e][0];
    const SideRef minus = edge_sides_[e][1];
    // plus runs tail -> head from corner slot to slot+1; minus runs head -> tail.
    unite(3 * plus.tri + plus.slot, 3 * minus.tri + (minus.slot + 1) % 3);
    unite(3 * plus.tri + (plus.slot + 1) % 3, 3 * minus.tri + minus.slot);
  }
  corner_vertex_.assign(corners, -1);
  std::vector<int> class_of_root(corners, -1);
  vertex_count_ = 0;
  for (int c = 0; c < corners; ++c) {
    const int r = find_root(parent, c);
    if (class_of_root[r] < 0) class_of_root[r] = vertex_count_++;
    corner_vertex_[c] = class_of_root[r];
  }
}

SideRef Triangulation::glued(SideRef r) const {
  const auto& pair = edge_sides_[side(r).edge];
  return pair[0] == r ? pair[1] : pair[0];
}

int Triangulation::edge_tail(int e) const {
  const SideRef p = edge_sides_[e][0];
  return corner_vertex(p.tri, p.slot);
}

int Triangulation::edge_head(int e) const {
  const SideRef p = edge_sides_[e][0];
  return corner_vertex(p.tri, (p.slot + 1) % 3);
}

bool Triangulation::is_flippable(int e) const {
  if (e < 0 || e >= edge_count_) throw Error(ErrorKind::OutOfRange, "edge " + std::to_string(e));
  return edge_sides_[e][0].tri != edge_sides_[e][1].tri;
}

Triangulation Triangulation::flip(int e) const {
  if (!is_flippable(e))
    throw Error(ErrorKind::NotFlippable, "edge " + std::to_string(e) + " borders one triangle on both sides");
  const SideRef plus = edge_sides_[e][0];
  const SideRef minus = edge_sides_[e][1];
  const int i = plus.tri, r = plus.slot;
  const int j = minus.tri, s = minus.slot;
  const Side x1 = triangles_[i][(r + 1) % 3], y1 = triangles_[i][(r + 2) % 3];
  const Side x2 = triangles_[j][(s + 1) % 3], y2 = triangles_[j][(s + 2) % 3];

  // The side of e with dir +1 moves to the other triangle, and which pair of
  // outer sides a triangle receives alternates with it; this makes the flip an
  // involution on labelled triangulations.
  Triangulation out = *this;
  TriangleSides& ti = out.triangles_[i];
  TriangleSides& tj = out.triangles_[j];
  ti[r] = Side{e, -1};
  tj[s] = Side{e, 1};
  if (i < j) {
    ti[(r + 1) % 3] = y1;
    ti[(r + 2) % 3] = x2;
    tj[(s + 1) % 3] = y2;
    tj[(s + 2) % 3] = x1;
  } else {
    ti[(r + 1) % 3] = y2;
    ti[(r + 2) % 3] = x1;
    tj[(s + 1) % 3] = y1;
    tj[(s + 2) % 3] = x2;
  }
  out.derive();
  return out;
}

std::vector<TriangleInfo> Triangulation::classify_triangles() const {
  std::vector<TriangleInfo> out;
  out.reserve(triangles_.size());
  for (int t = 0; t < triangle_count(); ++t) {
    const auto& tri = triangles_[t];
    TriangleInfo info{t, true, -1, -1};
    for (int k = 0; k < 3; ++k) {
      if (tri[k].edge == tri[(k + 1) % 3].edge) {
        info.embedded = false;
        info.inner_edge = tri[k].edge;
        info.outer_edge = tri[(k + 2) % 3].edge;
      }
    }
    out.push_back(info);
  }
  return out;
}

std::array<int, 3> Triangulation::neighbours(int tri) const {
  std::array<int, 3> out{};
  for (int k = 0; k < 3; ++k) out[k] = glued(SideRef{tri, k}).tri;
  return out;
}

std::size_t Triangulation::hash() const {
  std::size_t h = static_cast<std::size_t>(edge_count_) * 0x9e3779b97f4a7c15ULL;
  for (const auto& t : triangles_) {
    for (const Side& s : t) {
      h ^= static_cast<std::size_t>(s.edge * 2 + (s.dir > 0 ? 1 : 0)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  }
  return h;
}

Surface validate(const Triangulation& t) { return t.surface(); }

namespace {

std::vector<TriangleSides> genus_polygon(int g) {
  const int sides = 4 * g;
  auto polygon_side = [](int j) {
    const int block = j / 4, pos = j % 4;
    switch (pos) {
    case 0: return Side{2 * block, 1};
    case 1: return Side{2 * block + 1, 1};
    case 2: return Side{2 * block, -1};
    default: return Side{2 * block + 1, -1};
    }
  };
  auto diagonal = [g](int k) { return 2 * g + k - 2; };
  std::vector<TriangleSides> tris;
  for (int k = 1; k <= sides - 2; ++k) {
    const Side first = k == 1 ? polygon_side(0) : Side{diagonal(k), 1};
    const Side last = k + 1 == sides - 1 ? polygon_side(sides - 1) : Side{diagonal(k + 1), -1};
    tris.push_back({first, polygon_side(k), last});
  }
  return tris;
}

} // namespace

Triangulation base_triangulation(const Surface& s) {
  const SurfaceInvariants inv = surface_invariants(s);
  if (!inv.has_triangulations) throw Error(ErrorKind::InvalidSurface, s.name() + " has no triangulations");

  std::vector<TriangleSides> tris;
  int edges = 0, points = 0;
  if (s.genus == 0) {
    tris = {TriangleSides{Side{0, 1}, Side{1, 1}, Side{2, -1}}, TriangleSides{Side{2, 1}, Side{1, -1}, Side{0, -1}}};
    edges = 3;
    points = 3;
  } else {
    tris = genus_polygon(s.genus);
    edges = 6 * s.genus - 3;
    points = 1;
  }
  for (; points < s.marked_points; ++points) {
    const TriangleSides t0 = tris[0];
    const int ex = edges, ey = edges + 1, ez = edges + 2;
    tris[0] = {t0[0], Side{ey, 1}, Side{ex, -1}};
    tris.push_back({t0[1], Side{ez, 1}, Side{ey, -1}});
    tris.push_back({t0[2], Side{ex, 1}, Side{ez, -1}});
    edges += 3;
  }
  return Triangulation(edges, std::move(tris));
}

} // namespace rigid
