#include "rigid/isomorphism.h"

#include <optional>
#include <queue>

#include "rigid/error.h"

namespace rigid {

namespace {

// Extend triangle 0 -> (image, rotation) along gluings; nullopt on conflict.
std::optional<CombinatorialIsomorphism> grow(const Triangulation& src, const Triangulation& dst, int image,
                                             int rotation) {
  const int F = src.triangle_count();
  CombinatorialIsomorphism h;
  h.triangle_map.assign(F, -1);
  h.slot_map.assign(F, {-1, -1, -1});
  h.edge_map.assign(src.edge_count(), -1);
  h.edge_sign.assign(src.edge_count(), 0);
  std::vector<int> used(F, 0);
  std::vector<int> rot(F, 0);

  auto place = [&](int t, int img, int r, std::queue<int>& q) {
    if (h.triangle_map[t] >= 0) return h.triangle_map[t] == img && rot[t] == r;
    if (used[img]) return false;
    used[img] = 1;
    h.triangle_map[t] = img;
    rot[t] = r;
    for (int k = 0; k < 3; ++k) h.slot_map[t][k] = (k + r) % 3;
    q.push(t);
    return true;
  };

  std::queue<int> q;
  place(0, image, rotation, q);
  while (!q.empty()) {
    const int t = q.front();
    q.pop();
    for (int k = 0; k < 3; ++k) {
      const SideRef from{t, k};
      const SideRef to{h.triangle_map[t], h.slot_map[t][k]};
      const Side& a = src.side(from);
      const Side& b = dst.side(to);
      const int sign = a.dir * b.dir;
      if (h.edge_map[a.edge] < 0) {
        h.edge_map[a.edge] = b.edge;
        h.edge_sign[a.edge] = sign;
      } else if (h.edge_map[a.edge] != b.edge || h.edge_sign[a.edge] != sign) {
        return std::nullopt;
      }
      const SideRef nf = src.glued(from);
      const SideRef nt = dst.glued(to);
      if (!place(nf.tri, nt.tri, ((nt.slot - nf.slot) % 3 + 3) % 3, q)) return std::nullopt;
    }
  }
  for (int t = 0; t < F; ++t) {
    if (h.triangle_map[t] < 0) return std::nullopt;
  }
  h.vertex_map.assign(src.vertex_count(), -1);
  for (int t = 0; t < F; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = src.corner_vertex(t, k);
      const int w = dst.corner_vertex(h.triangle_map[t], h.slot_map[t][k]);
      if (h.vertex_map[v] < 0) h.vertex_map[v] = w;
      else if (h.vertex_map[v] != w) return std::nullopt;
    }
  }
  h.orientation_preserving = true;
  return h;
}

bool same_counts(const Triangulation& a, const Triangulation& b) {
  return a.edge_count() == b.edge_count() && a.triangle_count() == b.triangle_count() &&
         a.vertex_count() == b.vertex_count();
}

} // namespace

Triangulation reflect(const Triangulation& t) {
  std::vector<TriangleSides> tris;
  tris.reserve(t.triangle_count());
  for (const auto& tri : t.triangles()) {
    tris.push_back({Side{tri[2].edge, -tri[2].dir}, Side{tri[1].edge, -tri[1].dir}, Side{tri[0].edge, -tri[0].dir}});
  }
  return Triangulation(t.edge_count(), std::move(tris));
}

std::vector<CombinatorialIsomorphism> preserving_isomorphisms(const Triangulation& source,
                                                              const Triangulation& target) {
  std::vector<CombinatorialIsomorphism> out;
  if (!same_counts(source, target)) return out;
  for (int img = 0; img < target.triangle_count(); ++img) {
    for (int r = 0; r < 3; ++r) {
      if (auto h = grow(source, target, img, r)) out.push_back(std::move(*h));
    }
  }
  return out;
}

std::vector<CombinatorialIsomorphism> isomorphisms(const Triangulation& source, const Triangulation& target) {
  std::vector<CombinatorialIsomorphism> out = preserving_isomorphisms(source, target);
  if (!same_counts(source, target)) return out;
  const Triangulation mirror = reflect(target);
  for (CombinatorialIsomorphism h : preserving_isomorphisms(source, mirror)) {
    for (auto& slots : h.slot_map) {
      for (int& m : slots) m = 2 - m;
    }
    for (int& s : h.edge_sign) s = -s;
    // Side k (corner k -> k+1) now runs backwards along target slot m, so
    // corner k lands on corner m+1.
    h.vertex_map.assign(source.vertex_count(), -1);
    for (int t = 0; t < source.triangle_count(); ++t) {
      for (int k = 0; k < 3; ++k) {
        h.vertex_map[source.corner_vertex(t, k)] = target.corner_vertex(h.triangle_map[t], (h.slot_map[t][k] + 1) % 3);
      }
    }
    h.orientation_preserving = false;
    out.push_back(std::move(h));
  }
  return out;
}

CombinatorialIsomorphism identity_isomorphism(const Triangulation& t) {
  CombinatorialIsomorphism h;
  for (int i = 0; i < t.triangle_count(); ++i) {
    h.triangle_map.push_back(i);
    h.slot_map.push_back({0, 1, 2});
  }
  for (int e = 0; e < t.edge_count(); ++e) {
    h.edge_map.push_back(e);
    h.edge_sign.push_back(1);
  }
  for (int v = 0; v < t.vertex_count(); ++v) h.vertex_map.push_back(v);
  return h;
}

CombinatorialIsomorphism compose(const CombinatorialIsomorphism& first, const CombinatorialIsomorphism& second) {
  CombinatorialIsomorphism h;
  const std::size_t F = first.triangle_map.size();
  h.triangle_map.resize(F);
  h.slot_map.resize(F);
  for (std::size_t t = 0; t < F; ++t) {
    const int mid = first.triangle_map[t];
    h.triangle_map[t] = second.triangle_map[mid];
    for (int k = 0; k < 3; ++k) h.slot_map[t][k] = second.slot_map[mid][first.slot_map[t][k]];
  }
  h.edge_map.resize(first.edge_map.size());
  h.edge_sign.resize(first.edge_map.size());
  for (std::size_t e = 0; e < first.edge_map.size(); ++e) {
    h.edge_map[e] = second.edge_map[first.edge_map[e]];
    h.edge_sign[e] = first.edge_sign[e] * second.edge_sign[first.edge_map[e]];
  }
  h.vertex_map.resize(first.vertex_map.size());
  for (std::size_t v = 0; v < first.vertex_map.size(); ++v) h.vertex_map[v] = second.vertex_map[first.vertex_map[v]];
  h.orientation_preserving = first.orientation_preserving == second.orientation_preserving;
  return h;
}

CombinatorialIsomorphism inverse(const CombinatorialIsomorphism& h) {
  CombinatorialIsomorphism g;
  const std::size_t F = h.triangle_map.size();
  g.triangle_map.resize(F);
  g.slot_map.resize(F);
  for (std::size_t t = 0; t < F; ++t) {
    const int img = h.triangle_map[t];
    g.triangle_map[img] = static_cast<int>(t);
    for (int k = 0; k < 3; ++k) g.slot_map[img][h.slot_map[t][k]] = k;
  }
  g.edge_map.resize(h.edge_map.size());
  g.edge_sign.resize(h.edge_map.size());
  for (std::size_t e = 0; e < h.edge_map.size(); ++e) {
    g.edge_map[h.edge_map[e]] = static_cast<int>(e);
    g.edge_sign[h.edge_map[e]] = h.edge_sign[e];
  }
  g.vertex_map.resize(h.vertex_map.size());
  for (std::size_t v = 0; v < h.vertex_map.size(); ++v) g.vertex_map[h.vertex_map[v]] = static_cast<int>(v);
  g.orientation_preserving = h.orientation_preserving;
  return g;
}

bool is_isomorphism(const CombinatorialIsomorphism& h, const Triangulation& source, const Triangulation& target) {
  if (!same_counts(source, target)) return false;
  if (static_cast<int>(h.triangle_map.size()) != source.triangle_count()) return false;
  std::vector<int> seen(target.triangle_count(), 0);
  for (int t = 0; t < source.triangle_count(); ++t) {
    const int img = h.triangle_map[t];
    if (img < 0 || img >= target.triangle_count() || seen[img]++) return false;
    for (int k = 0; k < 3; ++k) {
      const Side& a = source.side(t, k);
      const Side& b = target.side(img, h.slot_map[t][k]);
      if (h.edge_map[a.edge] != b.edge || h.edge_sign[a.edge] != a.dir * b.dir) return false;
      const SideRef ga = source.glued({t, k});
      const SideRef gb = target.glued({img, h.slot_map[t][k]});
      if (h.triangle_map[ga.tri] != gb.tri || h.slot_map[ga.tri][ga.slot] != gb.slot) return false;
    }
    // Cyclic order is kept or reversed as a whole.
    const auto& m = h.slot_map[t];
    const int step = ((m[1] - m[0]) % 3 + 3) % 3;
    if (step != (h.orientation_preserving ? 1 : 2) || ((m[2] - m[1]) % 3 + 3) % 3 != step) return false;
  }
  return true;
}

} // namespace rigid
