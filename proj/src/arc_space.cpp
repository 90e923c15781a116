#include "rigid/arc_space.h"

#include <algorithm>
#include <atomic>
#include <functional>
#include <queue>
#include <unordered_set>

#include "rigid/error.h"

namespace rigid {

Triangulation apply_path(const Triangulation& t, const FlipPath& path) {
  Triangulation out = t;
  for (int e : path.flips) out = out.flip(e);
  return out;
}

Coords transport_along(const Triangulation& t, const Coords& c, const FlipPath& path) {
  Triangulation cur = t;
  Coords out = c;
  for (int e : path.flips) {
    out = transport(cur, out, e);
    cur = cur.flip(e);
  }
  return out;
}

namespace {

std::atomic<long long> g_fallbacks{0};

using Goal = std::function<bool(const Coords&)>;

struct SearchState {
  Triangulation tri;
  Coords coords;
  std::vector<int> flips;
};

// Bounded breadth-first search for any flip sequence that lowers the sum or
// reaches the goal.
std::optional<std::vector<int>> fallback_search(const Triangulation& t, const Coords& c, const Goal& goal,
                                                const std::set<int>& frozen, int depth) {
  const long long start = coordinate_sum(c);
  std::unordered_set<std::size_t> seen;
  seen.insert(t.hash() ^ std::hash<std::string>{}(std::string(reinterpret_cast<const char*>(c.data()),
                                                               c.size() * sizeof(long long))));
  std::queue<SearchState> q;
  q.push({t, c, {}});
  while (!q.empty()) {
    SearchState s = std::move(q.front());
    q.pop();
    if (static_cast<int>(s.flips.size()) >= depth) continue;
    for (int e = 0; e < s.tri.edge_count(); ++e) {
      if (frozen.count(e) || !s.tri.is_flippable(e)) continue;
      SearchState next{s.tri.flip(e), transport(s.tri, s.coords, e), s.flips};
      next.flips.push_back(e);
      if (goal(next.coords) || coordinate_sum(next.coords) < start) return next.flips;
      const std::size_t key =
          next.tri.hash() ^ std::hash<std::string>{}(std::string(reinterpret_cast<const char*>(next.coords.data()),
                                                                 next.coords.size() * sizeof(long long)));
      if (seen.insert(key).second) q.push(std::move(next));
    }
  }
  return std::nullopt;
}

FlipPath descend(const Triangulation& t0, const Coords& c0, const Goal& goal, const DescentOptions& opts) {
  Triangulation t = t0;
  Coords c = c0;
  FlipPath path;
  while (!goal(c)) {
    int best = -1;
    long long best_sum = coordinate_sum(c);
    Coords best_coords;
    for (int e = 0; e < t.edge_count(); ++e) {
      if (c[e] <= 0 || opts.frozen.count(e) || !t.is_flippable(e)) continue;
      Coords n = transport(t, c, e);
      const long long s = coordinate_sum(n);
      if (s < best_sum) {
        best = e;
        best_sum = s;
        best_coords = std::move(n);
      }
    }
    if (best >= 0) {
      t = t.flip(best);
      c = std::move(best_coords);
      path.flips.push_back(best);
      continue;
    }
    ++g_fallbacks;
    auto more = fallback_search(t, c, goal, opts.frozen, opts.fallback_depth);
    if (!more) throw Error(ErrorKind::NoneFound, "flip descent stalled");
    for (int e : *more) {
      c = transport(t, c, e);
      t = t.flip(e);
      path.flips.push_back(e);
    }
  }
  return path;
}

} // namespace

long long descent_fallback_count() { return g_fallbacks.load(); }

FlipPath flip_path_to_contain(const Triangulation& t, const Coords& c, const DescentOptions& opts) {
  trace_arc(t, c);
  return descend(t, c, [](const Coords& x) { return edge_index(x).has_value(); }, opts);
}

FlipPath flip_path_to_single_crossing(const Triangulation& t, const Coords& c, int edge, const DescentOptions& opts) {
  trace_arc(t, c);
  if (c[edge] != 1) throw Error(ErrorKind::NotIntersectionOne, "arc does not cross the edge exactly once");
  DescentOptions o = opts;
  o.frozen.insert(edge);
  return descend(t, c, [edge](const Coords& x) { return x[edge] == 1 && coordinate_sum(x) == 1; }, o);
}

long long intersection_number(const Triangulation& t, const Coords& a, const Coords& b) {
  trace_arc(t, b);
  const FlipPath path = flip_path_to_contain(t, a);
  const Coords a_here = transport_along(t, a, path);
  const Coords b_here = transport_along(t, b, path);
  if (edge_index(b_here)) return 0;
  return b_here[*edge_index(a_here)];
}

std::string base_reference(const Surface& s) { return s.name() + "/base"; }

std::vector<Coords> enumerate_arcs(const Triangulation& t, long long bound) {
  const int E = t.edge_count();
  std::vector<Coords> out;
  for (int e = 0; e < E; ++e) out.push_back(edge_arc(t, e));

  // Triangles become checkable once their largest edge id is assigned.
  std::vector<std::vector<int>> closes(E);
  for (int tri = 0; tri < t.triangle_count(); ++tri) {
    int m = 0;
    for (const Side& s : t.triangles()[tri]) m = std::max(m, s.edge);
    closes[m].push_back(tri);
  }
  Coords c(E, 0);
  std::vector<Coords> found;
  std::function<void(int, long long)> rec = [&](int k, long long left) {
    if (k == E) {
      if (left == bound) return;
      if (is_valid_arc(t, c)) found.push_back(c);
      return;
    }
    for (long long v = 0; v <= left; ++v) {
      c[k] = v;
      bool ok = true;
      for (int tri : closes[k]) {
        const auto& sides = t.triangles()[tri];
        if (!decompose_triangle(c[sides[0].edge], c[sides[1].edge], c[sides[2].edge])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(k + 1, left - v);
    }
    c[k] = 0;
  };
  if (bound > 0) rec(0, bound);
  std::sort(found.begin(), found.end(), [](const Coords& a, const Coords& b) {
    const long long sa = coordinate_sum(a), sb = coordinate_sum(b);
    return sa != sb ? sa < sb : a < b;
  });
  out.insert(out.end(), found.begin(), found.end());
  return out;
}

std::vector<ArcCoordinates> enumerate_arcs(const Surface& s, long long bound) {
  const SurfaceInvariants inv = surface_invariants(s);
  if (inv.empty_complex) throw Error(ErrorKind::EmptyComplex, s.name() + " carries no essential arcs");
  if (bound <= 0) throw Error(ErrorKind::OutOfRange, "bound must be positive");
  if (!inv.has_triangulations) return {ArcCoordinates{s.name(), {}}};
  const Triangulation t = base_triangulation(s);
  std::vector<ArcCoordinates> out;
  for (Coords& c : enumerate_arcs(t, bound)) out.push_back({base_reference(s), std::move(c)});
  return out;
}

ArcSpace::ArcSpace(const Surface& s) : ArcSpace(base_triangulation(s), base_reference(s)) {}

ArcSpace::ArcSpace(Triangulation base, std::string reference) : base_(std::move(base)), reference_(std::move(reference)) {}

ArcId ArcSpace::intern(const Coords& base_coords) {
  if (auto it = index_.find(base_coords); it != index_.end()) return it->second;
  trace_arc(base_, base_coords);
  const ArcId id = static_cast<ArcId>(arcs_.size());
  arcs_.push_back(Entry{base_coords, nullptr, {}, -1});
  index_.emplace(base_coords, id);
  return id;
}

std::optional<ArcId> ArcSpace::find(const Coords& base_coords) const {
  if (auto it = index_.find(base_coords); it != index_.end()) return it->second;
  return std::nullopt;
}

Coords ArcSpace::to_frame(const Coords& base_coords, const Frame& f) const {
  return transport_along(base_, base_coords, f.path);
}

Coords ArcSpace::to_base(const Coords& frame_coords, const Frame& f) const {
  FlipPath back{std::vector<int>(f.path.flips.rbegin(), f.path.flips.rend())};
  return transport_along(f.tri, frame_coords, back);
}

Frame ArcSpace::flip(const Frame& f, int e) const {
  Frame out{f.tri.flip(e), f.path};
  out.path.flips.push_back(e);
  return out;
}

Frame ArcSpace::extend(const Frame& f, const FlipPath& more) const {
  Frame out = f;
  for (int e : more.flips) out = flip(out, e);
  return out;
}

ArcId ArcSpace::edge_arc(const Frame& f, int e) { return intern(to_base(rigid::edge_arc(f.tri, e), f)); }

std::vector<ArcId> ArcSpace::frame_arcs(const Frame& f) {
  std::vector<ArcId> out;
  for (int e = 0; e < f.tri.edge_count(); ++e) out.push_back(edge_arc(f, e));
  return out;
}

std::optional<int> ArcSpace::edge_of(const Frame& f, ArcId a) const {
  const Coords here = to_frame(coords(a), f);
  return edge_index(here);
}

const Frame& ArcSpace::frame_containing(ArcId a) {
  Entry& entry = arcs_.at(a);
  if (!entry.frame) {
    const FlipPath path = flip_path_to_contain(base_, entry.coords);
    Triangulation cur = base_;
    Coords c = entry.coords;
    entry.trail.clear();
    for (int e : path.flips) {
      entry.trail.push_back(cur);
      c = transport(cur, c, e);
      cur = cur.flip(e);
    }
    entry.edge = *edge_index(c);
    entry.frame = std::make_unique<Frame>(Frame{std::move(cur), path});
  }
  return *entry.frame;
}

int ArcSpace::edge_in_containing_frame(ArcId a) {
  frame_containing(a);
  return arcs_.at(a).edge;
}

long long ArcSpace::intersection(ArcId a, ArcId b) {
  if (a == b) return 0;
  if (a > b) std::swap(a, b);
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  if (auto it = meets_.find(key); it != meets_.end()) return it->second;
  frame_containing(a);
  const Entry& ea = arcs_[a];
  Coords c = arcs_[b].coords;
  for (std::size_t k = 0; k < ea.frame->path.flips.size(); ++k) c = transport(ea.trail[k], c, ea.frame->path.flips[k]);
  const long long value = edge_index(c) ? 0 : c[ea.edge];
  meets_.emplace(key, value);
  return value;
}

void ArcSpace::prepare(const std::vector<ArcId>& arcs) {
  for (ArcId a : arcs) frame_containing(a);
}

std::vector<Frame> ArcSpace::completions(const std::vector<ArcId>& arcs) {
  std::vector<ArcId> sorted = arcs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (!disjoint(sorted[i], sorted[j]))
        throw Error(ErrorKind::NotDisjoint,
                    "arcs " + std::to_string(sorted[i]) + " and " + std::to_string(sorted[j]) + " intersect");
    }
  }
  if (static_cast<int>(sorted.size()) > base_.edge_count())
    throw Error(ErrorKind::NotDisjoint, "more arcs than a triangulation holds");

  Frame f = base_frame();
  DescentOptions opts;
  for (ArcId a : sorted) {
    const Coords here = to_frame(coords(a), f);
    if (auto e = edge_index(here)) {
      opts.frozen.insert(*e);
      continue;
    }
    f = extend(f, flip_path_to_contain(f.tri, here, opts));
    opts.frozen.insert(*edge_of(f, a));
  }
  std::vector<Frame> out{f};
  if (static_cast<int>(sorted.size()) == base_.edge_count() - 1) {
    for (int e = 0; e < f.tri.edge_count(); ++e) {
      if (!opts.frozen.count(e) && f.tri.is_flippable(e)) out.push_back(flip(f, e));
    }
  }
  return out;
}

} // namespace rigid
