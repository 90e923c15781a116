#include "rigid/arc.h"

#include <numeric>

#include "rigid/error.h"

namespace rigid {

std::optional<TrianglePieces> decompose_triangle(long long n0, long long n1, long long n2) {
  const std::array<long long, 3> n{n0, n1, n2};
  if (n0 < 0 || n1 < 0 || n2 < 0) return std::nullopt;
  TrianglePieces p;
  for (int k = 0; k < 3; ++k) {
    const long long others = n[(k + 1) % 3] + n[(k + 2) % 3];
    if (n[k] > others) {
      p.terminal_corner = (k + 2) % 3;
      p.terminals = n[k] - others;
      p.corner[k] = n[(k + 2) % 3];
      p.corner[(k + 1) % 3] = n[(k + 1) % 3];
      p.corner[(k + 2) % 3] = 0;
      // More than two arc ends in one triangle cannot come from one arc.
      if (p.terminals > 2) return std::nullopt;
      return p;
    }
  }
  if ((n0 + n1 + n2) % 2 != 0) return std::nullopt;
  for (int k = 0; k < 3; ++k) p.corner[k] = (n[(k + 2) % 3] + n[k] - n[(k + 1) % 3]) / 2;
  return p;
}

Coords edge_arc(const Triangulation& t, int e) {
  if (e < 0 || e >= t.edge_count()) throw Error(ErrorKind::OutOfRange, "edge " + std::to_string(e));
  Coords c(t.edge_count(), 0);
  c[e] = -1;
  return c;
}

std::optional<int> edge_index(const Coords& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0) return static_cast<int>(i);
  }
  return std::nullopt;
}

long long coordinate_sum(const Coords& c) { return std::accumulate(c.begin(), c.end(), 0LL); }

Coords unit_coords(const Triangulation& t, std::initializer_list<int> edges) {
  Coords c(t.edge_count(), 0);
  for (int e : edges) c[e] += 1;
  return c;
}

namespace {

long long side_count(const Triangulation& t, const Coords& c, int tri, int slot) { return c[t.side(tri, slot).edge]; }

std::vector<TrianglePieces> decompose_all(const Triangulation& t, const Coords& c) {
  std::vector<TrianglePieces> out;
  out.reserve(t.triangle_count());
  for (int tri = 0; tri < t.triangle_count(); ++tri) {
    auto p = decompose_triangle(side_count(t, c, tri, 0), side_count(t, c, tri, 1), side_count(t, c, tri, 2));
    if (!p) throw Error(ErrorKind::InvalidArc, "triangle " + std::to_string(tri) + " has no normal decomposition");
    out.push_back(*p);
  }
  return out;
}

} // namespace

ArcTrace trace_arc(const Triangulation& t, const Coords& c) {
  if (static_cast<int>(c.size()) != t.edge_count()) throw Error(ErrorKind::InvalidArc, "coordinate length mismatch");
  if (auto e = edge_index(c)) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (static_cast<int>(i) != *e && c[i] != 0) throw Error(ErrorKind::InvalidArc, "edge sentinel with extra crossings");
    }
    if (c[*e] != -1) throw Error(ErrorKind::InvalidArc, "negative coordinate other than -1");
    return ArcTrace{t.edge_tail(*e), t.edge_head(*e), {}};
  }
  const long long total = coordinate_sum(c);
  if (total == 0) throw Error(ErrorKind::InvalidArc, "zero vector");

  const std::vector<TrianglePieces> pieces = decompose_all(t, c);
  long long terminal_total = 0;
  int start_tri = -1;
  for (int tri = 0; tri < t.triangle_count(); ++tri) {
    terminal_total += pieces[tri].terminals;
    if (start_tri < 0 && pieces[tri].terminals > 0) start_tri = tri;
  }
  if (terminal_total != 2) throw Error(ErrorKind::InvalidArc, "arc must have exactly two ends");

  ArcTrace trace;
  const TrianglePieces& sp = pieces[start_tri];
  trace.start_vertex = t.corner_vertex(start_tri, sp.terminal_corner);
  int tri = start_tri;
  int slot = (sp.terminal_corner + 1) % 3; // side opposite the terminal corner
  long long pos = sp.corner[slot];

  for (long long steps = 0; steps <= total; ++steps) {
    const Side& s = t.side(tri, slot);
    const long long n = c[s.edge];
    const long long along = s.dir > 0 ? pos : n - 1 - pos;
    trace.crossed_edges.push_back(s.edge);
    const SideRef other = t.glued({tri, slot});
    const Side& os = t.side(other);
    tri = other.tri;
    slot = other.slot;
    pos = os.dir > 0 ? along : n - 1 - along;

    const TrianglePieces& p = pieces[tri];
    const long long before = p.corner[slot];
    const long long middle = p.terminal_corner == (slot + 2) % 3 ? p.terminals : 0;
    if (pos < before) {
      const int exit = (slot + 2) % 3;
      pos = side_count(t, c, tri, exit) - 1 - pos;
      slot = exit;
    } else if (pos < before + middle) {
      trace.end_vertex = t.corner_vertex(tri, (slot + 2) % 3);
      if (static_cast<long long>(trace.crossed_edges.size()) != total)
        throw Error(ErrorKind::InvalidArc, "coordinates contain closed components");
      return trace;
    } else {
      const int exit = (slot + 1) % 3;
      pos = n - 1 - pos;
      slot = exit;
    }
  }
  throw Error(ErrorKind::InvalidArc, "trace did not terminate");
}

bool is_valid_arc(const Triangulation& t, const Coords& c) {
  try {
    trace_arc(t, c);
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace {

long long overlap(long long a0, long long a1, long long b0, long long b1) {
  const long long lo = std::max(a0, b0), hi = std::min(a1, b1);
  return hi > lo ? hi - lo : 0;
}

} // namespace

Coords transport(const Triangulation& t, const Coords& c, int e) {
  if (!t.is_flippable(e))
    throw Error(ErrorKind::NotFlippable, "edge " + std::to_string(e) + " borders one triangle on both sides");
  if (auto k = edge_index(c)) {
    if (*k != e) return c;
    Coords out(c.size(), 0);
    out[e] = 1;
    return out;
  }

  // Quadrilateral: the +1 side (i, r) runs A -> B with C opposite, the -1 side
  // (j, s) runs B -> A with D opposite. The new diagonal joins C and D and
  // separates the A corner from the B corner.
  const SideRef plus = t.edge_sides(e)[0];
  const SideRef minus = t.edge_sides(e)[1];
  const int r = plus.slot, s = minus.slot;
  auto pieces = [&](int tri) {
    auto p = decompose_triangle(side_count(t, c, tri, 0), side_count(t, c, tri, 1), side_count(t, c, tri, 2));
    if (!p) throw Error(ErrorKind::InvalidArc, "coordinates are not normal");
    return *p;
  };
  const TrianglePieces P = pieces(plus.tri);
  const TrianglePieces N = pieces(minus.tri);
  auto terminals_at = [](const TrianglePieces& p, int corner) { return p.terminal_corner == corner ? p.terminals : 0; };

  // Along e from A: pieces of P toward side y1 (A side), from C, toward x1.
  const long long p0 = P.corner[r];
  const long long p1 = terminals_at(P, (r + 2) % 3);
  const long long n_e = c[e];
  // Along e from A: pieces of N toward side x2 (A side), from D, toward y2.
  const long long q0 = N.corner[(s + 1) % 3];
  const long long q1 = terminals_at(N, (s + 2) % 3);

  if (overlap(p0, p0 + p1, q0, q0 + q1) > 0) {
    Coords out(c.size(), 0);
    out[e] = -1;
    return out;
  }
  long long crossings = overlap(0, p0, q0 + q1, n_e) + overlap(p0 + p1, n_e, 0, q0);
  crossings += P.corner[(r + 2) % 3] + terminals_at(P, r) + terminals_at(P, (r + 1) % 3);
  crossings += N.corner[(s + 2) % 3] + terminals_at(N, s) + terminals_at(N, (s + 1) % 3);
  Coords out = c;
  out[e] = crossings;
  return out;
}

} // namespace rigid
