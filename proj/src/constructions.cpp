#include "rigid/constructions.h"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "rigid/error.h"

namespace rigid {

std::vector<ArcId> TaggedArcs::arcs() const {
  std::vector<ArcId> out;
  for (const auto& [a, t] : tags) out.push_back(a);
  return out;
}

RigidBuilder::RigidBuilder(std::shared_ptr<ArcSpace> space) : space_(std::move(space)) {}

void RigidBuilder::require_dimension() const {
  const Surface& s = space_->surface();
  if (surface_invariants(s).dim_arc_complex <= 2)
    throw Error(ErrorKind::Precondition, s.name() + " has an arc complex of dimension at most 2");
}

TaggedArcs RigidBuilder::B(ArcId a, ArcId b) {
  const auto key = std::minmax(a, b);
  if (auto it = b_memo_.find(key); it != b_memo_.end()) return it->second;
  if (space_->intersection(a, b) != 1)
    throw Error(ErrorKind::NotIntersectionOne,
                "arcs " + std::to_string(a) + " and " + std::to_string(b) + " do not meet exactly once");
  const Frame& fa = space_->frame_containing(a);
  const int ea = *space_->edge_of(fa, a);
  const Coords b_here = space_->to_frame(space_->coords(b), fa);
  const Frame ta = space_->extend(fa, flip_path_to_single_crossing(fa.tri, b_here, ea));
  const Frame tb = space_->flip(ta, ea);
  TaggedArcs out;
  for (ArcId x : space_->frame_arcs(ta)) out.add(x, "B");
  for (ArcId x : space_->frame_arcs(tb)) out.add(x, "B");
  if (!out.contains(b)) throw Error(ErrorKind::Precondition, "flip did not produce the second arc");
  b_memo_.emplace(key, out);
  return out;
}

namespace {

bool is_nice(const Triangulation& t, int tri) {
  const auto n = t.neighbours(tri);
  return n[0] != n[1] && n[1] != n[2] && n[0] != n[2] && n[0] != tri && n[1] != tri && n[2] != tri;
}

} // namespace

Frame RigidBuilder::nice_triangulation(const Frame& f, int tri, int depth_cap) {
  require_dimension();
  const auto infos = f.tri.classify_triangles();
  if (!infos.at(tri).embedded) throw Error(ErrorKind::Precondition, "triangle is not embedded");
  std::set<int> keep;
  for (const Side& s : f.tri.triangles()[tri]) keep.insert(s.edge);

  for (int cap : {depth_cap, 2 * depth_cap}) {
    std::unordered_set<Triangulation, TriangulationHash> seen{f.tri};
    std::deque<std::pair<Frame, int>> q{{f, 0}};
    while (!q.empty()) {
      auto [cur, depth] = std::move(q.front());
      q.pop_front();
      if (is_nice(cur.tri, tri)) return cur;
      if (depth == cap) continue;
      for (int e = 0; e < cur.tri.edge_count(); ++e) {
        if (keep.count(e) || !cur.tri.is_flippable(e)) continue;
        Frame next = space_->flip(cur, e);
        if (seen.insert(next.tri).second) q.emplace_back(std::move(next), depth + 1);
      }
    }
  }
  throw Error(ErrorKind::NoneFound, "no nice triangulation within the search depth");
}

ArcId RigidBuilder::corner_arc(const Frame& nice, int first, int second) {
  Coords c(nice.tri.edge_count(), 0);
  c[first] = 1;
  c[second] = 1;
  return space_->intern(space_->to_base(c, nice));
}

TaggedArcs RigidBuilder::C(const Frame& f, int tri) {
  const auto& sides = f.tri.triangles()[tri];
  std::vector<ArcId> key;
  for (const Side& s : sides) key.push_back(space_->edge_arc(f, s.edge));
  std::sort(key.begin(), key.end());
  if (auto it = c_memo_.find(key); it != c_memo_.end()) return it->second;

  const Frame nice = nice_triangulation(f, tri);
  const int ea = sides[0].edge, eb = sides[1].edge, ec = sides[2].edge;
  const ArcId a = space_->edge_arc(nice, ea), b = space_->edge_arc(nice, eb), c = space_->edge_arc(nice, ec);
  const ArcId d = corner_arc(nice, ea, eb);
  const ArcId e = corner_arc(nice, eb, ec);
  const ArcId g = corner_arc(nice, ea, ec);

  TaggedArcs out;
  for (ArcId x : space_->frame_arcs(nice)) out.add(x, "C");
  for (ArcId x : {d, e, g}) out.add(x, "C");
  for (auto [p, q] : {std::pair{a, d}, {a, g}, {b, d}, {b, e}, {c, e}, {c, g}}) out.merge(B(p, q));
  c_memo_.emplace(key, out);
  return out;
}

TaggedArcs RigidBuilder::D(const Frame& f, int tri) {
  require_dimension();
  const TriangleInfo info = f.tri.classify_triangles().at(tri);
  if (info.embedded) throw Error(ErrorKind::Precondition, "triangle is embedded");
  const int ia = info.inner_edge, ib = info.outer_edge;
  const ArcId a = space_->edge_arc(f, ia), b = space_->edge_arc(f, ib);

  // The triangle across the outer side is embedded with sides b, c, d.
  SideRef own{};
  for (int k = 0; k < 3; ++k) {
    if (f.tri.side(tri, k).edge == ib) own = {tri, k};
  }
  const int across = f.tri.glued(own).tri;
  if (!f.tri.classify_triangles().at(across).embedded)
    throw Error(ErrorKind::Precondition, "triangle across the outer side is not embedded");
  std::vector<int> cd;
  for (const Side& s : f.tri.triangles()[across]) {
    if (s.edge != ib) cd.push_back(s.edge);
  }
  // The far sides depend on the frame, not only on a and b.
  std::vector<ArcId> key{a, b, space_->edge_arc(f, cd[0]), space_->edge_arc(f, cd[1])};
  std::sort(key.begin() + 2, key.end());
  if (auto it = d_memo_.find(key); it != d_memo_.end()) return it->second;

  const Frame fb = space_->flip(f, ib);
  const ArcId e = space_->edge_arc(fb, ib);
  TaggedArcs out;
  for (ArcId x : {a, b, space_->edge_arc(f, cd[0]), space_->edge_arc(f, cd[1]), e}) out.add(x, "D");
  out.merge(B(b, e));
  // After the flip the two triangles on the new edge are (a, c, e), (a, d, e).
  for (const SideRef& r : fb.tri.edge_sides(ib)) out.merge(C(fb, r.tri));
  out.merge(C(f, across));
  d_memo_.emplace(key, out);
  return out;
}

TaggedArcs RigidBuilder::E(const Frame& f, int e) {
  const auto& sides = f.tri.edge_sides(e);
  const int t1 = sides[0].tri, t2 = sides[1].tri;
  const auto infos = f.tri.classify_triangles();
  if (t1 == t2 || !infos[t1].embedded || !infos[t2].embedded)
    throw Error(ErrorKind::NotAdjacent, "edge does not separate two distinct embedded triangles");

  const Frame fc = space_->flip(f, e);
  const ArcId c = space_->edge_arc(f, e);
  const ArcId g = space_->edge_arc(fc, e);
  TaggedArcs out;
  for (int t : {t1, t2}) {
    for (const Side& s : f.tri.triangles()[t]) out.add(space_->edge_arc(f, s.edge), "E");
  }
  out.add(g, "E");
  out.merge(B(c, g));
  out.merge(C(f, t1));
  out.merge(C(f, t2));
  // One new triangle on g has a side from each old triangle; it is
  // non-embedded exactly when those two sides coincide.
  const int k = fc.tri.edge_sides(e)[0].tri;
  out.merge(fc.tri.classify_triangles().at(k).embedded ? C(fc, k) : D(fc, k));
  return out;
}

TaggedArcs RigidBuilder::F(const Frame& f) {
  require_dimension();
  counts_ = {};
  TaggedArcs out;
  for (ArcId x : space_->frame_arcs(f)) out.add(x, "F");
  const auto infos = f.tri.classify_triangles();
  for (const TriangleInfo& info : infos) {
    if (info.embedded) {
      ++counts_.embedded;
      out.merge(C(f, info.index));
    } else {
      ++counts_.non_embedded;
      out.merge(D(f, info.index));
    }
  }
  for (int e = 0; e < f.tri.edge_count(); ++e) {
    const auto& s = f.tri.edge_sides(e);
    if (s[0].tri == s[1].tri) continue;
    ++counts_.shared_sides;
    if (!infos[s[0].tri].embedded || !infos[s[1].tri].embedded) {
      ++counts_.skipped_shared_sides;
      continue;
    }
    out.merge(E(f, e));
  }
  return out;
}

RigidSetReport make_report(const std::shared_ptr<ArcSpace>& space, const TaggedArcs& arcs,
                           const std::map<ArcId, FlipPath>& known_paths, const std::vector<ArcId>& path_targets,
                           const std::string& closure_tag) {
  TaggedArcs all = arcs;
  std::map<ArcId, FlipPath> paths = known_paths;
  for (ArcId y : path_targets) {
    const FlipPath& full = space->frame_containing(y).path;
    Frame cur = space->base_frame();
    auto visit = [&](const Frame& fr) {
      for (ArcId x : space->frame_arcs(fr)) {
        all.add(x, closure_tag);
        paths.emplace(x, fr.path);
      }
    };
    visit(cur);
    for (int e : full.flips) {
      cur = space->flip(cur, e);
      visit(cur);
    }
    paths[y] = full;
  }
  RigidSetReport report{std::make_shared<const FiniteComplex>(build_complex(space, all.arcs())),
                        space->base(), std::move(paths), all.tags};
  return report;
}

RigidSetReport RigidBuilder::X() {
  const TaggedArcs f = F(space_->base_frame());
  return make_report(space_, f, {}, f.arcs(), "X-closure");
}

RigidSetReport RigidBuilder::exhaustion_step(const RigidSetReport& prev, ArcId x) {
  TaggedArcs arcs;
  arcs.tags = prev.provenance;
  return make_report(space_, arcs, prev.paths, {x}, "X-closure");
}

FiniteComplex build_B(const std::shared_ptr<ArcSpace>& space, ArcId a, ArcId b) {
  return build_complex(space, RigidBuilder(space).B(a, b).arcs());
}

FiniteComplex build_C(const std::shared_ptr<ArcSpace>& space, const Frame& f, int tri) {
  return build_complex(space, RigidBuilder(space).C(f, tri).arcs());
}

FiniteComplex build_D(const std::shared_ptr<ArcSpace>& space, const Frame& f, int tri) {
  return build_complex(space, RigidBuilder(space).D(f, tri).arcs());
}

FiniteComplex build_E(const std::shared_ptr<ArcSpace>& space, const Frame& f, int e) {
  return build_complex(space, RigidBuilder(space).E(f, e).arcs());
}

FiniteComplex build_F(const std::shared_ptr<ArcSpace>& space, const Frame& f) {
  return build_complex(space, RigidBuilder(space).F(f).arcs());
}

RigidSetReport build_X(const std::shared_ptr<ArcSpace>& space) { return RigidBuilder(space).X(); }

} // namespace rigid
