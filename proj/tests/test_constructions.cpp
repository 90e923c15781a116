#include <doctest.h>

#include <random>
#include <set>

#include "rigid/constructions.h"
#include "rigid/farey.h"
#include "oracles.h"

using namespace rigid;
using oracle::kind_of;

namespace {

// Frames reached from the base by seeded random flips.
std::vector<Frame> random_frames(ArcSpace& space, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Frame> out;
  Frame f = space.base_frame();
  for (int i = 0; i < count; ++i) {
    for (int k = 0; k < 3; ++k) {
      const int e = static_cast<int>(rng() % f.tri.edge_count());
      if (f.tri.is_flippable(e)) f = space.flip(f, e);
    }
    out.push_back(f);
  }
  return out;
}

bool within(const TaggedArcs& small, const TaggedArcs& big) {
  for (ArcId a : small.arcs())
    if (!big.contains(a)) return false;
  return true;
}

} // namespace

TEST_CASE("B on the torus is two triangles") {
  FareyModel m;
  RigidBuilder b(m.space());
  const TaggedArcs out = b.B(m.arc({1, 0}), m.arc({1, 2}));
  std::set<ArcId> want;
  for (const Slope& s : {Slope{0, 1}, Slope{1, 0}, Slope{1, 1}, Slope{1, 2}}) want.insert(m.arc(s));
  const auto got = out.arcs();
  CHECK(std::set<ArcId>(got.begin(), got.end()) == want);
  CHECK(kind_of([&] { b.B(m.arc({0, 1}), m.arc({1, 0})); }) == ErrorKind::NotIntersectionOne);
}

TEST_CASE("B on the thrice-marked sphere") {
  auto space = std::make_shared<ArcSpace>(Surface{0, 3});
  std::vector<ArcId> ids;
  for (const auto& a : enumerate_arcs(Surface{0, 3}, 4)) ids.push_back(space->intern(a.coords));
  RigidBuilder b(space);
  int pairs = 0;
  for (ArcId x : ids) {
    for (ArcId y : ids) {
      if (space->intersection(x, y) != 1) continue;
      ++pairs;
      const FiniteComplex c = build_B(space, x, y);
      CHECK(c.vertex_count() == 4);
      CHECK(c.face_counts() == std::vector<long long>{4, 5, 2});
      CHECK(c.has_vertex(x));
      CHECK(c.has_vertex(y));
    }
  }
  CHECK(pairs == 6); // each loop and the arc it crosses, both orders
}

TEST_CASE("nice triangulations keep the triangle and separate its neighbours") {
  for (const Surface s : {Surface{0, 4}, Surface{1, 2}, Surface{0, 5}, Surface{2, 1}}) {
    auto space = std::make_shared<ArcSpace>(s);
    RigidBuilder b(space);
    for (const Frame& f : random_frames(*space, 6, 17)) {
      const auto infos = f.tri.classify_triangles();
      for (int t = 0; t < f.tri.triangle_count(); ++t) {
        if (!infos[t].embedded) continue;
        const Frame nice = b.nice_triangulation(f, t);
        CHECK(nice.tri.triangles()[t] == f.tri.triangles()[t]);
        for (const Side& side : f.tri.triangles()[t]) CHECK(space->edge_arc(nice, side.edge) == space->edge_arc(f, side.edge));
        const auto n = nice.tri.neighbours(t);
        CHECK(std::set<int>(n.begin(), n.end()).size() == 3);
      }
    }
  }
  FareyModel m;
  RigidBuilder torus(m.space());
  CHECK(kind_of([&] { torus.nice_triangulation(m.space()->base_frame(), 0); }) == ErrorKind::Precondition);
}

TEST_CASE("C: corner arcs cross two sides once and miss the third") {
  for (const Surface s : {Surface{0, 4}, Surface{1, 2}, Surface{0, 5}}) {
    auto space = std::make_shared<ArcSpace>(s);
    RigidBuilder b(space);
    const Frame f = space->base_frame();
    const auto infos = f.tri.classify_triangles();
    for (int t = 0; t < f.tri.triangle_count(); ++t) {
      if (!infos[t].embedded) continue;
      const Frame nice = b.nice_triangulation(f, t);
      const auto& sides = f.tri.triangles()[t];
      const ArcId a = space->edge_arc(f, sides[0].edge), bb = space->edge_arc(f, sides[1].edge),
                  c = space->edge_arc(f, sides[2].edge);
      const ArcId d = b.corner_arc(nice, sides[0].edge, sides[1].edge);
      const ArcId e = b.corner_arc(nice, sides[1].edge, sides[2].edge);
      const ArcId g = b.corner_arc(nice, sides[0].edge, sides[2].edge);
      CHECK(space->intersection(a, d) == 1);
      CHECK(space->intersection(bb, d) == 1);
      CHECK(space->intersection(c, d) == 0);
      CHECK(space->intersection(bb, e) == 1);
      CHECK(space->intersection(c, e) == 1);
      CHECK(space->intersection(a, e) == 0);
      CHECK(space->intersection(a, g) == 1);
      CHECK(space->intersection(c, g) == 1);
      CHECK(space->intersection(bb, g) == 0);

      const TaggedArcs out = b.C(f, t);
      for (ArcId x : {a, bb, c, d, e, g}) CHECK(out.contains(x));
      CHECK(out.arcs().size() >= 9);
      CHECK(within(b.B(a, d), out));
    }
  }
}

TEST_CASE("D around a folded triangle") {
  for (const Surface s : {Surface{0, 4}, Surface{0, 5}, Surface{1, 2}}) {
    auto space = std::make_shared<ArcSpace>(s);
    RigidBuilder b(space);
    int seen = 0;
    for (const Frame& f : random_frames(*space, 40, 23)) {
      const auto infos = f.tri.classify_triangles();
      for (const TriangleInfo& info : infos) {
        if (info.embedded) continue;
        const int across = f.tri.glued(SideRef{info.index, [&] {
                                                 for (int k = 0; k < 3; ++k)
                                                   if (f.tri.side(info.index, k).edge == info.outer_edge) return k;
                                                 return 0;
                                               }()})
                               .tri;
        if (!infos[across].embedded) continue;
        ++seen;
        const TaggedArcs out = b.D(f, info.index);
        const ArcId a = space->edge_arc(f, info.inner_edge), bo = space->edge_arc(f, info.outer_edge);
        const ArcId e = space->edge_arc(space->flip(f, info.outer_edge), info.outer_edge);
        CHECK(space->intersection(bo, e) == 1);
        for (ArcId x : {a, bo, e}) CHECK(out.contains(x));
        for (const Side& side : f.tri.triangles()[across]) CHECK(out.contains(space->edge_arc(f, side.edge)));
      }
    }
    CHECK(seen > 0);
  }
  auto space = std::make_shared<ArcSpace>(Surface{0, 3});
  const Frame f = space->base_frame().tri.is_flippable(0) ? space->flip(space->base_frame(), 0) : space->base_frame();
  int folded = -1;
  for (const TriangleInfo& info : f.tri.classify_triangles())
    if (!info.embedded) folded = info.index;
  REQUIRE(folded >= 0);
  RigidBuilder b(space);
  CHECK(kind_of([&] { b.D(f, folded); }) == ErrorKind::Precondition);
}

TEST_CASE("E across a shared side") {
  for (const Surface s : {Surface{0, 4}, Surface{0, 5}, Surface{1, 2}, Surface{2, 1}}) {
    auto space = std::make_shared<ArcSpace>(s);
    RigidBuilder b(space);
    for (const Frame& f : random_frames(*space, 5, 29)) {
      const auto infos = f.tri.classify_triangles();
      for (int e = 0; e < f.tri.edge_count(); ++e) {
        const auto& sides = f.tri.edge_sides(e);
        const bool ok = sides[0].tri != sides[1].tri && infos[sides[0].tri].embedded && infos[sides[1].tri].embedded;
        if (!ok) {
          CHECK(kind_of([&] { b.E(f, e); }) == ErrorKind::NotAdjacent);
          continue;
        }
        const TaggedArcs out = b.E(f, e);
        const ArcId c = space->edge_arc(f, e), g = space->edge_arc(space->flip(f, e), e);
        CHECK(space->intersection(c, g) == 1);
        CHECK(out.contains(g));
        for (const SideRef& r : sides)
          for (const Side& side : f.tri.triangles()[r.tri]) CHECK(out.contains(space->edge_arc(f, side.edge)));
        CHECK(within(b.C(f, sides[0].tri), out));
        CHECK(within(b.C(f, sides[1].tri), out));
      }
    }
  }
}

TEST_CASE("F counts its pieces") {
  for (const Surface s : {Surface{0, 4}, Surface{0, 5}, Surface{1, 2}}) {
    auto space = std::make_shared<ArcSpace>(s);
    RigidBuilder b(space);
    for (const Frame& f : random_frames(*space, 8, 31)) {
      const TaggedArcs out = b.F(f);
      const auto& k = b.last_counts();
      CHECK(k.embedded + k.non_embedded == f.tri.triangle_count());
      int shared = 0;
      for (int e = 0; e < f.tri.edge_count(); ++e)
        if (f.tri.edge_sides(e)[0].tri != f.tri.edge_sides(e)[1].tri) ++shared;
      CHECK(k.shared_sides == shared);
      CHECK(k.skipped_shared_sides <= k.shared_sides);
      for (ArcId x : space->frame_arcs(f)) CHECK(out.contains(x));
    }
  }
}

TEST_CASE("X: sizes, tags and paths") {
  const std::set<std::string> tags{"B", "C", "D", "E", "F", "X-closure"};
  for (const auto& [s, size] : {std::pair{Surface{0, 4}, 39}, {Surface{1, 2}, 36}, {Surface{0, 5}, 51}}) {
    auto space = std::make_shared<ArcSpace>(s);
    const RigidSetReport r = build_X(space);
    CHECK(r.complex->vertex_count() == size);
    CHECK(r.base == space->base());
    for (ArcId v : r.complex->vertices()) {
      REQUIRE(r.provenance.count(v));
      CHECK(tags.count(r.provenance.at(v)));
    }
    for (const auto& [a, path] : r.paths) {
      const Frame f = space->extend(space->base_frame(), path);
      CHECK(space->edge_of(f, a).has_value());
      for (ArcId x : space->frame_arcs(f)) CHECK(r.complex->has_vertex(x));
    }
    CHECK(r.complex->dimension() == surface_invariants(s).dim_arc_complex);
  }
  FareyModel m;
  CHECK(kind_of([&] { build_X(m.space()); }) == ErrorKind::Precondition);
}

TEST_CASE("exhaustion steps grow, cover and stay full") {
  for (const Surface s : {Surface{0, 4}, Surface{1, 2}}) {
    auto space = std::make_shared<ArcSpace>(s);
    RigidBuilder b(space);
    RigidSetReport r = b.X();
    const auto arcs = enumerate_arcs(s, 4);
    for (std::size_t i = 0; i < 10 && i < arcs.size(); ++i) {
      const ArcId x = space->intern(arcs[arcs.size() - 1 - i].coords);
      const RigidSetReport next = b.exhaustion_step(r, x);
      CHECK(r.complex->is_subcomplex_of(*next.complex));
      CHECK(next.complex->has_vertex(x));
      r = next;
    }
    const FiniteComplex& c = *r.complex;
    for (int i = 0; i < c.vertex_count(); ++i)
      for (int j = i + 1; j < c.vertex_count(); ++j)
        CHECK(c.adjacent(i, j) == space->disjoint(c.vertex(i), c.vertex(j)));
  }
}
