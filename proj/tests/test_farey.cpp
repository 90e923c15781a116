#include <doctest.h>

#include <set>

#include "rigid/farey.h"
#include "oracles.h"

using namespace rigid;
using oracle::kind_of;

TEST_CASE("slopes parse and normalize") {
  CHECK(parse_slope("3/5") == Slope{3, 5});
  CHECK(parse_slope("-2") == Slope{-2, 1});
  CHECK(parse_slope("1/0") == Slope{1, 0});
  CHECK(make_slope(4, -6) == Slope{-2, 3});
  CHECK(make_slope(-3, 0) == Slope{1, 0});
  CHECK(Slope{-2, 3}.str() == "-2/3");
  CHECK(kind_of([] { parse_slope("x/2"); }) == ErrorKind::Malformed);
  CHECK(kind_of([] { parse_slope("1/"); }) == ErrorKind::Malformed);
  CHECK(kind_of([] { make_slope(0, 0); }) == ErrorKind::OutOfRange);
  CHECK(farey_det({1, 2}, {2, 3}) == 1);
}

TEST_CASE("paths walk down the tessellation") {
  FareyModel m;
  for (const Slope& s : oracle::slopes(8, 8)) {
    const FlipPath p = m.path_to(s);
    const Triangulation t = apply_path(m.space()->base(), p);
    const Coords here = m.space()->to_frame(oracle::torus_coords(s), Frame{t, p});
    CHECK(edge_index(here).has_value());
  }
}

TEST_CASE("truncation by height") {
  FareyModel m;
  for (long long h : {1, 2, 3, 5, 8}) {
    const FiniteComplex t = farey_truncation(m, h);
    long long expect = 0;
    for (const Slope& s : oracle::slopes(h, h)) expect += std::max(std::llabs(s.p), s.q) <= h;
    CHECK(t.vertex_count() == expect);
    for (int i = 0; i < t.vertex_count(); ++i) {
      for (int j = i + 1; j < t.vertex_count(); ++j) {
        const Slope a = *m.slope_of(t.vertex(i)), b = *m.slope_of(t.vertex(j));
        CHECK(t.adjacent(i, j) == (farey_det(a, b) == 1));
      }
    }
    // a disc of Farey triangles: V - E + F = 1
    const auto f = t.face_counts();
    if (f.size() == 3) CHECK(f[0] - f[1] + f[2] == 1);
  }
}

TEST_CASE("rigid set: four triangles around infinity") {
  FareyModel m;
  const FiniteComplex r = farey_rigid_set(m);
  CHECK(r.face_counts() == std::vector<long long>{6, 9, 4});
  const ArcId inf = m.arc({1, 0});
  REQUIRE(r.has_vertex(inf));
  CHECK(r.neighbours(*r.index_of(inf)).size() == 5);
  const FiniteComplex full = farey_truncation(m, 3);
  CHECK(r.is_subcomplex_of(closed_star(full, inf)));
  std::set<Slope> got;
  for (ArcId a : r.vertices()) got.insert(*m.slope_of(a));
  CHECK(got == std::set<Slope>{{1, 0}, {-2, 1}, {-1, 1}, {0, 1}, {1, 1}, {2, 1}});

  const RigidSetReport rep = farey_rigid_report(m);
  CHECK(*rep.complex == r);
  for (const auto& [a, p] : rep.paths) {
    const Frame f = m.space()->extend(m.space()->base_frame(), p);
    CHECK(m.space()->edge_of(f, a).has_value());
  }
}

TEST_CASE("exhaustion steps grow strictly and cover every slope") {
  FareyModel m;
  FiniteComplex c = farey_rigid_set(m);
  std::vector<int> sizes{c.vertex_count()};
  for (int step = 0; step < 6; ++step) {
    const FiniteComplex next = farey_exhaustion_step(m, c);
    CHECK(c.is_subcomplex_of(next));
    CHECK(next.vertex_count() > c.vertex_count());
    c = next;
    sizes.push_back(c.vertex_count());
  }
  CHECK(sizes[1] == 12);
  for (const Slope& s : oracle::slopes(3, 3)) CHECK(c.has_vertex(m.arc(s)));
}

TEST_CASE("the thrice-marked sphere embeds") {
  FareyModel m;
  const SimplicialMap e = s03_embedding(m, 5);
  CHECK(e.source->vertex_count() == 6);
  CHECK(is_injective(e));
  CHECK(is_locally_injective(e));
  CHECK(e.source->space()->surface() == Surface{0, 3});
  CHECK(e.target->space()->surface() == Surface{1, 1});
}
