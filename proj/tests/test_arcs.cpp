#include <doctest.h>

#include <algorithm>
#include <random>

#include "rigid/arc_space.h"
#include "rigid/farey.h"
#include "oracles.h"

using namespace rigid;
using oracle::kind_of;

TEST_CASE("torus coordinates match the lattice count") {
  FareyModel m;
  for (const Slope& s : oracle::slopes(12, 12)) {
    const ArcId a = m.arc(s);
    CHECK_MESSAGE(m.space()->coords(a) == oracle::torus_coords(s), s.str());
    CHECK(m.slope_of(a) == s);
  }
}

TEST_CASE("torus arc intersections match the lattice count") {
  FareyModel m;
  const auto all = oracle::slopes(6, 6);
  for (const Slope& a : all) {
    for (const Slope& b : all) {
      const long long got = m.space()->intersection(m.arc(a), m.arc(b));
      CHECK_MESSAGE(got == oracle::lattice_crossings(a, b), a.str() << " " << b.str());
    }
  }
}

TEST_CASE("thrice-marked sphere has six arcs") {
  for (long long bound : {2, 3, 5, 8}) CHECK(enumerate_arcs(Surface{0, 3}, bound).size() == 6);

  auto space = std::make_shared<ArcSpace>(Surface{0, 3});
  const Triangulation& t = space->base();
  std::vector<ArcId> loops, joins;
  for (const auto& a : enumerate_arcs(Surface{0, 3}, 4)) {
    const ArcId id = space->intern(a.coords);
    const ArcTrace tr = trace_arc(t, a.coords);
    (tr.start_vertex == tr.end_vertex ? loops : joins).push_back(id);
  }
  REQUIRE(loops.size() == 3);
  REQUIRE(joins.size() == 3);

  auto ends = [&](ArcId a) {
    const ArcTrace tr = trace_arc(t, space->coords(a));
    return std::pair{tr.start_vertex, tr.end_vertex};
  };
  for (ArcId l : loops) {
    const int v = ends(l).first;
    for (ArcId j : joins) {
      const auto [x, y] = ends(j);
      // a loop at v meets the arc joining the other two points once
      CHECK(space->intersection(l, j) == (x != v && y != v ? 1 : 0));
    }
    for (ArcId k : loops) {
      if (k != l) CHECK(space->intersection(l, k) > 0);
    }
  }
  for (ArcId a : joins) {
    for (ArcId b : joins) CHECK(space->disjoint(a, b));
  }
}

TEST_CASE("enumeration is sorted and monotone in the bound") {
  for (const Surface s : {Surface{0, 4}, Surface{1, 2}, Surface{0, 5}}) {
    std::vector<ArcCoordinates> prev;
    for (long long bound = 1; bound <= 5; ++bound) {
      const auto arcs = enumerate_arcs(s, bound);
      CHECK(arcs.size() >= prev.size());
      CHECK(std::equal(prev.begin(), prev.end(), arcs.begin()));
      const Triangulation t = base_triangulation(s);
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        CHECK(is_valid_arc(t, arcs[i].coords));
        CHECK(arcs[i].reference == base_reference(s));
        if (i > 0 && !edge_index(arcs[i].coords) && !edge_index(arcs[i - 1].coords))
          CHECK(coordinate_sum(arcs[i - 1].coords) <= coordinate_sum(arcs[i].coords));
      }
      prev = arcs;
    }
  }
}

TEST_CASE("degenerate spheres") {
  CHECK(kind_of([] { enumerate_arcs(Surface{0, 1}, 3); }) == ErrorKind::EmptyComplex);
  const auto one = enumerate_arcs(Surface{0, 2}, 3);
  REQUIRE(one.size() == 1);
  CHECK(one[0].coords.empty());
}

TEST_CASE("invalid coordinates are rejected") {
  const Triangulation t = base_triangulation({0, 4});
  Coords c(t.edge_count(), 0);
  CHECK_FALSE(is_valid_arc(t, c));
  c[0] = 5;
  CHECK_FALSE(is_valid_arc(t, c));
  auto space = std::make_shared<ArcSpace>(Surface{0, 4});
  CHECK(kind_of([&] { space->intern(c); }) == ErrorKind::InvalidArc);
}

TEST_CASE("transport round trips and is path independent") {
  std::mt19937 rng(11);
  for (const Surface s : {Surface{0, 4}, Surface{1, 2}, Surface{0, 5}, Surface{2, 1}}) {
    const Triangulation t = base_triangulation(s);
    const auto arcs = enumerate_arcs(s, 4);
    for (int trial = 0; trial < 30; ++trial) {
      const Coords& c = arcs[rng() % arcs.size()].coords;
      FlipPath path;
      Triangulation u = t;
      for (int k = 0; k < 6; ++k) {
        const int e = static_cast<int>(rng() % t.edge_count());
        if (!u.is_flippable(e)) continue;
        path.flips.push_back(e);
        u = u.flip(e);
      }
      const Coords moved = transport_along(t, c, path);
      CHECK(is_valid_arc(u, moved));
      FlipPath back{std::vector<int>(path.flips.rbegin(), path.flips.rend())};
      CHECK(transport_along(u, moved, back) == c);
    }
    // flips of edges sharing no triangle commute
    for (int e = 0; e < t.edge_count(); ++e) {
      for (int f = e + 1; f < t.edge_count(); ++f) {
        if (!t.is_flippable(e) || !t.is_flippable(f)) continue;
        const auto se = t.edge_sides(e), sf = t.edge_sides(f);
        bool touch = false;
        for (auto a : se)
          for (auto b : sf) touch = touch || a.tri == b.tri;
        if (touch) continue;
        REQUIRE(t.flip(e).flip(f) == t.flip(f).flip(e));
        for (const auto& a : arcs)
          CHECK(transport_along(t, a.coords, {{e, f}}) == transport_along(t, a.coords, {{f, e}}));
      }
    }
  }
}

TEST_CASE("intersection numbers are symmetric and flip invariant") {
  std::mt19937 rng(3);
  for (const Surface s : {Surface{0, 4}, Surface{1, 2}}) {
    const Triangulation t = base_triangulation(s);
    const auto arcs = enumerate_arcs(s, 3);
    for (int trial = 0; trial < 60; ++trial) {
      const Coords& a = arcs[rng() % arcs.size()].coords;
      const Coords& b = arcs[rng() % arcs.size()].coords;
      const long long i = intersection_number(t, a, b);
      CHECK(i == intersection_number(t, b, a));
      CHECK(intersection_number(t, a, a) == 0);
      for (int e = 0; e < t.edge_count(); ++e) {
        if (!t.is_flippable(e)) continue;
        CHECK(intersection_number(t.flip(e), transport(t, a, e), transport(t, b, e)) == i);
      }
    }
  }
}

TEST_CASE("greedy descent finds a frame containing each arc") {
  for (const Surface s : {Surface{0, 4}, Surface{1, 2}, Surface{0, 5}, Surface{2, 1}}) {
    auto space = std::make_shared<ArcSpace>(s);
    for (const auto& a : enumerate_arcs(s, 5)) {
      const ArcId id = space->intern(a.coords);
      const Frame& f = space->frame_containing(id);
      CHECK(apply_path(space->base(), f.path) == f.tri);
      CHECK(space->edge_of(f, id) == space->edge_in_containing_frame(id));
      CHECK(space->to_frame(a.coords, f) == edge_arc(f.tri, space->edge_in_containing_frame(id)));
    }
  }
  CHECK(descent_fallback_count() >= 0);
}

TEST_CASE("disjoint systems complete to triangulations") {
  std::mt19937 rng(5);
  for (const Surface s : {Surface{0, 4}, Surface{0, 5}, Surface{1, 2}, Surface{2, 1}}) {
    auto space = std::make_shared<ArcSpace>(s);
    std::vector<ArcId> pool;
    for (const auto& a : enumerate_arcs(s, 4)) pool.push_back(space->intern(a.coords));
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ArcId> system;
      for (int k = 0; k < 40; ++k) {
        const ArcId a = pool[rng() % pool.size()];
        if (std::all_of(system.begin(), system.end(), [&](ArcId b) { return a != b && space->disjoint(a, b); }))
          system.push_back(a);
      }
      for (const Frame& f : space->completions(system)) {
        for (ArcId a : system) CHECK(space->edge_of(f, a).has_value());
      }
    }
    const ArcId a = pool.back();
    for (ArcId b : pool) {
      if (!space->disjoint(a, b)) {
        CHECK(kind_of([&] { space->completions({a, b}); }) == ErrorKind::NotDisjoint);
        break;
      }
    }
  }
}

TEST_CASE("codimension one systems have two completions when the free edge flips") {
  auto space = std::make_shared<ArcSpace>(Surface{0, 4});
  const Frame base = space->base_frame();
  const std::vector<ArcId> edges = space->frame_arcs(base);
  for (int drop = 0; drop < base.tri.edge_count(); ++drop) {
    std::vector<ArcId> rest;
    for (int e = 0; e < base.tri.edge_count(); ++e)
      if (e != drop) rest.push_back(edges[e]);
    CHECK(space->completions(rest).size() == (base.tri.is_flippable(drop) ? 2u : 1u));
  }
  CHECK(kind_of([&] { flip_path_to_single_crossing(base.tri, space->coords(edges[0]), 1); }) ==
        ErrorKind::NotIntersectionOne);
}
