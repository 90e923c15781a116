#include <doctest.h>

#include <random>
#include <set>

#include "rigid/constructions.h"
#include "rigid/farey.h"
#include "rigid/verifier.h"
#include "oracles.h"

using namespace rigid;
using oracle::kind_of;

namespace {

std::shared_ptr<const FiniteComplex> shared(FiniteComplex c) { return std::make_shared<const FiniteComplex>(std::move(c)); }

std::shared_ptr<const FiniteComplex> truncation(const std::shared_ptr<ArcSpace>& space, long long bound) {
  std::vector<ArcId> ids;
  for (const auto& a : enumerate_arcs(space->surface(), bound)) ids.push_back(space->intern(a.coords));
  return shared(build_complex(space, ids));
}

FrameIsomorphism identity(const std::shared_ptr<ArcSpace>& space) {
  const Frame f = space->base_frame();
  return {identity_isomorphism(f.tri), space, f, space, f};
}

std::vector<int> identity_assignment(const FiniteComplex& c) {
  std::vector<int> a(c.vertex_count());
  for (int i = 0; i < c.vertex_count(); ++i) a[i] = i;
  return a;
}

} // namespace

TEST_CASE("identity pushes every arc to itself") {
  FareyModel m;
  const auto t = shared(farey_truncation(m, 5));
  const SimplicialMap f = induced_map(identity(m.space()), t, t);
  CHECK(f.assignment == identity_assignment(*t));
}

TEST_CASE("the torus reflection fixing 0/1 and 1/0 negates slopes") {
  FareyModel m;
  const Frame base = m.space()->base_frame();
  const Frame flipped = m.space()->flip(base, 2);
  int found = 0;
  for (const auto& h : isomorphisms(base.tri, flipped.tri)) {
    if (h.edge_map != std::vector<int>{0, 1, 2}) continue;
    ++found;
    CHECK_FALSE(h.orientation_preserving);
    const FrameIsomorphism f{h, m.space(), base, m.space(), flipped};
    for (const Slope& s : oracle::slopes(6, 6))
      CHECK(push_arc(f, oracle::torus_coords(s)) == oracle::torus_coords(make_slope(-s.p, s.q)));
  }
  CHECK(found > 0);
}

TEST_CASE("sphere symmetries permute the loops") {
  auto space = std::make_shared<ArcSpace>(Surface{0, 3});
  const auto c = truncation(space, 4);
  const Frame base = space->base_frame();
  auto is_loop = [&](const Coords& x) {
    const ArcTrace tr = trace_arc(base.tri, x);
    return tr.start_vertex == tr.end_vertex;
  };
  int reversing = 0;
  for (const auto& h : isomorphisms(base.tri, base.tri)) {
    reversing += !h.orientation_preserving;
    const FrameIsomorphism f{h, space, base, space, base};
    std::set<ArcId> images;
    for (ArcId a : c->vertices()) {
      const Coords img = push_arc(f, space->coords(a));
      CHECK(is_loop(img) == is_loop(space->coords(a)));
      images.insert(*space->find(img));
    }
    CHECK(images.size() == 6);
  }
  CHECK(reversing == 6);
}

TEST_CASE("homeomorphisms are recovered from the maps they induce") {
  std::mt19937 rng(41);
  for (const Surface s : {Surface{1, 1}, Surface{0, 4}, Surface{1, 2}}) {
    auto space = std::make_shared<ArcSpace>(s);
    const auto x = truncation(space, 3);
    const Frame base = space->base_frame();
    int tried = 0;
    for (int trial = 0; trial < 40 && tried < 8; ++trial) {
      Frame t = base;
      for (int k = 0; k < 5; ++k) {
        const int e = static_cast<int>(rng() % t.tri.edge_count());
        if (t.tri.is_flippable(e)) t = space->flip(t, e);
      }
      const auto hs = isomorphisms(base.tri, t.tri);
      if (hs.empty()) continue;
      ++tried;
      const FrameIsomorphism f{hs[rng() % hs.size()], space, base, space, t};
      const SimplicialMap m = induced_map(f, x);
      CHECK(is_locally_injective(m));
      const FrameIsomorphism back = homeomorphism_from_map(m, base);
      for (ArcId a : x->vertices()) CHECK(push_arc(back, space->coords(a)) == push_arc(f, space->coords(a)));
    }
    CHECK(tried > 0);
  }
}

TEST_CASE("a triangulation sent onto a different type is refused") {
  auto space = std::make_shared<ArcSpace>(Surface{0, 4});
  const Frame base = space->base_frame();
  // flip until a folded triangle appears
  Frame other = base;
  std::mt19937 rng(3);
  auto folded = [](const Frame& f) {
    for (const auto& i : f.tri.classify_triangles())
      if (!i.embedded) return true;
    return false;
  };
  while (folded(other) == folded(base)) {
    const int e = static_cast<int>(rng() % other.tri.edge_count());
    if (other.tri.is_flippable(e)) other = space->flip(other, e);
  }
  REQUIRE(isomorphisms(base.tri, other.tri).empty());
  const auto src = space->frame_arcs(base), dst = space->frame_arcs(other);
  const auto x = shared(FiniteComplex(space, src, {src}));
  const auto y = shared(FiniteComplex(space, dst, {dst}));
  std::vector<int> a(x->vertex_count());
  for (int i = 0; i < x->vertex_count(); ++i) a[i] = i;
  const SimplicialMap m{x, y, a};
  CHECK(kind_of([&] { homeomorphism_from_map(m, base); }) == ErrorKind::TypeMismatch);

  // a frame whose arcs are not all in the source
  const auto part = shared(FiniteComplex(space, {src[0]}, {{src[0]}}));
  CHECK(kind_of([&] { homeomorphism_from_map({part, part, {0}}, base); }) == ErrorKind::Precondition);

  // maps into another surface
  FareyModel fm;
  auto sphere = std::make_shared<ArcSpace>(Surface{0, 3});
  const SimplicialMap e = s03_embedding(fm, 5);
  CHECK(kind_of([&] { homeomorphism_from_map(e, e.source->space()->base_frame()); }) == ErrorKind::SurfaceMismatch);
}

TEST_CASE("propagation along flip paths") {
  auto space = std::make_shared<ArcSpace>(Surface{0, 4});
  const RigidSetReport r = build_X(space);
  const SimplicialMap id{r.complex, r.complex, identity_assignment(*r.complex)};
  const FrameIsomorphism start = identity(space);
  std::mt19937 rng(43);
  std::vector<FlipPath> paths;
  for (const auto& [a, p] : r.paths) paths.push_back(p);
  for (int k = 0; k < 50; ++k) {
    const FlipPath& p = paths[rng() % paths.size()];
    const Propagation pr = propagate(id, start, p);
    CHECK_FALSE(pr.conflict);
    for (const auto& [a, b] : pr.images) CHECK(a == b);
  }

  // swap the images of two far arcs so that some path sees it
  int conflicts = 0;
  for (const auto& [a, p] : r.paths) {
    if (p.flips.empty()) continue;
    const int i = *r.complex->index_of(a);
    for (int j = 0; j < r.complex->vertex_count(); ++j) {
      if (j == i || (r.complex->neighbours(i) == r.complex->neighbours(j))) continue;
      SimplicialMap bad = id;
      std::swap(bad.assignment[i], bad.assignment[j]);
      const Propagation pr = propagate(bad, start, p);
      if (pr.conflict) {
        ++conflicts;
        CHECK(pr.conflict_step >= 0);
        CHECK_FALSE(pr.reason.empty());
      }
      break;
    }
  }
  CHECK(conflicts > 0);
}

TEST_CASE("soundness of truncations") {
  FareyModel m;
  const Soundness big = truncation_soundness(farey_truncation(m, 13), 2);
  CHECK(big.sound);
  CHECK(big.triangulation_types == 1);
  CHECK_FALSE(truncation_soundness(farey_truncation(m, 1), 2).sound);
}

TEST_CASE("the torus rigid set is rigid in a moderate truncation") {
  FareyModel m;
  const RigidSetReport r = farey_rigid_report(m);
  const auto target = shared(farey_truncation(m, 13));
  const RigidityReport rep = check_rigidity(r, target);
  CHECK(rep.maps_examined > 0);
  CHECK(rep.maps_induced == rep.maps_examined);
  // the elliptic involution fixes every slope
  CHECK(rep.symmetric_maps == rep.maps_examined);
  CHECK(rep.rigid());

  RigidityOptions capped;
  capped.map_limit = 10;
  const RigidityReport cut = check_rigidity(r, target, capped);
  CHECK(cut.truncation_flag);
  CHECK_FALSE(cut.rigid());

  RigidityOptions threads;
  threads.threads = 4;
  const RigidityReport par = check_rigidity(r, target, threads);
  CHECK(par.maps_examined == rep.maps_examined);
  CHECK(par.maps_induced == rep.maps_induced);
}

TEST_CASE("maps from the sphere complex into the torus complex are not induced") {
  FareyModel m;
  auto space = std::make_shared<ArcSpace>(Surface{0, 3});
  const auto x = truncation(space, 4);
  const RigidityReport rep = check_rigidity(x, shared(farey_truncation(m, 5)));
  CHECK(rep.maps_examined > 0);
  CHECK(rep.maps_induced == 0);
  CHECK(rep.counterexample_count == rep.maps_examined);
  REQUIRE_FALSE(rep.reasons.empty());
  CHECK(rep.reasons.front().find("SurfaceMismatch") != std::string::npos);
  CHECK_FALSE(rep.rigid());
}

TEST_CASE("a single arc is not a candidate") {
  auto space = std::make_shared<ArcSpace>(Surface{0, 4});
  const auto x = shared(FiniteComplex(space, {space->frame_arcs(space->base_frame())[0]}, {}));
  const RigidityReport rep = check_rigidity(x, truncation(space, 2));
  CHECK_FALSE(rep.applicable);
  CHECK_FALSE(rep.rigid());
}

TEST_CASE("equal-dimension surfaces") {
  const auto torus = equal_dimension_surfaces({1, 1});
  CHECK(std::find(torus.begin(), torus.end(), Surface{0, 3}) != torus.end());
  CHECK(std::find(torus.begin(), torus.end(), Surface{1, 1}) != torus.end());
  const auto four = equal_dimension_surfaces({0, 4});
  CHECK(std::find(four.begin(), four.end(), Surface{1, 2}) != four.end());
  for (const Surface& s : four) CHECK(surface_invariants(s).dim_arc_complex == surface_invariants({0, 4}).dim_arc_complex);
}
