#include "rigid/verifier.h"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <unordered_set>

#include "rigid/error.h"

namespace rigid {

Coords push_arc(const FrameIsomorphism& f, const Coords& source_base_coords) {
  const Coords here = f.source_space->to_frame(source_base_coords, f.source);
  Coords moved(here.size(), 0);
  for (std::size_t e = 0; e < here.size(); ++e) moved[f.h.edge_map[e]] = here[e];
  return f.target_space->to_base(moved, f.target);
}

SimplicialMap induced_map(const FrameIsomorphism& f, const std::shared_ptr<const FiniteComplex>& x,
                          const std::shared_ptr<const FiniteComplex>& target) {
  SimplicialMap m{x, target, {}};
  for (ArcId a : x->vertices()) {
    const Coords img = push_arc(f, x->space()->coords(a));
    auto id = f.target_space->find(img);
    std::optional<int> idx = id ? target->index_of(*id) : std::nullopt;
    if (!idx) throw Error(ErrorKind::UnknownVertex, "image of arc " + std::to_string(a) + " is outside the target");
    m.assignment.push_back(*idx);
  }
  return m;
}

SimplicialMap induced_map(const FrameIsomorphism& f, const std::shared_ptr<const FiniteComplex>& x) {
  std::vector<ArcId> images;
  for (ArcId a : x->vertices()) images.push_back(f.target_space->intern(push_arc(f, x->space()->coords(a))));
  auto target = std::make_shared<const FiniteComplex>(build_complex(f.target_space, images));
  return induced_map(f, x, target);
}

namespace {

std::vector<int> sorted_edges(const TriangleSides& t, const std::vector<int>* map) {
  std::vector<int> out;
  for (const Side& s : t) out.push_back(map ? (*map)[s.edge] : s.edge);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

FrameIsomorphism homeomorphism_from_map(const SimplicialMap& m, const Frame& t) {
  const auto sspace = m.source->space();
  const auto tspace = m.target->space();
  if (!sspace || !tspace) throw Error(ErrorKind::Precondition, "maps between arc complexes only");
  if (!is_locally_injective(m)) throw Error(ErrorKind::Precondition, "map is not locally injective");

  const int n = t.tri.edge_count();
  std::vector<ArcId> images;
  for (int e = 0; e < n; ++e) {
    const ArcId a = sspace->edge_arc(t, e);
    if (!m.source->has_vertex(a)) throw Error(ErrorKind::Precondition, "triangulation is not in the source");
    images.push_back(m.image(a));
  }
  if (std::set<ArcId>(images.begin(), images.end()).size() != images.size())
    throw Error(ErrorKind::NotATriangulation, "image of the triangulation repeats an arc");
  const SurfaceInvariants tinv = surface_invariants(tspace->surface());
  if (!tinv.has_triangulations || tinv.arcs_per_triangulation != n)
    throw Error(ErrorKind::NotATriangulation, "image arcs are not a maximal disjoint system");
  std::optional<Frame> completed;
  try {
    completed = tspace->complete_to_triangulation(images);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotDisjoint) throw;
    throw Error(ErrorKind::NotATriangulation, err.what());
  }
  const Frame& image = *completed;
  if (!(sspace->surface() == tspace->surface()))
    throw Error(ErrorKind::SurfaceMismatch,
                "source " + sspace->surface().name() + " but image triangulation on " + tspace->surface().name());

  std::vector<int> corr(n);
  for (int e = 0; e < n; ++e) corr[e] = *tspace->edge_of(image, images[e]);

  std::multiset<std::vector<int>> target_triangles;
  for (const auto& tri : image.tri.triangles()) target_triangles.insert(sorted_edges(tri, nullptr));
  const auto infos = t.tri.classify_triangles();
  for (int k = 0; k < t.tri.triangle_count(); ++k) {
    auto it = target_triangles.find(sorted_edges(t.tri.triangles()[k], &corr));
    if (it == target_triangles.end())
      throw Error(ErrorKind::TypeMismatch, std::string(infos[k].embedded ? "embedded" : "non-embedded") +
                                               " triangle " + std::to_string(k) + " has no image triangle");
    target_triangles.erase(it);
  }

  std::vector<CombinatorialIsomorphism> matching;
  for (auto& h : isomorphisms(t.tri, image.tri)) {
    if (h.edge_map == corr) matching.push_back(std::move(h));
  }
  if (matching.empty())
    throw Error(ErrorKind::OrientationConflict, "triangles cannot be glued consistently onto their images");
  FrameIsomorphism out{matching.front(), sspace, t, tspace, image, static_cast<int>(matching.size())};
  return out;
}

Propagation propagate(const SimplicialMap& m, const FrameIsomorphism& start, const FlipPath& path) {
  Propagation out;
  Frame s = start.source, s2 = start.target;
  const auto& sspace = start.source_space;
  const auto& tspace = start.target_space;
  const std::vector<int>& corr = start.h.edge_map;

  auto record = [&](ArcId b, ArcId b2, int step) {
    if (m.source->has_vertex(b) && m.image(b) != b2) {
      out.conflict = true;
      out.conflict_step = step;
      out.conflict_vertex = b;
      out.reason = "forced image of arc " + std::to_string(b) + " disagrees with the map";
      return false;
    }
    auto [it, fresh] = out.images.emplace(b, b2);
    if (!fresh && it->second != b2) {
      out.conflict = true;
      out.conflict_step = step;
      out.conflict_vertex = b;
      out.reason = "arc " + std::to_string(b) + " forced to two images";
      return false;
    }
    return true;
  };

  for (int e = 0; e < s.tri.edge_count(); ++e) {
    if (!record(sspace->edge_arc(s, e), tspace->edge_arc(s2, corr[e]), 0)) return out;
  }
  for (std::size_t k = 0; k < path.flips.size(); ++k) {
    const int e = path.flips[k];
    const int e2 = corr[e];
    if (!s2.tri.is_flippable(e2)) {
      out.conflict = true;
      out.conflict_step = static_cast<int>(k) + 1;
      out.reason = "image edge cannot be flipped";
      return out;
    }
    s = sspace->flip(s, e);
    s2 = tspace->flip(s2, e2);
    if (!record(sspace->edge_arc(s, e), tspace->edge_arc(s2, e2), static_cast<int>(k) + 1)) return out;
  }
  return out;
}

Soundness truncation_soundness(const FiniteComplex& target, int radius, int type_cap) {
  Soundness out;
  out.radius = radius;
  const auto& space = target.space();
  if (!space) {
    out.reason = "target is not an arc complex";
    return out;
  }
  if (!surface_invariants(space->surface()).has_triangulations) {
    out.reason = space->surface().name() + " has no triangulations";
    return out;
  }

  // One representative per combinatorial type, found by flipping from the base.
  std::vector<Frame> reps{space->base_frame()};
  std::deque<Frame> q{space->base_frame()};
  while (!q.empty()) {
    Frame f = std::move(q.front());
    q.pop_front();
    for (int e = 0; e < f.tri.edge_count(); ++e) {
      if (!f.tri.is_flippable(e)) continue;
      Frame g = space->flip(f, e);
      bool known = false;
      for (const Frame& r : reps) {
        if (!isomorphisms(g.tri, r.tri).empty()) {
          known = true;
          break;
        }
      }
      if (known) continue;
      if (static_cast<int>(reps.size()) >= type_cap) {
        out.reason = "more than " + std::to_string(type_cap) + " triangulation types";
        return out;
      }
      reps.push_back(g);
      q.push_back(std::move(g));
    }
  }
  out.triangulation_types = static_cast<int>(reps.size());

  for (const Frame& r : reps) {
    std::unordered_set<Triangulation, TriangulationHash> seen{r.tri};
    std::deque<std::pair<Frame, int>> ball{{r, 0}};
    while (!ball.empty()) {
      auto [f, d] = std::move(ball.front());
      ball.pop_front();
      for (int e = 0; e < f.tri.edge_count(); ++e) {
        auto id = space->find(space->to_base(edge_arc(f.tri, e), f));
        if (!id || !target.has_vertex(*id)) {
          out.reason = "an arc within " + std::to_string(radius) + " flips of a type representative is outside the target";
          return out;
        }
      }
      if (d == radius) continue;
      for (int e = 0; e < f.tri.edge_count(); ++e) {
        if (!f.tri.is_flippable(e)) continue;
        Frame g = space->flip(f, e);
        if (seen.insert(g.tri).second) ball.emplace_back(std::move(g), d + 1);
      }
    }
  }
  out.sound = true;
  out.reason = "every triangulation type has its " + std::to_string(radius) + "-flip ball inside the target";
  return out;
}

namespace {

// Drops paths that are prefixes of other paths.
std::vector<FlipPath> maximal_paths(const std::map<ArcId, FlipPath>& paths) {
  std::set<std::vector<int>> all;
  for (const auto& [a, p] : paths) all.insert(p.flips);
  std::vector<FlipPath> out;
  for (auto it = all.begin(); it != all.end(); ++it) {
    auto next = std::next(it);
    const bool prefix = next != all.end() && next->size() > it->size() &&
                        std::equal(it->begin(), it->end(), next->begin());
    if (!prefix) out.push_back({*it});
  }
  return out;
}

RigidityReport run_check(const std::shared_ptr<const FiniteComplex>& x, const std::optional<Frame>& base,
                         const std::map<ArcId, FlipPath>& paths, int radius,
                         const std::shared_ptr<const FiniteComplex>& target, const RigidityOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  RigidityReport report;
  report.source_surface = x->space()->surface();
  report.target_surface = target->space()->surface();
  report.applicable = base.has_value();
  report.soundness = truncation_soundness(*target, radius);
  const std::vector<FlipPath> walks = maximal_paths(paths);

  auto classify = [&](const SimplicialMap& m) {
    ++report.maps_examined;
    if (!base) return;
    std::string reason;
    try {
      const FrameIsomorphism f = homeomorphism_from_map(m, *base);
      if (f.alternatives > 1) ++report.symmetric_maps;
      for (const FlipPath& p : walks) {
        const Propagation pr = propagate(m, f, p);
        if (pr.conflict) {
          reason = "Conflict: " + pr.reason;
          break;
        }
      }
      if (reason.empty()) {
        for (int v = 0; v < x->vertex_count(); ++v) {
          auto id = f.target_space->find(push_arc(f, x->space()->coords(x->vertex(v))));
          if (!id || *id != target->vertex(m.assignment[v])) {
            reason = "not induced at arc " + std::to_string(x->vertex(v));
            break;
          }
        }
      }
    } catch (const Error& err) {
      reason = err.what();
    }
    if (reason.empty()) {
      ++report.maps_induced;
      return;
    }
    ++report.counterexample_count;
    if (static_cast<int>(report.counterexamples.size()) < opts.keep_counterexamples) {
      report.counterexamples.push_back(m);
      report.reasons.push_back(reason);
    }
  };

  MapSearchOptions search;
  search.limit = opts.map_limit;
  search.threads = opts.threads;
  if (opts.threads > 1) {
    bool cut = false;
    for (const auto& m : collect_locally_injective_maps(x, target, search, &cut)) classify(m);
    report.truncation_flag = cut;
  } else {
    const MapSearchResult r = enumerate_locally_injective_maps(x, target, [&](const SimplicialMap& m) {
      classify(m);
      return true;
    }, search);
    report.truncation_flag = r.truncated;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

} // namespace

RigidityReport check_rigidity(const RigidSetReport& x, const std::shared_ptr<const FiniteComplex>& target,
                              const RigidityOptions& opts) {
  const auto& space = x.complex->space();
  if (!(x.base == space->base())) throw Error(ErrorKind::Precondition, "report base differs from its arc space");
  std::optional<Frame> base = space->base_frame();
  for (ArcId a : space->frame_arcs(*base)) {
    if (!x.complex->has_vertex(a)) base.reset();
  }
  int radius = 0;
  for (const auto& [a, p] : x.paths) radius = std::max(radius, static_cast<int>(p.flips.size()));
  return run_check(x.complex, base, x.paths, radius, target, opts);
}

RigidityReport check_rigidity(const std::shared_ptr<const FiniteComplex>& x,
                              const std::shared_ptr<const FiniteComplex>& target, const RigidityOptions& opts) {
  const auto& space = x->space();
  const int n = surface_invariants(space->surface()).arcs_per_triangulation;
  std::optional<Frame> base;
  int radius = 0;
  // Triangulations of x and their flip adjacency give the radius.
  std::vector<Simplex> tris;
  for (const auto& s : x->maximal_simplices()) {
    if (n > 0 && static_cast<int>(s.size()) == n) tris.push_back(s);
  }
  if (!tris.empty()) {
    std::vector<ArcId> arcs;
    for (int v : tris.front()) arcs.push_back(x->vertex(v));
    base = space->complete_to_triangulation(arcs);
    std::vector<int> dist(tris.size(), -1);
    dist[0] = 0;
    std::deque<int> q{0};
    while (!q.empty()) {
      const int i = q.front();
      q.pop_front();
      for (std::size_t j = 0; j < tris.size(); ++j) {
        if (dist[j] >= 0) continue;
        Simplex common;
        std::set_intersection(tris[i].begin(), tris[i].end(), tris[j].begin(), tris[j].end(),
                              std::back_inserter(common));
        if (static_cast<int>(common.size()) == n - 1) {
          dist[j] = dist[i] + 1;
          q.push_back(static_cast<int>(j));
        }
      }
    }
    std::set<int> covered;
    for (std::size_t i = 0; i < tris.size(); ++i) {
      if (dist[i] < 0) continue;
      radius = std::max(radius, dist[i]);
      covered.insert(tris[i].begin(), tris[i].end());
    }
    RigidityReport r = run_check(x, base, {}, radius, target, opts);
    if (static_cast<int>(covered.size()) != x->vertex_count()) {
      r.soundness.sound = false;
      r.soundness.reason = "some vertices lie on no triangulation reachable inside the set";
    }
    return r;
  }
  return run_check(x, base, {}, radius, target, opts);
}

std::vector<Surface> equal_dimension_surfaces(const Surface& s) {
  const int k = 6 * s.genus + 3 * s.marked_points;
  std::vector<Surface> out;
  for (int g = 0; 6 * g + 3 <= k; ++g) {
    const int rest = k - 6 * g;
    if (rest % 3 == 0) out.push_back({g, rest / 3});
  }
  return out;
}

} // namespace rigid
