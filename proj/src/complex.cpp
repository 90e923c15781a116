#include "rigid/complex.h"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "rigid/error.h"

namespace rigid {

namespace {

bool is_subset(const Simplex& small, const Simplex& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Bron-Kerbosch with pivoting over sorted adjacency lists.
void maximal_cliques(const std::vector<std::vector<int>>& adj, std::vector<int>& r, std::vector<int> p,
                     std::vector<int> x, std::vector<Simplex>& out) {
  if (p.empty() && x.empty()) {
    Simplex s = r;
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
    return;
  }
  int pivot = -1;
  std::size_t best = 0;
  for (const auto* pool : {&p, &x}) {
    for (int u : *pool) {
      const std::size_t k = sorted_intersection(p, adj[u]).size();
      if (pivot < 0 || k > best) {
        pivot = u;
        best = k;
      }
    }
  }
  std::vector<int> todo;
  std::set_difference(p.begin(), p.end(), adj[pivot].begin(), adj[pivot].end(), std::back_inserter(todo));
  for (int v : todo) {
    r.push_back(v);
    maximal_cliques(adj, r, sorted_intersection(p, adj[v]), sorted_intersection(x, adj[v]), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.insert(std::upper_bound(x.begin(), x.end(), v), v);
  }
}

} // namespace

FiniteComplex::FiniteComplex(std::shared_ptr<ArcSpace> space, std::vector<ArcId> vertices,
                             const std::vector<std::vector<ArcId>>& simplices)
    : space_(std::move(space)), vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());

  std::vector<Simplex> all;
  for (const auto& s : simplices) {
    Simplex idx;
    for (ArcId a : s) {
      auto i = index_of(a);
      if (!i) throw Error(ErrorKind::UnknownVertex, "simplex vertex " + std::to_string(a) + " is not a vertex");
      idx.push_back(*i);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (!idx.empty()) all.push_back(std::move(idx));
  }
  for (int i = 0; i < vertex_count(); ++i) all.push_back({i});

  // Larger simplices first, so every candidate is compared against the kept
  // simplices through one of its vertices.
  std::sort(all.begin(), all.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  at_.assign(vertices_.size(), {});
  std::vector<Simplex> kept;
  for (Simplex& s : all) {
    bool covered = false;
    for (int k : at_[s.front()]) {
      if (is_subset(s, kept[k])) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    for (int v : s) at_[v].push_back(static_cast<int>(kept.size()));
    kept.push_back(std::move(s));
  }
  // Canonical order.
  std::sort(kept.begin(), kept.end());
  maximal_ = std::move(kept);
  at_.assign(vertices_.size(), {});
  std::vector<std::set<int>> adj(vertices_.size());
  for (int k = 0; k < static_cast<int>(maximal_.size()); ++k) {
    for (int v : maximal_[k]) {
      at_[v].push_back(k);
      for (int w : maximal_[k]) {
        if (w != v) adj[v].insert(w);
      }
    }
  }
  adj_.resize(vertices_.size());
  for (std::size_t v = 0; v < adj.size(); ++v) adj_[v].assign(adj[v].begin(), adj[v].end());
}

std::optional<int> FiniteComplex::index_of(ArcId a) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), a);
  if (it == vertices_.end() || *it != a) return std::nullopt;
  return static_cast<int>(it - vertices_.begin());
}

bool FiniteComplex::adjacent(int i, int j) const {
  const auto& n = adj_.at(i);
  return std::binary_search(n.begin(), n.end(), j);
}

int FiniteComplex::dimension() const {
  std::size_t m = 0;
  for (const auto& s : maximal_) m = std::max(m, s.size());
  return static_cast<int>(m) - 1;
}

bool FiniteComplex::contains_simplex(Simplex s) const {
  if (s.empty()) return true;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.front() < 0 || s.back() >= vertex_count()) return false;
  int pick = s.front();
  for (int v : s) {
    if (at_[v].size() < at_[pick].size()) pick = v;
  }
  for (int k : at_[pick]) {
    if (is_subset(s, maximal_[k])) return true;
  }
  return false;
}

bool FiniteComplex::contains_arcs(const std::vector<ArcId>& arcs) const {
  Simplex s;
  for (ArcId a : arcs) {
    auto i = index_of(a);
    if (!i) return false;
    s.push_back(*i);
  }
  return contains_simplex(std::move(s));
}

std::vector<long long> FiniteComplex::face_counts() const {
  // Distinct faces, enumerated per maximal simplex and deduplicated.
  std::set<Simplex> faces;
  for (const auto& m : maximal_) {
    const std::size_t k = m.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      Simplex f;
      for (std::size_t b = 0; b < k; ++b) {
        if (mask >> b & 1) f.push_back(m[b]);
      }
      faces.insert(std::move(f));
    }
  }
  std::vector<long long> out(static_cast<std::size_t>(std::max(dimension() + 1, 0)), 0);
  for (const auto& f : faces) ++out[f.size() - 1];
  return out;
}

long long FiniteComplex::edge_count() const {
  long long twice = 0;
  for (const auto& n : adj_) twice += static_cast<long long>(n.size());
  return twice / 2;
}

std::vector<std::vector<ArcId>> FiniteComplex::simplex_arcs() const {
  std::vector<std::vector<ArcId>> out;
  for (const auto& s : maximal_) {
    std::vector<ArcId> a;
    for (int v : s) a.push_back(vertices_[v]);
    out.push_back(std::move(a));
  }
  return out;
}

bool FiniteComplex::is_subcomplex_of(const FiniteComplex& o) const {
  for (ArcId a : vertices_) {
    if (!o.has_vertex(a)) return false;
  }
  for (const auto& s : simplex_arcs()) {
    if (!o.contains_arcs(s)) return false;
  }
  return true;
}

FiniteComplex build_complex(const std::shared_ptr<ArcSpace>& space, const std::vector<ArcId>& arcs) {
  std::vector<ArcId> v = arcs;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  space->prepare(v);
  const int n = static_cast<int>(v.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (space->disjoint(v[i], v[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<Simplex> cliques;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::vector<int> r;
  if (n > 0) maximal_cliques(adj, r, all, {}, cliques);
  std::vector<std::vector<ArcId>> simplices;
  for (const auto& c : cliques) {
    std::vector<ArcId> s;
    for (int i : c) s.push_back(v[i]);
    simplices.push_back(std::move(s));
  }
  return FiniteComplex(space, v, simplices);
}

FiniteComplex span(const FiniteComplex& ambient, const std::vector<ArcId>& vertices) {
  std::vector<ArcId> v = vertices;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<bool> keep(ambient.vertex_count(), false);
  for (ArcId a : v) {
    auto i = ambient.index_of(a);
    if (!i) throw Error(ErrorKind::VertexNotInAmbient, "arc " + std::to_string(a) + " is not in the ambient complex");
    keep[*i] = true;
  }
  std::vector<std::vector<ArcId>> simplices;
  for (const auto& s : ambient.maximal_simplices()) {
    std::vector<ArcId> part;
    for (int i : s) {
      if (keep[i]) part.push_back(ambient.vertex(i));
    }
    if (!part.empty()) simplices.push_back(std::move(part));
  }
  return FiniteComplex(ambient.space(), v, simplices);
}

FiniteComplex span(const FiniteComplex& ambient, const std::vector<std::vector<ArcId>>& simplices) {
  std::vector<ArcId> v;
  for (const auto& s : simplices) v.insert(v.end(), s.begin(), s.end());
  return span(ambient, v);
}

std::vector<std::vector<ArcId>> star(const FiniteComplex& c, ArcId v) {
  auto i = c.index_of(v);
  if (!i) throw Error(ErrorKind::UnknownVertex, "arc " + std::to_string(v) + " is not a vertex");
  std::set<std::vector<ArcId>> out;
  for (int k : c.simplices_at(*i)) {
    Simplex rest;
    for (int w : c.maximal_simplices()[k]) {
      if (w != *i) rest.push_back(w);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask) {
      std::vector<ArcId> f{v};
      for (std::size_t b = 0; b < rest.size(); ++b) {
        if (mask >> b & 1) f.push_back(c.vertex(rest[b]));
      }
      std::sort(f.begin(), f.end());
      out.insert(std::move(f));
    }
  }
  return {out.begin(), out.end()};
}

FiniteComplex closed_star(const FiniteComplex& c, ArcId v) {
  auto i = c.index_of(v);
  if (!i) throw Error(ErrorKind::UnknownVertex, "arc " + std::to_string(v) + " is not a vertex");
  std::vector<ArcId> verts{v};
  std::vector<std::vector<ArcId>> simplices;
  for (int k : c.simplices_at(*i)) {
    std::vector<ArcId> s;
    for (int w : c.maximal_simplices()[k]) s.push_back(c.vertex(w));
    verts.insert(verts.end(), s.begin(), s.end());
    simplices.push_back(std::move(s));
  }
  return FiniteComplex(c.space(), verts, simplices);
}

ArcId SimplicialMap::image(ArcId source_vertex) const {
  auto i = source->index_of(source_vertex);
  if (!i) throw Error(ErrorKind::UnknownVertex, "arc " + std::to_string(source_vertex) + " is not in the source");
  return target->vertex(assignment.at(*i));
}

bool is_simplicial(const SimplicialMap& m) {
  if (static_cast<int>(m.assignment.size()) != m.source->vertex_count()) return false;
  for (int t : m.assignment) {
    if (t < 0 || t >= m.target->vertex_count()) return false;
  }
  for (const auto& s : m.source->maximal_simplices()) {
    Simplex img;
    for (int v : s) img.push_back(m.assignment[v]);
    if (!m.target->contains_simplex(std::move(img))) return false;
  }
  return true;
}

bool is_locally_injective(const SimplicialMap& m) {
  if (!is_simplicial(m)) throw Error(ErrorKind::NotSimplicial, "vertex assignment is not simplicial");
  const FiniteComplex& x = *m.source;
  for (int v = 0; v < x.vertex_count(); ++v) {
    std::set<int> seen{m.assignment[v]};
    for (int w : x.neighbours(v)) {
      if (!seen.insert(m.assignment[w]).second) return false;
    }
  }
  return true;
}

bool is_injective(const SimplicialMap& m) {
  std::set<int> seen(m.assignment.begin(), m.assignment.end());
  return seen.size() == m.assignment.size();
}

SimplicialMap compose(const SimplicialMap& first, const SimplicialMap& second) {
  if (!(first.target == second.source || *first.target == *second.source))
    throw Error(ErrorKind::Precondition, "maps do not compose");
  SimplicialMap out{first.source, second.target, {}};
  for (int t : first.assignment) out.assignment.push_back(second.assignment.at(t));
  return out;
}

namespace {

// Backtracking search shared by the streaming and collecting front ends.
class MapSearch {
public:
  MapSearch(const std::shared_ptr<const FiniteComplex>& x, const std::shared_ptr<const FiniteComplex>& target,
            bool injective_only)
      : xp_(x), tp_(target), x_(*x), t_(*target), injective_only_(injective_only) {
    const int n = x_.vertex_count();
    // Most constrained first: start from the largest star, then grow through
    // vertices with the most already-placed neighbours.
    std::vector<int> placed_nbrs(n, 0);
    std::vector<bool> done(n, false);
    for (int k = 0; k < n; ++k) {
      int best = -1;
      for (int v = 0; v < n; ++v) {
        if (done[v]) continue;
        if (best < 0 || placed_nbrs[v] > placed_nbrs[best] ||
            (placed_nbrs[v] == placed_nbrs[best] && x_.neighbours(v).size() > x_.neighbours(best).size()))
          best = v;
      }
      done[best] = true;
      order_.push_back(best);
      for (int w : x_.neighbours(best)) ++placed_nbrs[w];
    }
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[order_[k]] = k;
    before_nbrs_.resize(n);
    before_near_.resize(n);
    closes_.resize(n);
    for (int v = 0; v < n; ++v) {
      std::set<int> near;
      for (int w : x_.neighbours(v)) {
        if (pos[w] < pos[v]) before_nbrs_[v].push_back(w);
        for (int u : x_.neighbours(w)) {
          if (u != v && pos[u] < pos[v] && !x_.adjacent(u, v)) near.insert(u);
        }
      }
      before_near_[v].assign(near.begin(), near.end());
    }
    for (const auto& s : x_.maximal_simplices()) {
      if (s.size() < 3) continue; // edges are covered by adjacency checks
      int last = s.front();
      for (int v : s) {
        if (pos[v] > pos[last]) last = v;
      }
      closes_[last].push_back(&s);
    }
    used_.assign(t_.vertex_count(), 0);
  }

  int first_vertex() const { return order_.empty() ? -1 : order_.front(); }

  // Runs with the first vertex restricted to `firsts` (all when empty). visit
  // returns false to stop.
  bool run(const std::vector<int>& firsts, const std::function<bool(const std::vector<int>&)>& visit) {
    assign_.assign(x_.vertex_count(), -1);
    visit_ = &visit;
    if (order_.empty()) return (*visit_)(assign_);
    const int u = order_.front();
    for (int c : firsts) {
      if (!place(u, c, 0)) return false;
    }
    return true;
  }

  std::vector<int> all_targets() const {
    std::vector<int> out(t_.vertex_count());
    for (int i = 0; i < t_.vertex_count(); ++i) out[i] = i;
    return out;
  }

private:
  bool fits(int u, int c) const {
    if (t_.neighbours(c).size() < x_.neighbours(u).size()) return false;
    if (injective_only_ && used_[c]) return false;
    for (int w : before_nbrs_[u]) {
      if (assign_[w] == c || !t_.adjacent(assign_[w], c)) return false;
    }
    for (int w : before_near_[u]) {
      if (assign_[w] == c) return false;
    }
    return true;
  }

  // Tries c as the image of u = order_[k] and continues from there.
  bool place(int u, int c, std::size_t k) {
    if (!fits(u, c)) return true;
    assign_[u] = c;
    ++used_[c];
    bool ok = true;
    for (const Simplex* s : closes_[u]) {
      Simplex img;
      for (int v : *s) img.push_back(assign_[v]);
      if (!t_.contains_simplex(std::move(img))) {
        ok = false;
        break;
      }
    }
    bool keep_going = true;
    if (ok) keep_going = step(k + 1);
    --used_[c];
    assign_[u] = -1;
    return keep_going;
  }

  bool step(std::size_t k) {
    if (k == order_.size()) return (*visit_)(assign_);
    const int u = order_[k];
    if (!before_nbrs_[u].empty()) {
      // Scan the smallest candidate pool among placed neighbours' links.
      int anchor = before_nbrs_[u].front();
      for (int w : before_nbrs_[u]) {
        if (t_.neighbours(assign_[w]).size() < t_.neighbours(assign_[anchor]).size()) anchor = w;
      }
      for (int c : t_.neighbours(assign_[anchor])) {
        if (!place(u, c, k)) return false;
      }
      return true;
    }
    for (int c = 0; c < t_.vertex_count(); ++c) {
      if (!place(u, c, k)) return false;
    }
    return true;
  }

  std::shared_ptr<const FiniteComplex> xp_, tp_;
  const FiniteComplex& x_;
  const FiniteComplex& t_;
  bool injective_only_;
  std::vector<int> order_;
  std::vector<std::vector<int>> before_nbrs_, before_near_;
  std::vector<std::vector<const Simplex*>> closes_;
  std::vector<int> assign_;
  std::vector<int> used_;
  const std::function<bool(const std::vector<int>&)>* visit_ = nullptr;
};

} // namespace

MapSearchResult enumerate_locally_injective_maps(const std::shared_ptr<const FiniteComplex>& x,
                                                 const std::shared_ptr<const FiniteComplex>& target,
                                                 const std::function<bool(const SimplicialMap&)>& visit,
                                                 const MapSearchOptions& opts) {
  MapSearch search(x, target, opts.injective_only);
  MapSearchResult result;
  search.run(search.all_targets(), [&](const std::vector<int>& a) {
    if (opts.limit && result.found >= *opts.limit) {
      result.truncated = true;
      return false;
    }
    ++result.found;
    return visit(SimplicialMap{x, target, a});
  });
  return result;
}

std::vector<SimplicialMap> collect_locally_injective_maps(const std::shared_ptr<const FiniteComplex>& x,
                                                          const std::shared_ptr<const FiniteComplex>& target,
                                                          const MapSearchOptions& opts, bool* truncated) {
  const int workers = x->vertex_count() == 0 ? 1 : std::max(1, opts.threads);
  const long long cap = opts.limit ? *opts.limit + 1 : -1;
  std::vector<int> firsts = MapSearch(x, target, opts.injective_only).all_targets();
  if (x->vertex_count() == 0) firsts.clear();

  // Worker w handles first images w, w+workers, ...; results keyed by the
  // first image so the merge reproduces the sequential order.
  std::vector<std::map<int, std::vector<std::vector<int>>>> parts(workers);
  auto job = [&](int w) {
    MapSearch search(x, target, opts.injective_only);
    const int u = search.first_vertex();
    long long got = 0;
    std::vector<int> mine;
    for (std::size_t i = w; i < firsts.size(); i += workers) mine.push_back(firsts[i]);
    search.run(x->vertex_count() == 0 ? std::vector<int>{} : mine, [&](const std::vector<int>& a) {
      parts[w][u >= 0 ? a[u] : -1].push_back(a);
      ++got;
      return cap < 0 || got < cap;
    });
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& t : pool) t.join();
  }
  std::map<int, std::vector<std::vector<int>>> merged;
  for (auto& p : parts) {
    for (auto& [k, v] : p) merged[k] = std::move(v);
  }
  std::vector<SimplicialMap> out;
  bool cut = false;
  for (auto& [k, list] : merged) {
    for (auto& a : list) {
      if (opts.limit && static_cast<long long>(out.size()) >= *opts.limit) {
        cut = true;
        break;
      }
      out.push_back(SimplicialMap{x, target, std::move(a)});
    }
    if (cut) break;
  }
  if (truncated) *truncated = cut;
  return out;
}

} // namespace rigid
