#include "rigid/io.h"

#include <sstream>

#include "rigid/error.h"

namespace rigid {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::Malformed, what); }

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    malformed(std::string(what) + ": " + e.what());
  }
}

} // namespace

json to_json(const Triangulation& t) {
  json tris = json::array();
  for (const auto& tri : t.triangles()) {
    json sides = json::array();
    for (const Side& s : tri) sides.push_back({{"edge", s.edge}, {"dir", s.dir}});
    tris.push_back(sides);
  }
  return {{"edge_count", t.edge_count()}, {"triangles", tris}};
}

Triangulation triangulation_from_json(const json& j) {
  return guarded("triangulation", [&] {
    const int n = j.at("edge_count").get<int>();
    std::vector<TriangleSides> tris;
    for (const auto& tj : j.at("triangles")) {
      if (tj.size() != 3) malformed("triangle without three sides");
      TriangleSides t;
      for (int k = 0; k < 3; ++k) t[k] = {tj[k].at("edge").get<int>(), tj[k].at("dir").get<int>()};
      tris.push_back(t);
    }
    return Triangulation(n, std::move(tris));
  });
}

json to_json(const ArcCoordinates& a) { return {{"reference", a.reference}, {"coords", a.coords}}; }

ArcCoordinates arc_from_json(const json& j) {
  return guarded("arc", [&] {
    return ArcCoordinates{j.at("reference").get<std::string>(), j.at("coords").get<Coords>()};
  });
}

json to_json(const FiniteComplex& c) {
  json arcs = json::array();
  for (ArcId a : c.vertices()) arcs.push_back(c.space() ? json(c.space()->coords(a)) : json());
  return {{"reference", c.space() ? c.space()->reference() : std::string()},
          {"arcs", arcs},
          {"vertices", c.vertices()},
          {"simplices", c.maximal_simplices()}};
}

FiniteComplex complex_from_json(const json& j, const std::shared_ptr<ArcSpace>& space) {
  return guarded("complex", [&] {
    if (j.at("reference").get<std::string>() != space->reference())
      malformed("complex over " + j.at("reference").get<std::string>() + ", expected " + space->reference());
    std::vector<ArcId> ids;
    for (const auto& a : j.at("arcs")) ids.push_back(space->intern(a.get<Coords>()));
    std::vector<std::vector<ArcId>> simplices;
    for (const auto& s : j.at("simplices")) {
      std::vector<ArcId> out;
      for (const auto& i : s) out.push_back(ids.at(i.get<std::size_t>()));
      simplices.push_back(std::move(out));
    }
    return FiniteComplex(space, ids, simplices);
  });
}

json to_json(const SimplicialMap& m) { return {{"assignment", m.assignment}}; }

SimplicialMap map_from_json(const json& j, const std::shared_ptr<const FiniteComplex>& source,
                            const std::shared_ptr<const FiniteComplex>& target) {
  return guarded("map", [&] {
    SimplicialMap m{source, target, j.at("assignment").get<std::vector<int>>()};
    if (static_cast<int>(m.assignment.size()) != source->vertex_count()) malformed("assignment is not total");
    for (int t : m.assignment) {
      if (t < 0 || t >= target->vertex_count()) malformed("assignment index out of range");
    }
    return m;
  });
}

json to_json(const RigidSetReport& r) {
  json out = to_json(*r.complex);
  out["base"] = to_json(r.base);
  json paths = json::object(), tags = json::object();
  for (const auto& [a, p] : r.paths) paths[std::to_string(a)] = p.flips;
  for (const auto& [a, t] : r.provenance) tags[std::to_string(a)] = t;
  out["paths"] = paths;
  out["provenance"] = tags;
  return out;
}

RigidSetReport report_from_json(const json& j) {
  return guarded("report", [&] {
    Triangulation base = triangulation_from_json(j.at("base"));
    auto space = std::make_shared<ArcSpace>(base, j.at("reference").get<std::string>());
    auto complex = std::make_shared<const FiniteComplex>(complex_from_json(j, space));
    // Stored ids belong to the writer; translate through the arc list.
    std::map<ArcId, ArcId> id;
    const auto& old = j.at("vertices");
    const auto& arcs = j.at("arcs");
    if (old.size() != arcs.size()) malformed("vertices and arcs differ in length");
    for (std::size_t i = 0; i < old.size(); ++i) id[old[i].get<ArcId>()] = *space->find(arcs[i].get<Coords>());
    RigidSetReport r{complex, base, {}, {}};
    for (const auto& [k, v] : j.at("paths").items()) r.paths[id.at(std::stoi(k))] = FlipPath{v.get<std::vector<int>>()};
    for (const auto& [k, v] : j.at("provenance").items()) r.provenance[id.at(std::stoi(k))] = v.get<std::string>();
    return r;
  });
}

json to_json(const RigidityReport& r, const json& truncation) {
  json cex = json::array();
  for (std::size_t i = 0; i < r.counterexamples.size(); ++i) {
    const SimplicialMap& m = r.counterexamples[i];
    json pairs = json::array();
    for (int v = 0; v < m.source->vertex_count(); ++v) {
      pairs.push_back({{"source", m.source->space()->coords(m.source->vertex(v))},
                       {"image", m.target->space()->coords(m.target->vertex(m.assignment[v]))}});
    }
    cex.push_back({{"assignment", m.assignment}, {"arcs", pairs}, {"reason", r.reasons[i]}});
  }
  return {{"source_surface", r.source_surface.name()},
          {"target_surface", r.target_surface.name()},
          {"applicable", r.applicable},
          {"maps_examined", r.maps_examined},
          {"maps_induced", r.maps_induced},
          {"counterexample_count", r.counterexample_count},
          {"symmetric_maps", r.symmetric_maps},
          {"truncation_flag", r.truncation_flag},
          {"truncation", truncation},
          {"sound", r.soundness.sound},
          {"soundness", {{"radius", r.soundness.radius},
                         {"triangulation_types", r.soundness.triangulation_types},
                         {"reason", r.soundness.reason}}},
          {"rigid", r.rigid()},
          {"counterexamples", cex},
          {"seconds", r.seconds}};
}

json error_json(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return {{"error", to_string(err->kind())}, {"message", e.what()}};
  return {{"error", "Internal"}, {"message", e.what()}};
}

std::string triangulation_dot(const Triangulation& t) {
  std::ostringstream out;
  out << "graph triangulation {\n";
  for (int k = 0; k < t.triangle_count(); ++k) out << "  t" << k << ";\n";
  for (int e = 0; e < t.edge_count(); ++e) {
    const auto& s = t.edge_sides(e);
    out << "  t" << s[0].tri << " -- t" << s[1].tri << " [label=\"" << e << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string complex_dot(const FiniteComplex& c, const std::function<std::string(ArcId)>& label) {
  std::ostringstream out;
  out << "graph complex {\n";
  for (ArcId a : c.vertices()) {
    std::string text;
    if (label) {
      text = label(a);
    } else if (c.space()) {
      text = json(c.space()->coords(a)).dump();
    } else {
      text = std::to_string(a);
    }
    out << "  v" << a << " [label=\"" << text << "\"];\n";
  }
  for (int i = 0; i < c.vertex_count(); ++i) {
    for (int j : c.neighbours(i)) {
      if (j > i) out << "  v" << c.vertex(i) << " -- v" << c.vertex(j) << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

} // namespace rigid
