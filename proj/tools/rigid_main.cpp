// rigid: build, verify, enumerate and export finite rigid sets of arc complexes.
//
// Exit codes: 0 success (verify: rigid with a sound truncation), 1 verify found
// counterexamples, 2 verify hit the map cap, 3 verify inconclusive (truncation
// not sound or the set holds no triangulation), 4 error (JSON on stdout).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "rigid/error.h"
#include "rigid/farey.h"
#include "rigid/io.h"
#include "rigid/isomorphism.h"

using namespace rigid;

namespace {

constexpr int kExitCounterexample = 1;
constexpr int kExitCap = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitError = 4;

Surface parse_surface(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::InvalidSurface, "expected g,n but got " + text);
  try {
    return Surface{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidSurface, "expected g,n but got " + text);
  }
}

// Reference strings look like "S1,2/base".
Surface surface_of_reference(const std::string& ref) {
  if (ref.size() < 2 || ref[0] != 'S') throw Error(ErrorKind::Malformed, "unknown reference " + ref);
  return parse_surface(ref.substr(1, ref.find('/') - 1));
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Malformed, "cannot write " + path);
  out << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Malformed, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Malformed, path + ": " + e.what());
  }
}

int env_threads() {
  const char* v = std::getenv("RIGID_THREADS");
  if (!v) return 1;
  const int n = std::atoi(v);
  return n > 0 ? n : 1;
}

void check_surface(const Surface& s) {
  const SurfaceInvariants inv = surface_invariants(s);
  if (inv.empty_complex) throw Error(ErrorKind::EmptyComplex, s.name() + " carries no essential arcs");
}

struct Options {
  std::string surface = "0,4";
  bool farey = false;
  std::string output;
  std::string input;
  std::string target;
  std::string format = "json";
  std::string what = "complex";
  long long bound = 4;
  long long farey_height = 34;
  long long cap = 0;
  int exhaust = 0;
  int threads = 0;
  unsigned seed = 20240611;
  bool no_timing = false;
  bool sweep = false;
};

std::shared_ptr<const FiniteComplex> full_truncation(const Surface& s, long long bound,
                                                     std::shared_ptr<ArcSpace>* space_out = nullptr) {
  auto space = std::make_shared<ArcSpace>(s);
  std::vector<ArcId> ids;
  for (const auto& a : enumerate_arcs(s, bound)) ids.push_back(space->intern(a.coords));
  if (space_out) *space_out = space;
  return std::make_shared<const FiniteComplex>(build_complex(space, ids));
}

int cmd_build(const Options& o) {
  const Surface s = parse_surface(o.surface);
  check_surface(s);
  RigidSetReport report = [&] {
    if (o.farey || s == Surface{1, 1}) {
      if (!(s == Surface{1, 1})) throw Error(ErrorKind::Precondition, "--farey needs --surface 1,1");
      FareyModel m;
      return farey_rigid_report(m);
    }
    auto space = std::make_shared<ArcSpace>(s);
    RigidBuilder builder(space);
    RigidSetReport r = builder.X();
    if (o.exhaust > 0) {
      const auto arcs = enumerate_arcs(s, o.bound);
      for (int i = 0; i < o.exhaust && i < static_cast<int>(arcs.size()); ++i)
        r = builder.exhaustion_step(r, space->intern(arcs[i].coords));
    }
    return r;
  }();
  emit(to_json(report).dump(2) + "\n", o.output);
  return 0;
}

int verdict(const RigidityReport& r) {
  if (r.counterexample_count > 0) return kExitCounterexample;
  if (r.truncation_flag) return kExitCap;
  if (!r.rigid()) return kExitInconclusive;
  return 0;
}

int cmd_verify(const Options& o) {
  if (o.input.empty()) throw Error(ErrorKind::Precondition, "verify needs a rigid set file");
  const json j = read_json(o.input);
  RigidityOptions ropts;
  if (o.cap > 0) ropts.map_limit = o.cap;
  ropts.threads = o.threads > 0 ? o.threads : env_threads();

  std::optional<RigidSetReport> report;
  std::shared_ptr<const FiniteComplex> plain;
  if (j.contains("base")) {
    report = report_from_json(j);
  } else {
    const Surface s = surface_of_reference(j.at("reference").get<std::string>());
    auto space = std::make_shared<ArcSpace>(s);
    plain = std::make_shared<const FiniteComplex>(complex_from_json(j, space));
  }
  const Surface source = report ? report->complex->space()->surface() : plain->space()->surface();

  auto run = [&](const std::shared_ptr<const FiniteComplex>& target) {
    return report ? check_rigidity(*report, target, ropts) : check_rigidity(plain, target, ropts);
  };
  auto dump = [&](const RigidityReport& r, const json& truncation) {
    json out = to_json(r, truncation);
    if (o.no_timing) out.erase("seconds");
    return out;
  };

  if (o.sweep) {
    json all = json::array();
    int code = 0;
    for (const Surface& t : equal_dimension_surfaces(source)) {
      if (!surface_invariants(t).has_triangulations) continue;
      const RigidityReport r = run(full_truncation(t, o.bound));
      all.push_back(dump(r, {{"kind", "coordinate-sum"}, {"bound", o.bound}}));
      code = std::max(code, verdict(r));
    }
    emit(all.dump(2) + "\n", o.output);
    return code;
  }

  std::shared_ptr<const FiniteComplex> target;
  json truncation;
  std::optional<FareyModel> farey;
  const std::string target_name = o.target.empty() ? source.name().substr(1) : o.target;
  const Surface ts = parse_surface(target_name);
  check_surface(ts);
  if (ts == Surface{1, 1}) {
    farey.emplace();
    target = std::make_shared<const FiniteComplex>(farey_truncation(*farey, o.farey_height));
    truncation = {{"kind", "farey-height"}, {"bound", o.farey_height}};
  } else {
    target = full_truncation(ts, o.bound);
    truncation = {{"kind", "coordinate-sum"}, {"bound", o.bound}};
  }
  const RigidityReport r = run(target);
  emit(dump(r, truncation).dump(2) + "\n", o.output);
  return verdict(r);
}

int cmd_enumerate(const Options& o) {
  const Surface s = parse_surface(o.surface);
  check_surface(s);
  json arcs = json::array();
  std::string reference;
  if (o.farey) {
    FareyModel m;
    const FiniteComplex t = farey_truncation(m, o.farey_height);
    reference = m.space()->reference();
    for (ArcId a : t.vertices()) arcs.push_back({{"slope", m.slope_of(a)->str()}, {"coords", m.space()->coords(a)}});
  } else {
    reference = base_reference(s);
    for (const auto& a : enumerate_arcs(s, o.bound)) arcs.push_back(a.coords);
  }
  json out{{"reference", reference}, {"bound", o.farey ? o.farey_height : o.bound}, {"count", arcs.size()},
           {"arcs", arcs}};
  emit(out.dump(2) + "\n", o.output);
  return 0;
}

int cmd_export(const Options& o) {
  if (o.format != "json" && o.format != "dot") throw Error(ErrorKind::Precondition, "format must be json or dot");
  if (o.what == "triangulation") {
    const Surface s = parse_surface(o.surface);
    check_surface(s);
    const Triangulation t = base_triangulation(s);
    emit(o.format == "dot" ? triangulation_dot(t) : to_json(t).dump(2) + "\n", o.output);
    return 0;
  }
  if (o.what != "complex") throw Error(ErrorKind::Precondition, "--what must be complex or triangulation");

  std::shared_ptr<const FiniteComplex> c;
  std::optional<FareyModel> farey;
  json doc;
  if (!o.input.empty()) {
    const json j = read_json(o.input);
    if (j.contains("base")) {
      const RigidSetReport r = report_from_json(j);
      c = r.complex;
      doc = to_json(r);
    } else {
      const Surface s = surface_of_reference(j.at("reference").get<std::string>());
      c = std::make_shared<const FiniteComplex>(complex_from_json(j, std::make_shared<ArcSpace>(s)));
    }
  } else {
    const Surface s = parse_surface(o.surface);
    check_surface(s);
    if (o.farey) {
      farey.emplace();
      c = std::make_shared<const FiniteComplex>(farey_truncation(*farey, o.farey_height));
    } else {
      c = full_truncation(s, o.bound);
    }
  }
  if (o.format == "dot") {
    std::function<std::string(ArcId)> label;
    if (farey) label = [&](ArcId a) { return farey->slope_of(a)->str(); };
    emit(complex_dot(*c, label), o.output);
  } else {
    emit((doc.is_null() ? to_json(*c) : doc).dump(2) + "\n", o.output);
  }
  return 0;
}

int cmd_selftest(const Options& o) {
  int failures = 0;
  auto line = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };

  const auto census = enumerate_arcs(Surface{0, 3}, 8);
  auto a03 = full_truncation(Surface{0, 3}, 8);
  const auto f = a03->face_counts();
  line(census.size() == 6 && f.size() == 3 && f[1] == 9 && f[2] == 4, "S0,3 census: 6 arcs, 9 edges, 4 triangles");

  FareyModel m;
  bool farey_ok = true;
  std::vector<Slope> slopes;
  for (long long q = 0; q <= 5; ++q) {
    for (long long p = -5; p <= 5; ++p) {
      if (std::gcd(p, q) == 1 && (q > 0 || p == 1)) slopes.push_back({p, q});
    }
  }
  for (const Slope& a : slopes) {
    for (const Slope& b : slopes) {
      const long long want = a == b ? 0 : farey_det(a, b) - 1;
      if (m.space()->intersection(m.arc(a), m.arc(b)) != want) farey_ok = false;
    }
  }
  line(farey_ok, "torus slopes: arc intersection equals |ps - qr| - 1");

  std::mt19937 rng(o.seed);
  bool flips_ok = true;
  for (int g = 0; g <= 2; ++g) {
    for (int n = 1; n <= 4; ++n) {
      const Surface s{g, n};
      if (!surface_invariants(s).has_triangulations) continue;
      Triangulation t = base_triangulation(s);
      for (int k = 0; k < 50; ++k) {
        const int e = static_cast<int>(rng() % t.edge_count());
        if (!t.is_flippable(e)) continue;
        Triangulation u = t.flip(e);
        if (!(u.flip(e) == t) || !(u.surface() == s)) flips_ok = false;
        t = u;
      }
    }
  }
  line(flips_ok, "flips are involutions and keep the surface");

  const RigidSetReport fr = farey_rigid_report(m);
  auto trunc = std::make_shared<const FiniteComplex>(farey_truncation(m, 8));
  const RigidityReport rr = check_rigidity(fr, trunc);
  line(rr.rigid() && rr.maps_examined > 0, "torus rigid set against height-8 slopes");
  std::cout << "seed " << o.seed << "\n";
  return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite rigid sets in arc complexes"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "Write a rigid set report");
  build->add_option("--surface", o.surface, "genus,marked points");
  build->add_flag("--farey", o.farey, "Torus rigid set on Farey slopes");
  build->add_option("--exhaust", o.exhaust, "Exhaustion steps over enumerated arcs");
  build->add_option("--bound", o.bound, "Coordinate-sum bound for the exhaustion arcs");
  build->add_option("-o,--output", o.output, "Output file (stdout by default)");

  auto* verify = app.add_subcommand("verify", "Check a rigid set against a truncated target");
  verify->add_option("input", o.input, "Report or complex JSON")->required();
  verify->add_option("--target", o.target, "Target surface g,n (defaults to the source surface)");
  verify->add_option("--bound", o.bound, "Coordinate-sum bound of the target truncation");
  verify->add_option("--farey-height", o.farey_height, "Slope height bound for a torus target");
  verify->add_option("--cap", o.cap, "Stop after this many maps");
  verify->add_option("--threads", o.threads, "Search workers (default RIGID_THREADS or 1)");
  verify->add_flag("--sweep", o.sweep, "Every target surface of equal dimension");
  verify->add_flag("--no-timing", o.no_timing, "Omit wall-clock time");
  verify->add_option("-o,--output", o.output, "Output file");

  auto* enumerate = app.add_subcommand("enumerate", "List arcs below a bound");
  enumerate->add_option("--surface", o.surface, "genus,marked points");
  enumerate->add_option("--bound", o.bound, "Coordinate-sum bound");
  enumerate->add_flag("--farey", o.farey, "Torus slopes instead of coordinate sums");
  enumerate->add_option("--farey-height", o.farey_height, "Slope height bound");
  enumerate->add_option("-o,--output", o.output, "Output file");

  auto* exp = app.add_subcommand("export", "Write complexes or triangulations as JSON or DOT");
  exp->add_option("--surface", o.surface, "genus,marked points");
  exp->add_option("--bound", o.bound, "Coordinate-sum bound");
  exp->add_flag("--farey", o.farey, "Torus slopes");
  exp->add_option("--farey-height", o.farey_height, "Slope height bound");
  exp->add_option("--input", o.input, "Convert an existing report or complex");
  exp->add_option("--format", o.format, "json or dot");
  exp->add_option("--what", o.what, "complex or triangulation");
  exp->add_option("-o,--output", o.output, "Output file");

  auto* self = app.add_subcommand("selftest", "Quick internal checks");
  self->add_option("--seed", o.seed, "Seed for random flips");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*exp) return cmd_export(o);
    if (*self) return cmd_selftest(o);
  } catch (const json::exception& e) {
    std::cout << error_json(Error(ErrorKind::Malformed, e.what())).dump() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cout << error_json(e).dump() << "\n";
    return kExitError;
  }
  return kExitError;
}
