#include "hypgeom_cli/cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypgeom/bounds.hpp"
#include "hypgeom/cylinder.hpp"
#include "hypgeom/error.hpp"
#include "hypgeom/random.hpp"
#include "hypgeom/surface.hpp"

namespace hypgeom::cli {

namespace {

using Json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double margulis_eps = kDefaultMargulisEps;
  double tol = kDefaultTol;
  std::optional<std::uint64_t> seed;
  int refinement = 16;
  std::string out_path;
  int threads = 1;

  Json to_json() const {
    Json j;
    j["margulis_eps"] = margulis_eps;
    j["tol"] = tol;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["refinement"] = refinement;
    return j;
  }

  std::uint64_t require_seed(const char* what) const {
    if (!seed) throw CLI::RequiredError(std::string("--seed (required by ") + what + ")");
    return *seed;
  }
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

// --- surfaces ---------------------------------------------------------------

Combinatorics combinatorics_from(const Json& j) {
  Combinatorics c;
  c.vertex_count = j.at("vertex_count").get<int>();
  for (const auto& f : j.at("triangles")) c.triangles.push_back({f.at(0), f.at(1), f.at(2)});
  return c;
}

Triangulation triangulation_from(const Json& j) {
  Triangulation t;
  const Combinatorics c = combinatorics_from(j);
  t.vertex_count = c.vertex_count;
  t.triangles = c.triangles;
  for (const auto& e : j.at("edge_lengths")) t.edge_lengths.push_back({e.at(0), e.at(1), e.at(2)});
  t.face_curvature = j.value("face_curvature", -1.0);
  return t;
}

Json to_json(const PolyhedralSurface& s) {
  Json j;
  j["vertex_count"] = s.vertex_count();
  j["triangles"] = Json::array();
  for (const Face& f : s.faces()) j["triangles"].push_back({f[0], f[1], f[2]});
  j["edge_lengths"] = Json::array();
  for (const auto& [u, v] : s.edges()) j["edge_lengths"].push_back({u, v, s.edge_length(u, v)});
  j["face_curvature"] = s.face_curvature();
  return j;
}

Json to_json(const CurvatureReport& c) {
  Json j;
  j["alexandrov"] = c.alexandrov;
  j["offending"] = c.offending;
  j["cone_angles"] = c.cone_angles;
  return j;
}

Json violations_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const Violation& x : r.violations) v.push_back({{"kind", x.kind}, {"where", x.where}});
  return v;
}

// --- cylinders ----------------------------------------------------------------

Json vec_json(const Vec4& v) { return Json::array({v.x0, v.x1, v.x2, v.x3}); }

Json to_json(const CylGenParams& p) {
  Json j;
  j["translation_length"] = p.translation_length;
  j["offset_plus"] = p.offset_plus;
  j["offset_minus"] = p.offset_minus;
  j["phase"] = p.phase;
  return j;
}

Json to_json(const CylQuad& q) {
  Json j;
  j["h"] = q.h;
  j["l_plus"] = q.l_plus;
  j["l_minus"] = q.l_minus;
  j["diag"] = q.diag;
  if (q.axis) {
    const AxisSolution& a = *q.axis;
    Json ax;
    ax["alpha"] = a.alpha;
    ax["l_O"] = a.l_O;
    ax["h_plus"] = a.h_plus;
    ax["h_minus"] = a.h_minus;
    ax["opposite_sides"] = a.opposite_sides;
    ax["h_O_plus"] = a.h_O_plus;
    ax["h_O_minus"] = a.h_O_minus;
    ax["d"] = a.d;
    ax["d_plus"] = a.d_plus;
    ax["d_minus"] = a.d_minus;
    ax["O0"] = vec_json(a.O0.v());
    ax["O1"] = vec_json(a.O1.v());
    ax["defect"] = a.defect;
    ax["iterations"] = a.iterations;
    ax["max_residual"] = axis_residuals(q).max();
    j["axis"] = ax;
  }
  return j;
}

CylQuad quad_from(const Json& j) {
  return make_cyl_quad(j.at("h").get<double>(), j.at("l_plus").get<double>(),
                       j.at("l_minus").get<double>(), j.at("diag").get<double>());
}

std::vector<Json> records_from(const Json& j) {
  if (j.is_array()) return {j.begin(), j.end()};
  if (j.contains("records")) return {j.at("records").begin(), j.at("records").end()};
  return {j};
}

Json summary_json(const McSummary& s) {
  Json j;
  j["instances"] = s.instances;
  j["failures"] = s.failures;
  j["attempts"] = s.attempts;
  j["worst_margin"] = s.worst_margin;
  j["max_residual"] = s.max_residual;
  return j;
}

Json bound_json(const SeparationBound& b) {
  Json j;
  j["value"] = b.value;
  j["attaining"] = b.attaining().name;
  j["terms"] = Json::array();
  for (const BoundTerm& t : b.terms) {
    j["terms"].push_back({{"name", t.name},
                          {"value", t.vacuous ? Json(nullptr) : Json(t.value)},
                          {"vacuous", t.vacuous},
                          {"log_space", t.log_space}});
  }
  j["warnings"] = b.warnings;
  return j;
}

// --- subcommand bodies ---------------------------------------------------------

struct Result {
  Json body;
  int code = kOk;
};

Result cmd_validate(const RunConfig& cfg, const std::string& path) {
  const Triangulation t = triangulation_from(read_json(path));
  const ValidationReport report = validate(t);
  Result r;
  r.body["ok"] = report.ok();
  r.body["violations"] = violations_json(report);
  if (!report.ok()) {
    r.code = kValidationFailure;
    return r;
  }
  const PolyhedralSurface s(t);
  const CurvatureReport c = curvature_class(s, cfg.tol);
  r.body["curvature"] = to_json(c);
  r.body["euler_characteristic"] = s.euler_characteristic();
  r.body["total_area"] = s.total_area();
  r.body["gauss_bonnet_residual"] = gauss_bonnet_residual(s);
  r.body["clean"] = c.alexandrov;
  if (!c.alexandrov) r.code = kValidationFailure;
  return r;
}

Result cmd_approximate(const RunConfig& cfg, const std::string& oracle_path, const std::string& comb_path) {
  const Json oj = read_json(oracle_path);
  std::optional<Json> cj;
  if (!comb_path.empty()) cj = read_json(comb_path);

  std::unique_ptr<DistanceOracle> oracle;
  std::function<bool(int, int)> defined = [](int, int) { return true; };
  Combinatorics comb;
  if (oj.contains("oracle")) {
    const std::string name = oj.at("oracle").get<std::string>();
    if (name != "h2-grid") throw InvariantError("unknown built-in oracle '" + name + "'");
    H2GridParams p;
    p.cells = oj.value("cells", p.cells);
    p.half_width = oj.value("half_width", p.half_width);
    p.curvature = oj.value("curvature", p.curvature);
    auto grid = std::make_unique<H2GridOracle>(p);
    comb = cj ? combinatorics_from(*cj) : grid->combinatorics();
    oracle = std::move(grid);
  } else {
    if (!cj) throw InvariantError("a pair-table oracle needs a combinatorics file");
    comb = combinatorics_from(*cj);
    std::vector<PairTableOracle::Entry> entries;
    for (const auto& e : oj.at("pairs")) entries.push_back({e.at(0), e.at(1), e.at(2)});
    auto table = std::make_unique<PairTableOracle>(oj.value("vertex_count", comb.vertex_count), entries);
    const PairTableOracle* raw = table.get();
    defined = [raw](int u, int v) { return raw->has(u, v); };
    oracle = std::move(table);
  }
  if (oracle->vertex_count() != comb.vertex_count) {
    throw InvariantError("oracle and combinatorics disagree on the vertex count");
  }

  const ComparisonResult res = comparison_polyhedron(*oracle, comb);

  std::vector<std::pair<int, int>> pairs;
  if (cj && cj->contains("pairs")) {
    for (const auto& p : cj->at("pairs")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  } else {
    for (int u = 0; u < comb.vertex_count; ++u) {
      for (int v = u + 1; v < comb.vertex_count; ++v) {
        if (!res.surface.has_edge(u, v) && defined(u, v)) pairs.emplace_back(u, v);
      }
    }
  }
  const SurfaceOracle approx(res.surface, cfg.refinement);
  const double dev = metric_deviation([&](int u, int v) { return oracle->distance(u, v); },
                                      [&](int u, int v) { return approx.distance(u, v); }, pairs);

  Result r;
  r.body["surface"] = to_json(res.surface);
  r.body["curvature"] = to_json(curvature_class(res.surface, cfg.tol));
  r.body["deviation"] = {{"pairs", pairs.size()}, {"max", dev}};
  return r;
}

Result cmd_distance(const RunConfig& cfg, const std::string& path, int u, int v) {
  const PolyhedralSurface s(triangulation_from(read_json(path)));
  Result r;
  r.body["u"] = u;
  r.body["v"] = v;
  r.body["distance"] = intrinsic_distance(s, u, v, cfg.refinement);
  return r;
}

Result cmd_bound(const RunConfig& cfg, const std::vector<double>& l) {
  BoundInputs in{l[0], l[1], l[2], l[3], cfg.margulis_eps};
  Result r;
  r.body["lengths"] = {{"l_plus_1", l[0]}, {"l_minus_1", l[1]}, {"l_plus_2", l[2]}, {"l_minus_2", l[3]}};
  r.body["bound"] = bound_json(separation_bound(in));
  return r;
}

Result cmd_bound_uniform(const RunConfig& cfg, const std::vector<double>& e) {
  UniformBoundInputs in{{e[0], e[1]}, {e[2], e[3]}, {e[4], e[5]}, {e[6], e[7]}, cfg.margulis_eps};
  Result r;
  Json env;
  const char* names[] = {"plus_1", "minus_1", "plus_2", "minus_2"};
  for (int i = 0; i < 4; ++i) env[names[i]] = {{"upper", e[2 * i]}, {"lower", e[2 * i + 1]}};
  r.body["envelopes"] = env;
  r.body["bound"] = bound_json(uniform_separation_bound(in));
  return r;
}

struct GenerateArgs {
  std::optional<double> translation_length, offset_plus, offset_minus, phase;
  int count = 1;
  int situation = 1;
};

Result cmd_cyl_generate(const RunConfig& cfg, const GenerateArgs& a) {
  Result r;
  r.body["records"] = Json::array();
  if (a.translation_length || a.offset_plus || a.offset_minus || a.phase) {
    CylGenParams p;
    p.translation_length = a.translation_length.value_or(p.translation_length);
    p.offset_plus = a.offset_plus.value_or(p.offset_plus);
    p.offset_minus = a.offset_minus.value_or(p.offset_minus);
    p.phase = a.phase.value_or(p.phase);
    Json rec = to_json(generate_cyl(p));
    rec["generator"] = to_json(p);
    r.body["records"].push_back(rec);
    return r;
  }
  const std::uint64_t seed = cfg.require_seed("random cyl generate");
  for (int i = 0; i < a.count; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    for (;;) {
      const CylGenParams p = random_cyl_params(rng, a.situation == 2);
      if (auto q = try_generate_cyl(p)) {
        Json rec = to_json(*q);
        rec["generator"] = to_json(p);
        r.body["records"].push_back(rec);
        break;
      }
    }
  }
  return r;
}

Result cmd_cyl_solve(const std::string& path, bool with_class) {
  Result r;
  r.body["records"] = Json::array();
  for (const Json& in : records_from(read_json(path))) {
    const CylQuad q = solve_axis(quad_from(in));
    Json rec = to_json(q);
    if (in.contains("generator")) rec["generator"] = in.at("generator");
    if (with_class) {
      const SituationClass c = classify(q);
      rec["class"] = to_string(c);
      if (c == SituationClass::ContainsAxis) rec["midpoint_path_length"] = midpoint_path_length(q);
    }
    r.body["records"].push_back(rec);
  }
  return r;
}

Result cmd_cyl_verify(const RunConfig& cfg, int instances, const std::string& situation) {
  McConfig mc;
  mc.seed = cfg.require_seed("cyl verify");
  mc.instances = instances;
  mc.eps3 = cfg.margulis_eps;
  mc.threads = cfg.threads;
  Result r;
  int failures = 0;
  if (situation == "1" || situation == "both") {
    const McSummary s = verify_situation1(mc);
    r.body["situation1"] = summary_json(s);
    failures += s.failures;
  }
  if (situation == "2" || situation == "both") {
    const McSummary s = verify_situation2(mc);
    r.body["situation2"] = summary_json(s);
    failures += s.failures;
  }
  r.body["pass"] = failures == 0;
  if (failures > 0) r.code = kValidationFailure;
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic geometry toolkit", "hypgeom"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", "hypgeom 0.1.0");

  RunConfig cfg;
  std::uint64_t seed = 0;
  app.add_option("--margulis-eps", cfg.margulis_eps, "Margulis constant eps3")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Cone-angle tolerance")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized subcommands");
  app.add_option("--refinement", cfg.refinement, "Edge subdivisions for intrinsic distances")
      ->check(CLI::Range(1, 4096));
  app.add_option("--out", cfg.out_path, "Write the JSON result here instead of stdout");
  app.add_option("--threads", cfg.threads, "Worker threads for Monte-Carlo batches")->check(CLI::Range(1, 256));

  std::function<Result()> body;

  auto* validate_cmd = app.add_subcommand("validate", "Validate a surface and classify its cone angles");
  std::string surface_path;
  validate_cmd->add_option("surface", surface_path, "Surface JSON file")->required();
  validate_cmd->callback([&] { body = [&] { return cmd_validate(cfg, surface_path); }; });

  auto* approx_cmd = app.add_subcommand("approximate", "Build the comparison polyhedron of a distance oracle");
  std::string oracle_path, comb_path;
  approx_cmd->add_option("oracle", oracle_path, "Oracle JSON file")->required();
  approx_cmd->add_option("combinatorics", comb_path, "Combinatorics JSON file");
  approx_cmd->callback([&] { body = [&] { return cmd_approximate(cfg, oracle_path, comb_path); }; });

  auto* dist_cmd = app.add_subcommand("distance", "Intrinsic distance between two vertices");
  int u = 0, v = 0;
  dist_cmd->add_option("surface", surface_path, "Surface JSON file")->required();
  dist_cmd->add_option("u", u)->required();
  dist_cmd->add_option("v", v)->required();
  dist_cmd->callback([&] { body = [&] { return cmd_distance(cfg, surface_path, u, v); }; });

  auto* bound_cmd = app.add_subcommand("bound", "Boundary separation bound from four curve lengths");
  std::vector<double> lengths;
  bound_cmd->add_option("lengths", lengths, "l_plus_1 l_minus_1 l_plus_2 l_minus_2")
      ->required()
      ->expected(4);
  bound_cmd->callback([&] { body = [&] { return cmd_bound(cfg, lengths); }; });

  auto* uniform_cmd = app.add_subcommand("bound-uniform", "Uniform bound from length envelopes");
  std::vector<double> envelopes;
  uniform_cmd
      ->add_option("envelopes", envelopes,
                   "upper/lower pairs for plus_1 minus_1 plus_2 minus_2 (eight numbers)")
      ->required()
      ->expected(8);
  uniform_cmd->callback([&] { body = [&] { return cmd_bound_uniform(cfg, envelopes); }; });

  auto* cyl_cmd = app.add_subcommand("cyl", "Cylinder fundamental domains");
  cyl_cmd->require_subcommand(1);

  auto* gen_cmd = cyl_cmd->add_subcommand("generate", "Generate fundamental domains");
  GenerateArgs gen;
  gen_cmd->add_option("--translation-length", gen.translation_length);
  gen_cmd->add_option("--offset-plus", gen.offset_plus);
  gen_cmd->add_option("--offset-minus", gen.offset_minus);
  gen_cmd->add_option("--phase", gen.phase);
  gen_cmd->add_option("--count", gen.count, "Number of random records")->check(CLI::Range(1, 1000000));
  gen_cmd->add_option("--situation", gen.situation, "1: axis inside, 2: axis outside")
      ->check(CLI::IsMember({1, 2}));
  gen_cmd->callback([&] { body = [&] { return cmd_cyl_generate(cfg, gen); }; });

  std::string record_path;
  auto* solve_cmd = cyl_cmd->add_subcommand("solve", "Locate the translation axis");
  solve_cmd->add_option("records", record_path, "Record JSON file")->required();
  solve_cmd->callback([&] { body = [&] { return cmd_cyl_solve(record_path, false); }; });

  auto* classify_cmd = cyl_cmd->add_subcommand("classify", "Solve and classify the situation");
  classify_cmd->add_option("records", record_path, "Record JSON file")->required();
  classify_cmd->callback([&] { body = [&] { return cmd_cyl_solve(record_path, true); }; });

  auto* verify_cmd = cyl_cmd->add_subcommand("verify", "Monte-Carlo check of the situation bounds");
  int instances = 500;
  std::string situation = "both";
  verify_cmd->add_option("--instances", instances)->check(CLI::Range(0, 10000000));
  verify_cmd->add_option("--situation", situation)->check(CLI::IsMember({"1", "2", "both"}));
  verify_cmd->callback([&] { body = [&] { return cmd_cyl_verify(cfg, instances, situation); }; });

  std::vector<std::string> storage{"hypgeom"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (*seed_opt) cfg.seed = seed;
    Result r = body();
    Json doc;
    doc["config"] = cfg.to_json();
    for (auto it = r.body.begin(); it != r.body.end(); ++it) doc[it.key()] = it.value();
    const std::string text = doc.dump(2) + "\n";
    if (cfg.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out_path);
      if (!f || !(f << text)) throw IoError("cannot write " + cfg.out_path);
    }
    return r.code;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, err, err);
    return kDomainError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const InvariantError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace hypgeom::cli
