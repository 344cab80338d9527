// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hypgeom/bounds.hpp"
#include "hypgeom/cylinder.hpp"
#include "hypgeom/hyperboloid.hpp"
#include "hypgeom/models.hpp"
#include "hypgeom/random.hpp"
#include "hypgeom/surface.hpp"
#include "hypgeom/trig.hpp"
#include "hypgeom_cli/cli.hpp"
#include "oracles.hpp"

using namespace hypgeom;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

double measured_angle(const HPoint& p, const HPoint& q, const HPoint& r) {
  const Vec4 d = direction_to(p, q).v() - direction_to(p, r).v();
  return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(std::max(0.0, mdot(d, d)))));
}

Outcome isometry_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  double inv = 0.0, prod = 0.0, frame = 0.0, probe = 0.0;
  const auto probes = probe_points();
  for (int k = 0; k < 1000; ++k) {
    const Isometry g = random_isometry(rng, 3.0);
    for (int j = 0; j < 10; ++j) {
      const HPoint p = random_point(rng, 3.0), q = random_point(rng, 3.0);
      inv = std::max(inv, std::abs(dist(g.apply(p), g.apply(q)) - dist(p, q)));
    }
    const Isometry back = isometry_from_frames(Frame::standard(), frame_image(g, Frame::standard()));
    frame = std::max(frame, max_abs_diff(back.matrix(), g.matrix()));
    const std::array<HPoint, 4> images = {g.apply(probes[0]), g.apply(probes[1]), g.apply(probes[2]),
                                          g.apply(probes[3])};
    probe = std::max(probe, max_abs_diff(reconstruct_from_probes(images).matrix(), g.matrix()));
  }
  for (int k = 0; k < 1000; ++k) {
    Isometry g = Isometry::identity();
    for (int j = 0; j < 8; ++j) g = g * random_isometry(rng, 1.0);
    prod = std::max(prod, pseudo_orthogonality_residual(g.matrix()));
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.require(inv < 1e-8, "distance invariance " + fmt(inv));
  o.require(prod < 1e-9, "product residual " + fmt(prod));
  o.require(frame < 1e-8, "frame round trip " + fmt(frame));
  o.require(probe < 1e-8, "probe round trip " + fmt(probe));
  o.require(t < 5.0, "runtime " + fmt(t) + " s");
  if (o.pass)
    o.detail = "invariance " + fmt(inv) + ", products " + fmt(prod) + ", frames " + fmt(frame) + ", probes " +
               fmt(probe) + ", " + fmt(t) + " s";
  return o;
}

Outcome trig_vs_construction() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1002);
  double hyp = 0.0, opp = 0.0, arc = 0.0;
  for (int k = 0; k < 500; ++k) {
    // Right angle at g(origin), legs along two coordinate directions.
    const double a = rng.uniform(0.05, 4.0), b = rng.uniform(0.05, 4.0);
    const Isometry g = random_isometry(rng, 2.0);
    const HPoint C = g.apply(HPoint::origin());
    const HPoint A = g.apply(Isometry::translation(1, b).apply(HPoint::origin()));
    const HPoint B = g.apply(Isometry::translation(2, a).apply(HPoint::origin()));
    const double c = dist(A, B);
    hyp = std::max(hyp, std::abs(right_hypotenuse(a, b) - c) / std::max(1.0, c));
    opp = std::max(opp, std::abs(sinh_opposite(measured_angle(A, B, C), c) - a) / std::max(1.0, a));

    const double l = rng.uniform(0.01, 3.0), h = rng.uniform(0.0, 3.0);
    const HPoint base = Isometry::translation(2, h).apply(HPoint::origin());
    auto curve = [&](double s) { return g.apply(Isometry::translation(1, s).apply(base)).v(); };
    const double q = testing::curve_length(curve, 0.0, l);
    arc = std::max(arc, std::abs(equidistant_length(l, h) - q) / std::max(1.0, q));
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.require(hyp < 1e-7, "hypotenuse " + fmt(hyp));
  o.require(opp < 1e-7, "opposite leg " + fmt(opp));
  o.require(arc < 1e-7, "equidistant arc " + fmt(arc));
  o.require(t < 10.0, "runtime " + fmt(t) + " s");
  if (o.pass)
    o.detail = "hypotenuse " + fmt(hyp) + ", opposite " + fmt(opp) + ", arcs " + fmt(arc) + ", " + fmt(t) + " s";
  return o;
}

KleinPoint random_in_ball(Rng& rng, double radius) {
  const Vec4 u = rng.unit_spatial(3);
  const double r = radius * std::cbrt(rng.uniform());
  return {r * u.x1, r * u.x2, r * u.x3};
}

Outcome homothety_bound() {
  Rng rng(1003);
  const double rho_B = 0.9;
  int held = 0;
  double worst = 1e300;
  for (int k = 0; k < 200; ++k) {
    const KleinPoint a = random_in_ball(rng, rho_B), b = random_in_ball(rng, rho_B);
    const double lambda = rng.uniform(0.5, 1.0);
    const double len = testing::klein_chord_length(a, b);
    const double image = testing::homothety_chord_image_length(a, b, lambda);
    const double slack = image - curve_length_lower_bound({lambda, rho_B}, len);
    worst = std::min(worst, slack);
    if (slack >= -1e-6) ++held;
  }
  int violations = 0;
  for (int i = 1; i <= 10; ++i) {
    const double lambda = i / 10.0;
    double prev_f = 2.0, prev_g = 2.0;
    for (int j = 0; j < 100; ++j) {
      const double rho = 0.99 * j / 100.0;
      const double f = radial_factor(lambda, rho), g = perp_factor(lambda, rho);
      if (f > prev_f || g > prev_g || f > g) ++violations;
      if (i > 1) {
        const double l0 = (i - 1) / 10.0;
        if (radial_factor(l0, rho) > f || perp_factor(l0, rho) > g) ++violations;
      }
      prev_f = f;
      prev_g = g;
    }
  }
  Outcome o;
  o.require(held == 200, std::to_string(held) + "/200 chords");
  o.require(violations == 0, std::to_string(violations) + " grid violations");
  if (o.pass) o.detail = "200/200 chords, min slack " + fmt(worst) + ", 0/1000 grid violations";
  return o;
}

Outcome comparison_idempotence() {
  Outcome o;
  const PolyhedralSurface s(octahedron());
  const SurfaceOracle self(s, 8);
  const ComparisonResult res = comparison_polyhedron(self, s.triangulation().combinatorics());
  double resid = 0.0;
  for (const auto& [u, v] : s.edges()) resid = std::max(resid, std::abs(res.surface.edge_length(u, v) - s.edge_length(u, v)));
  o.require(resid < 1e-12, "self comparison residual " + fmt(resid));

  const H2GridOracle coarse({2, 0.6, -0.5});
  const PolyhedralSurface coarse_surface = comparison_polyhedron(coarse, coarse.combinatorics()).surface;
  std::vector<double> eps, dev;
  for (int m : {2, 4, 8}) {
    const H2GridOracle grid({m, 0.6, -0.5});
    const ComparisonResult r = comparison_polyhedron(grid, grid.combinatorics());
    double d = 0.0;
    for (int v : grid.interior_vertices()) d = std::max(d, std::abs(r.surface.cone_angle(v) - 2 * kPi));
    auto image = [&](int v) {
      for (int sh = 0; sh < 2; ++sh)
        for (int i = 0; i <= 2; ++i)
          for (int j = 0; j <= 2; ++j)
            if (coarse.vertex_at(sh, i, j) == v) return grid.vertex_at(sh, i * m / 2, j * m / 2);
      return -1;
    };
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < coarse.vertex_count(); ++u)
      for (int v = u + 1; v < coarse.vertex_count(); ++v)
        if (!coarse_surface.has_edge(u, v)) pairs.emplace_back(image(u), image(v));
    const SurfaceOracle approx(r.surface, 8);
    eps.push_back(metric_deviation([&](int u, int v) { return grid.distance(u, v); },
                                   [&](int u, int v) { return approx.distance(u, v); }, pairs));
    dev.push_back(d);
  }
  o.require(eps[0] > eps[1] && eps[1] > eps[2],
            "eps' not decreasing " + fmt(eps[0]) + " " + fmt(eps[1]) + " " + fmt(eps[2]));
  o.require(dev[0] > dev[1] && dev[1] > dev[2],
            "cone deviation not decreasing " + fmt(dev[0]) + " " + fmt(dev[1]) + " " + fmt(dev[2]));
  if (o.pass)
    o.detail = "self residual " + fmt(resid) + ", eps' " + fmt(eps[0]) + " > " + fmt(eps[1]) + " > " + fmt(eps[2]) +
               ", cone " + fmt(dev[0]) + " > " + fmt(dev[1]) + " > " + fmt(dev[2]);
  return o;
}

Outcome cone_fixtures() {
  Outcome o;
  const PolyhedralSurface eight(bipyramid(8, kPi / 4));
  const double e = std::abs(eight.cone_angle(0) - 2 * kPi);
  o.require(e < 1e-9, "8-triangle vertex off by " + fmt(e));
  const PolyhedralSurface six(bipyramid(6, kPi / 4)), ten(bipyramid(10, kPi / 4));
  o.require(six.cone_angle(0) <= 2 * kPi && curvature_class(six).alexandrov, "6-triangle vertex above 2 pi");
  o.require(ten.cone_angle(0) > 2 * kPi && !curvature_class(ten).alexandrov, "10-triangle vertex not above 2 pi");
  if (o.pass)
    o.detail = "8: |angle - 2pi| " + fmt(e) + ", 6: " + fmt(six.cone_angle(0)) + ", 10: " + fmt(ten.cone_angle(0));
  return o;
}

Outcome intrinsic_convergence() {
  Outcome o;
  const PolyhedralSurface s(octahedron());
  const double d16 = intrinsic_distance(s, 0, 1, 16), d32 = intrinsic_distance(s, 0, 1, 32);
  o.require(std::abs(d16 - d32) < 1e-3, "n=16 vs 32 differ by " + fmt(std::abs(d16 - d32)));
  const PolyhedralSurface big = scale_distances(s, 4.0);
  const IntrinsicMetric m(s, 16), mb(big, 16);
  double worst = 0.0;
  for (int u = 0; u < s.vertex_count(); ++u)
    for (int v = u + 1; v < s.vertex_count(); ++v) worst = std::max(worst, std::abs(mb.distance(u, v) - 2 * m.distance(u, v)));
  o.require(worst < 1e-6, "scaling residual " + fmt(worst));
  if (o.pass) o.detail = "apex distance " + fmt(d32) + ", |d16 - d32| " + fmt(std::abs(d16 - d32)) + ", scaling " + fmt(worst);
  return o;
}

Outcome situation_lemmas() {
  const auto t0 = std::chrono::steady_clock::now();
  McConfig cfg;
  cfg.seed = 20240601;
  cfg.instances = 500;
  const McSummary s1 = verify_situation1(cfg), s2 = verify_situation2(cfg);
  const double t = seconds_since(t0);
  Outcome o;
  o.require(s1.instances >= 500 && s1.failures == 0, "situation 1: " + std::to_string(s1.failures) + " failures");
  o.require(s2.instances >= 500 && s2.failures == 0, "situation 2: " + std::to_string(s2.failures) + " failures");
  o.require(t < 30.0, "runtime " + fmt(t) + " s");
  if (o.pass)
    o.detail = "situation 1 " + std::to_string(s1.instances) + " ok (margin " + fmt(s1.worst_margin) +
               "), situation 2 " + std::to_string(s2.instances) + " ok (margin " + fmt(s2.worst_margin) + "), " +
               fmt(t) + " s";
  return o;
}

Outcome bound_evaluator() {
  Rng rng(1008);
  Outcome o;
  int sym = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    BoundInputs in;
    in.l_plus_1 = std::exp(rng.uniform(-3.0, 3.0));
    in.l_minus_1 = std::exp(rng.uniform(-3.0, 3.0));
    in.l_plus_2 = std::exp(rng.uniform(-3.0, 3.0));
    in.l_minus_2 = std::exp(rng.uniform(-3.0, 3.0));
    const SeparationBound b = separation_bound(in);
    BoundInputs swapped = in, flipped = in;
    std::swap(swapped.l_plus_1, swapped.l_plus_2);
    std::swap(swapped.l_minus_1, swapped.l_minus_2);
    std::swap(flipped.l_plus_1, flipped.l_minus_1);
    if (separation_bound(swapped).value != b.value || separation_bound(flipped).value != b.value) ++sym;
    worst = std::max(worst, testing::max_term_rel_error(b, testing::mp_bound_terms(in)));
  }
  int monotone = 0;
  for (int k = 0; k < 100; ++k) {
    UniformBoundInputs in;
    for (Envelope* e : {&in.plus_1, &in.minus_1, &in.plus_2, &in.minus_2}) {
      e->lower = rng.uniform(0.1, 3.0);
      e->upper = e->lower * rng.uniform(1.0, 3.0);
    }
    const double before = uniform_separation_bound(in).value;
    Envelope* slots[] = {&in.plus_1, &in.minus_1, &in.plus_2, &in.minus_2};
    if (k % 2 == 0) {
      slots[k % 4]->upper *= rng.uniform(1.0, 2.0);
    } else {
      slots[k % 4]->lower *= rng.uniform(0.1, 1.0);
    }
    if (uniform_separation_bound(in).value >= before) ++monotone;
  }
  o.require(sym == 0, std::to_string(sym) + " symmetry mismatches");
  o.require(worst < 1e-9, "extended precision disagreement " + fmt(worst));
  o.require(monotone == 100, std::to_string(monotone) + "/100 monotone");
  if (o.pass) o.detail = "symmetries exact, max rel error " + fmt(worst) + ", envelope sweep 100/100";
  return o;
}

Outcome covering_and_gauss_bonnet() {
  Outcome o;
  const CoveringConstants c = covering_constants(1.0, 2.0);
  o.require(c.delta_M == 4.0 && c.neighbor_radius == 3.0 && c.rho_hat == 13.0, "covering constants");
  double worst = 0.0;
  for (const Triangulation& t : {octahedron(), bipyramid(6, kPi / 4), bipyramid(7, 0.3), glued_bigon(1.0)})
    worst = std::max(worst, std::abs(gauss_bonnet_residual(PolyhedralSurface(t))));
  o.require(worst < 1e-6, "Gauss-Bonnet residual " + fmt(worst));
  if (o.pass) o.detail = "(4, 3, 13), Gauss-Bonnet residual " + fmt(worst);
  return o;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

Outcome cli_determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands = {
      {"cyl", "verify", "--instances", "200"},
      {"cyl", "generate", "--count", "20", "--situation", "2"},
  };
  for (const auto& cmd : commands) {
    std::string reference;
    for (const char* threads : {"1", "2", "8", "1"}) {
      std::vector<std::string> args = {"--seed", "20240601", "--threads", threads};
      args.insert(args.end(), cmd.begin(), cmd.end());
      int code = 0;
      const std::string out = run_cli(args, code);
      o.require(code == 0, cmd[1] + " exited " + std::to_string(code));
      if (reference.empty()) {
        reference = out;
      } else {
        o.require(out == reference, cmd[1] + " output differs at " + threads + " threads");
      }
    }
  }
  if (o.pass) o.detail = "cyl verify and cyl generate identical at 1, 2, 8 threads";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"isometry suite", isometry_suite},
      {"trig vs construction", trig_vs_construction},
      {"homothety bound", homothety_bound},
      {"comparison idempotence and refinement", comparison_idempotence},
      {"cone-angle fixtures", cone_fixtures},
      {"intrinsic distance convergence", intrinsic_convergence},
      {"situation lemmas", situation_lemmas},
      {"separation bound evaluator", bound_evaluator},
      {"covering constants and Gauss-Bonnet", covering_and_gauss_bonnet},
      {"cli determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
