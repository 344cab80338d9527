#include "hypgeom/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "hypgeom/error.hpp"
#include "hypgeom/numeric.hpp"
#include "hypgeom/random.hpp"
#include "hypgeom/trig.hpp"

namespace hypgeom {

namespace {

// Lorentz cross product on the (x0, x1, x2) slice: orthogonal to a and b
// under the Minkowski form.
Vec4 lcross(const Vec4& a, const Vec4& b) {
  return {-(a.x1 * b.x2 - a.x2 * b.x1), a.x2 * b.x0 - a.x0 * b.x2, a.x0 * b.x1 - a.x1 * b.x0, 0.0};
}

Vec4 unit_spacelike(const Vec4& v) {
  const double n2 = mdot(v, v);
  if (!(n2 > 0.0)) throw DomainError("expected a spacelike vector");
  return (1.0 / std::sqrt(n2)) * v;
}

// Unit normal of the line through a and b.
Vec4 line_normal(const HPoint& a, const HPoint& b) { return unit_spacelike(lcross(a.v(), b.v())); }

// Acute angle between two intersecting lines given by unit normals.
double line_angle(const Vec4& n1, const Vec4& n2) {
  const Vec4 c = lcross(n1, n2);
  return std::atan2(std::sqrt(std::max(0.0, -mdot(c, c))), std::abs(mdot(n1, n2)));
}

double rel(double diff, double scale) { return std::abs(diff) / std::max(1.0, std::abs(scale)); }

}  // namespace

const char* to_string(SituationClass c) {
  return c == SituationClass::ContainsAxis ? "ContainsAxis" : "AvoidsAxis";
}

CylQuad make_cyl_quad(double h, double l_plus, double l_minus, double diag) {
  for (double x : {h, l_plus, l_minus, diag}) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("cylinder lengths must be positive");
  }
  if (!TriangleSides::valid(l_plus, h, diag) || !TriangleSides::valid(l_minus, h, diag)) {
    throw DomainError("cylinder fundamental domain has a degenerate triangle");
  }
  const double t0 = angle_from_sides(TriangleSides(l_plus, h, diag), Vertex::A);
  const double t1 = angle_from_sides(TriangleSides(l_minus, h, diag), Vertex::A);
  const double c = std::cosh(0.5 * diag), s = std::sinh(0.5 * diag);
  const double ch = std::cosh(h - 0.5 * diag), sh = std::sinh(h - 0.5 * diag), shh = std::sinh(h);
  // Written so that no large terms cancel.
  const double v0 = 2.0 * std::sin(0.5 * t0) * std::sin(0.5 * t0) * shh;
  const double v1 = 2.0 * std::sin(0.5 * t1) * std::sin(0.5 * t1) * shh;
  CylQuad q{h, l_plus, l_minus, diag,
            CylPoints{HPoint::normalize({ch + v0 * s, sh - v0 * c, shh * std::sin(t0), 0.0}),
                      HPoint::normalize({c, -s, 0.0, 0.0}), HPoint::normalize({c, s, 0.0, 0.0}),
                      HPoint::normalize({ch + v1 * s, -sh + v1 * c, -shh * std::sin(t1), 0.0})},
            std::nullopt};
  return q;
}

CylQuad flatten_fd(const HPoint& p_plus_0, const HPoint& p_minus_0, const HPoint& p_plus_1,
                   const HPoint& p_minus_1, double tol) {
  const double h0 = dist(p_plus_0, p_minus_0);
  const double h1 = dist(p_plus_1, p_minus_1);
  if (std::abs(h0 - h1) > tol * std::max(1.0, h0)) {
    throw DomainError("flatten_fd: transversal sides differ in length");
  }
  return make_cyl_quad(0.5 * (h0 + h1), dist(p_plus_0, p_plus_1), dist(p_minus_0, p_minus_1),
                       dist(p_minus_0, p_plus_1));
}

namespace {

// Extended-precision H^2 geometry for the axis solve. For short translations
// the boundary lines are nearly parallel and their normals come from points
// far from the origin, which costs several digits in double.
using Ld = long double;

struct P3 {
  Ld t, x, y;
};

P3 operator+(const P3& a, const P3& b) { return {a.t + b.t, a.x + b.x, a.y + b.y}; }
P3 operator-(const P3& a, const P3& b) { return {a.t - b.t, a.x - b.x, a.y - b.y}; }
P3 operator*(Ld k, const P3& a) { return {k * a.t, k * a.x, k * a.y}; }
bool operator==(const P3& a, const P3& b) { return a.t == b.t && a.x == b.x && a.y == b.y; }

Ld dot3(const P3& a, const P3& b) { return -a.t * b.t + a.x * b.x + a.y * b.y; }

P3 cross3(const P3& a, const P3& b) {
  return {-(a.x * b.y - a.y * b.x), a.y * b.t - a.t * b.y, a.t * b.x - a.x * b.t};
}

P3 unit_space(const P3& v) {
  const Ld n2 = dot3(v, v);
  if (!(n2 > 0)) throw DomainError("expected a spacelike vector");
  return (1 / std::sqrt(n2)) * v;
}

P3 unit_time(const P3& v) {
  const Ld n2 = -dot3(v, v);
  if (!(n2 > 0)) throw DomainError("expected a timelike vector");
  return ((v.t > 0 ? 1 : -1) / std::sqrt(n2)) * v;
}

P3 ext(const HPoint& p) { return {p[0], p[1], p[2]}; }

HPoint narrow(const P3& p) {
  return HPoint::normalize({static_cast<double>(p.t), static_cast<double>(p.x), static_cast<double>(p.y), 0.0});
}

Ld dist3(const P3& a, const P3& b) {
  const P3 d = a - b;
  return 2 * std::asinh(std::sqrt(std::max<Ld>(0, dot3(d, d))) / 2);
}

P3 normal3(const P3& a, const P3& b) { return unit_space(cross3(a, b)); }
P3 half3(const P3& m, const P3& x) { return unit_time(Ld{-1} * x - (2 * dot3(x, m)) * m); }
P3 mid3(const P3& a, const P3& b) { return unit_time(a + b); }
Ld dist_to_line3(const P3& p, const P3& n) { return std::asinh(std::abs(dot3(p, n))); }

Ld angle3(const P3& n1, const P3& n2) {
  const P3 c = cross3(n1, n2);
  return std::atan2(std::sqrt(std::max<Ld>(0, -dot3(c, c))), std::abs(dot3(n1, n2)));
}

// Unit tangent at a pointing to b.
P3 toward3(const P3& a, const P3& b) { return unit_space(b + dot3(b, a) * a); }

// One bisection solve in the coordinates of P. Accuracy degrades with the
// distance of the axis from epsilon^0, which solve_axis corrects by re-solving
// in recentred coordinates.
AxisSolution solve_in(const CylPoints& P, double h, const SolveOptions& opts, bool check) {
  const P3 rp0 = ext(P.r_plus_0), rm0 = ext(P.r_minus_0), rp1 = ext(P.r_plus_1), rm1 = ext(P.r_minus_1);
  const P3 nR = normal3(rp0, rm0);
  const P3 nQ = normal3(rp1, rm1);
  if (std::abs(dot3(nR, nQ)) <= 1 + Ld{1e-12}) {
    throw DomainError("solve_axis: boundary geodesics intersect or are asymptotic");
  }
  // Half-turn about the midpoint of the common perpendicular swaps chi_R and chi_Q.
  const P3 nP = unit_space(cross3(nR, nQ));
  const P3 M = mid3(unit_time(cross3(nR, nP)), unit_time(cross3(nQ, nP)));

  // Sweep along chi_R: x(t) = cosh t A + sinh t u. The defect is monotone and
  // vanishes where A and B = s(R+_1) are equidistant.
  const bool forward = opts.direction == SweepDirection::Forward;
  const P3 target = half3(M, rp1);
  const P3 A = forward ? rp0 : target;
  const P3 B = forward ? target : rp0;
  const P3 toward = forward ? rm0 : rp0;
  const P3 u = (A == toward) ? toward3(A, rm0) : toward3(A, toward);
  auto at = [&](Ld t) { return unit_time(std::cosh(t) * A + std::sinh(t) * u); };
  const Ld tB = std::asinh(dot3(B, u));

  Ld lo = std::min<Ld>(0, tB), hi = std::max<Ld>(0, tB);
  const Ld sign = tB >= 0 ? 1 : -1;
  Ld t = (lo + hi) / 2;
  Ld defect = 0;
  int it = 0;
  for (; it < 200; ++it) {
    t = (lo + hi) / 2;
    const P3 x = at(t);
    defect = sign * (dist3(A, x) - dist3(B, x));
    // The defect is 2-Lipschitz in t, so this bracket also bounds |defect|. The
    // axis direction moves like (hi - lo) / l_O, hence the scaling.
    const Ld l_t = dist3(x, half3(M, x));
    if (hi - lo <= opts.tolerance * std::min<Ld>(1, l_t)) break;
    if (hi - lo <= 4 * std::numeric_limits<Ld>::epsilon() * std::max<Ld>(1, std::abs(t))) break;
    if (defect < 0) {
      lo = t;
    } else {
      hi = t;
    }
  }
  const P3 O0 = at(t);
  const P3 O1 = half3(M, O0);
  const Ld l_O = dist3(O0, O1);
  if (!(l_O > 0)) throw DomainError("solve_axis: deck transformation is not a translation");

  // The deck translation is the product of the half-turns about M and O_0.
  if (check) {
    const P3 image = half3(M, half3(O0, rm0));
    if (dist3(image, rm1) > 1e-6 * std::max(1.0, h)) {
      throw DomainError("solve_axis: marked points are not related by a translation");
    }
  }

  AxisSolution s;
  s.O0 = narrow(O0);
  s.O1 = narrow(O1);
  s.l_O = static_cast<double>(l_O);
  s.defect = static_cast<double>(defect);
  s.iterations = it + 1;
  const P3 nX = normal3(O0, O1);
  s.alpha = static_cast<double>(angle3(nR, nX));
  s.h_plus = static_cast<double>(dist3(O0, rp0));
  s.h_minus = static_cast<double>(dist3(O0, rm0));
  // O_0 between the marked points iff they lie in opposite directions from it.
  const P3 to_plus = rp0 + dot3(rp0, O0) * O0;
  const P3 to_minus = rm0 + dot3(rm0, O0) * O0;
  s.opposite_sides = dot3(to_plus, to_minus) <= 0;
  s.h_O_plus = static_cast<double>(dist_to_line3(rp0, nX));
  s.h_O_minus = static_cast<double>(dist_to_line3(rm0, nX));
  s.d = static_cast<double>(dist_to_line3(mid3(rp0, rm0), nX));
  s.d_plus = static_cast<double>(dist_to_line3(mid3(rp0, O0), nX));
  s.d_minus = static_cast<double>(dist_to_line3(mid3(rm0, O0), nX));
  return s;
}

// Isometry taking O0 to epsilon^0 and the axis direction to epsilon^1.
Isometry centring(const HPoint& O0, const HPoint& O1) {
  const Vec4 u = direction_to(O0, O1).v();
  const Vec4 n = unit_spacelike(lcross(O0.v(), u));
  return isometry_from_frames(Frame::make(O0, {u, n, basis_vector(3)}, 1e-6), Frame::standard());
}

CylPoints apply_all(const Isometry& g, const CylPoints& P) {
  return {g.apply(P.r_plus_0), g.apply(P.r_minus_0), g.apply(P.r_plus_1), g.apply(P.r_minus_1)};
}

}  // namespace

CylQuad solve_axis(const CylQuad& q, const SolveOptions& opts) {
  const AxisSolution rough = solve_in(q.planar, q.h, {opts.tolerance, SweepDirection::Forward}, false);
  const Isometry T = centring(rough.O0, rough.O1);
  AxisSolution s = solve_in(apply_all(T, q.planar), q.h, opts, true);
  const Isometry Tinv = T.inverse();
  s.O0 = Tinv.apply(s.O0);
  s.O1 = Tinv.apply(s.O1);
  CylQuad out = q;
  out.axis = s;
  return out;
}

double AxisResiduals::max() const { return std::max({law_of_sines, pythagoras, angle, offset}); }

AxisResiduals axis_residuals(const CylQuad& q) {
  if (!q.axis) throw InvariantError("axis_residuals: quad is not solved");
  const AxisSolution& s = *q.axis;
  const CylPoints& P = q.planar;
  const Vec4 nX = line_normal(s.O0, s.O1);
  AxisResiduals r;
  const double sa = std::sin(s.alpha);
  r.law_of_sines = std::max(
      rel(std::sinh(s.h_O_plus) - sa * std::sinh(s.h_plus), std::sinh(s.h_plus)),
      rel(std::sinh(s.h_O_minus) - sa * std::sinh(s.h_minus), std::sinh(s.h_minus)));
  auto pyth = [&](const HPoint& p, double hyp, double leg) {
    const HPoint foot = HPoint::normalize(p.v() - mdot(p.v(), nX) * nX);
    const double along = dist(foot, s.O0);
    return rel(std::cosh(hyp) - std::cosh(leg) * std::cosh(along), std::cosh(hyp));
  };
  r.pythagoras = std::max(pyth(P.r_plus_0, s.h_plus, s.h_O_plus), pyth(P.r_minus_0, s.h_minus, s.h_O_minus));
  r.angle = std::abs(line_angle(line_normal(P.r_plus_1, P.r_minus_1), nX) - s.alpha);
  r.offset = std::max(rel(dist(s.O1, P.r_plus_1) - s.h_plus, s.h_plus),
                      rel(dist(s.O1, P.r_minus_1) - s.h_minus, s.h_minus));
  return r;
}

SituationClass classify(const CylQuad& q, double rel_tol) {
  if (!q.axis) throw InvariantError("classify: quad is not solved");
  const AxisSolution& s = *q.axis;
  const double scale = std::max(1.0, q.h);
  const bool contains = std::abs(q.h - (s.h_plus + s.h_minus)) <= rel_tol * scale;
  const bool avoids = std::abs(q.h - std::abs(s.h_plus - s.h_minus)) <= rel_tol * scale;
  if (contains) return SituationClass::ContainsAxis;
  if (avoids) return SituationClass::AvoidsAxis;
  throw InvariantError("classify: offsets are inconsistent with the side length");
}

double midpoint_path_length(const CylQuad& q) {
  if (classify(q) != SituationClass::ContainsAxis) {
    throw InvariantError("midpoint_path_length: axis is not inside the quadrilateral");
  }
  return q.axis->l_O * std::cosh(q.axis->d);
}

// --- thresholds -----------------------------------------------------------

ThresholdValue h_ort_int_checked(double l_rq, double eps3) {
  if (!(l_rq > 0.0) || !(eps3 > 0.0)) throw DomainError("h_ort_int: arguments must be positive");
  // ln of the arcosh argument e^l l^2 / eps^2
  const double ln_x = l_rq + 2.0 * std::log(l_rq) - 2.0 * std::log(eps3);
  ThresholdValue r;
  if (ln_x < 0.0) {
    r.vacuous = true;
    r.value = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  if (ln_x < 600.0) {
    r.value = l_rq + std::acosh(std::exp(l_rq) * l_rq * l_rq / (eps3 * eps3));
  } else {
    r.log_space = true;
    r.value = l_rq + acosh_exp(ln_x);
  }
  return r;
}

double h_ort_int(double l_rq, double eps3) {
  const ThresholdValue v = h_ort_int_checked(l_rq, eps3);
  if (v.vacuous) throw DomainError("h_ort_int: arcosh argument below 1 (bound is vacuous)");
  return v.value;
}

ThresholdValue situation1_term(double l, double eps3) {
  ThresholdValue inner = h_ort_int_checked(l, eps3);
  if (inner.vacuous) return inner;
  ThresholdValue r;
  r.log_space = inner.log_space || l + inner.value > 600.0;
  r.value = 2.0 * (r.log_space ? acosh_exp(lncosh(l) + lncosh(inner.value))
                               : std::acosh(std::cosh(l) * std::cosh(inner.value)));
  return r;
}

ThresholdValue situation1_threshold_checked(double l_plus, double l_minus, double eps3) {
  const ThresholdValue a = situation1_term(l_plus, eps3);
  const ThresholdValue b = situation1_term(l_minus, eps3);
  ThresholdValue r;
  r.vacuous = a.vacuous || b.vacuous;
  r.log_space = a.log_space || b.log_space;
  r.value = r.vacuous ? std::numeric_limits<double>::quiet_NaN() : std::max(a.value, b.value);
  return r;
}

double situation1_threshold(double l_plus, double l_minus, double eps3) {
  const ThresholdValue v = situation1_threshold_checked(l_plus, l_minus, eps3);
  if (v.vacuous) throw DomainError("situation1_threshold: arcosh argument below 1 (bound is vacuous)");
  return v.value;
}

double situation2_term(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("situation2 bound: lengths must be positive");
  return (x + y) + std::log(2.0 * x / y);
}

double situation2_bound(double l_plus, double l_minus) {
  return std::max(situation2_term(l_plus, l_minus), situation2_term(l_minus, l_plus));
}

// --- generator ------------------------------------------------------------

namespace {

struct Generated {
  CylPoints pts;
  bool convex;
  bool minimal;
};

Generated generate_points(const CylGenParams& p) {
  if (!(p.translation_length > 0.0) || !std::isfinite(p.translation_length)) {
    throw DomainError("generate_cyl: translation_length must be positive");
  }
  if (!(p.phase > 0.0 && p.phase <= std::numbers::pi / 2)) {
    throw DomainError("generate_cyl: phase must lie in (0, pi/2]");
  }
  if (!std::isfinite(p.offset_plus) || !std::isfinite(p.offset_minus) ||
      std::abs(p.offset_plus) > 30.0 || std::abs(p.offset_minus) > 30.0) {
    throw DomainError("generate_cyl: offsets must be finite and at most 30 in size");
  }
  if (p.offset_plus == p.offset_minus) throw DomainError("generate_cyl: offsets must differ");
  const Vec4 w{0.0, std::cos(p.phase), std::sin(p.phase), 0.0};
  auto marked = [&](double o) { return HPoint::normalize(std::cosh(o) * basis_vector(0) + std::sinh(o) * w); };
  const Isometry g = Isometry::translation(1, p.translation_length);
  const HPoint rp0 = marked(p.offset_plus), rm0 = marked(p.offset_minus);
  Generated out{{rp0, rm0, g.apply(rp0), g.apply(rm0)}, true, true};

  auto side = [](const HPoint& a, const HPoint& b, const HPoint& x) {
    return mdot(x.v(), lcross(a.v(), b.v()));
  };
  const CylPoints& P = out.pts;
  out.convex = side(P.r_minus_0, P.r_plus_1, P.r_plus_0) * side(P.r_minus_0, P.r_plus_1, P.r_minus_1) < 0.0 &&
               side(P.r_plus_0, P.r_minus_1, P.r_minus_0) * side(P.r_plus_0, P.r_minus_1, P.r_plus_1) < 0.0;

  const double h = dist(rp0, rm0);
  for (int k = -16; k <= 16 && out.minimal; ++k) {
    if (k == 0) continue;
    const HPoint shifted = Isometry::translation(1, k * p.translation_length).apply(rm0);
    if (dist(rp0, shifted) < h) out.minimal = false;
  }
  return out;
}

}  // namespace

std::optional<CylQuad> try_generate_cyl(const CylGenParams& p) {
  const Generated g = generate_points(p);
  if (!g.convex || !g.minimal) return std::nullopt;
  return flatten_fd(g.pts.r_plus_0, g.pts.r_minus_0, g.pts.r_plus_1, g.pts.r_minus_1);
}

CylQuad generate_cyl(const CylGenParams& p) {
  const Generated g = generate_points(p);
  if (!g.convex) throw DomainError("generate_cyl: fundamental domain is not convex");
  if (!g.minimal) throw DomainError("generate_cyl: transversal is not minimal over |k| <= 16");
  return flatten_fd(g.pts.r_plus_0, g.pts.r_minus_0, g.pts.r_plus_1, g.pts.r_minus_1);
}

// --- Monte-Carlo ----------------------------------------------------------

namespace {

struct Outcome {
  bool failed = false;
  int attempts = 0;
  double margin = 0.0;
  double residual = 0.0;
};

template <class Fn>
McSummary run_batch(const McConfig& cfg, Fn one) {
  if (cfg.instances < 0) throw DomainError("Monte-Carlo: instance count must be nonnegative");
  if (!(cfg.eps3 > 0.0)) throw DomainError("Monte-Carlo: eps3 must be positive");
  std::vector<Outcome> out(cfg.instances);
  const int threads = std::max(1, std::min(cfg.threads, std::max(1, cfg.instances)));
  auto work = [&](int t) {
    for (int i = t; i < cfg.instances; i += threads) out[i] = one(Rng::stream(cfg.seed, i));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  McSummary s;
  s.instances = cfg.instances;
  s.worst_margin = std::numeric_limits<double>::infinity();
  for (const Outcome& o : out) {
    s.failures += o.failed ? 1 : 0;
    s.attempts += o.attempts;
    s.worst_margin = std::min(s.worst_margin, o.margin);
    s.max_residual = std::max(s.max_residual, o.residual);
  }
  if (cfg.instances == 0) s.worst_margin = 0.0;
  return s;
}

constexpr int kMaxAttempts = 1000000;

}  // namespace

// The transversal must be nearly perpendicular to
// the axis (|cos phase| of the order of the translation length) or shifting
// by a deck power shortens it, so cos(phase) is drawn on that scale.
CylGenParams random_cyl_params(Rng& rng, bool same_side) {
  CylGenParams p;
  p.translation_length = std::exp(rng.uniform(std::log(1e-2), std::log(0.5)));
  p.phase = std::acos(rng.uniform() * std::min(1.0, p.translation_length));
  if (p.phase <= 0.0) p.phase = std::numbers::pi / 2;
  const double a = rng.uniform(0.05, 6.0), b = rng.uniform(0.05, 6.0);
  if (same_side) {
    const double s = rng.uniform() < 0.5 ? 1.0 : -1.0;
    p.offset_plus = s * a;
    p.offset_minus = s * b;
  } else {
    p.offset_plus = a;
    p.offset_minus = -b;
  }
  return p;
}

McSummary verify_situation1(const McConfig& cfg) {
  return run_batch(cfg, [&](Rng rng) {
    Outcome o;
    for (o.attempts = 1; o.attempts <= kMaxAttempts; ++o.attempts) {
      const auto q = try_generate_cyl(random_cyl_params(rng, false));
      if (!q) continue;
      const ThresholdValue thr = situation1_threshold_checked(q->l_plus, q->l_minus, cfg.eps3);
      if (thr.vacuous || q->h < thr.value) continue;
      const CylQuad solved = solve_axis(*q);
      o.residual = axis_residuals(solved).max();
      if (classify(solved) != SituationClass::ContainsAxis) {
        o.failed = true;
        return o;
      }
      const double len = midpoint_path_length(solved);
      o.margin = cfg.eps3 - len;
      o.failed = len > cfg.eps3 + 1e-9;
      return o;
    }
    throw DomainError("verify_situation1: no admissible instance within the attempt budget");
  });
}

McSummary verify_situation2(const McConfig& cfg) {
  return run_batch(cfg, [&](Rng rng) {
    Outcome o;
    for (o.attempts = 1; o.attempts <= kMaxAttempts; ++o.attempts) {
      const auto q = try_generate_cyl(random_cyl_params(rng, true));
      if (!q) continue;
      const CylQuad solved = solve_axis(*q);
      o.residual = axis_residuals(solved).max();
      if (classify(solved) != SituationClass::AvoidsAxis) {
        o.failed = true;
        return o;
      }
      const double bound = situation2_bound(q->l_plus, q->l_minus);
      o.margin = bound - q->h;
      o.failed = !(q->h < bound);
      return o;
    }
    throw DomainError("verify_situation2: no admissible instance within the attempt budget");
  });
}

}  // namespace hypgeom
