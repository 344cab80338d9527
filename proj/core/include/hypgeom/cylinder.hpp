#pragma once

// Flattened fundamental domains of hyperbolic cylinders, their translation
// axis, and the threshold formulas that bound their height.
//
// A fundamental domain is the quadrilateral R+_0 R+_1 R-_1 R-_0 glued from the
// triangles (R+_0, R-_0, R+_1) and (R+_1, R-_1, R-_0) along the diagonal
// R-_0 R+_1. The deck translation maps R+_0 to R+_1 and R-_0 to R-_1; the
// sides R+_0 R-_0 and R+_1 R-_1 both have length h.

#include <cstdint>
#include <optional>

#include "hypgeom/hyperboloid.hpp"

namespace hypgeom {

enum class SituationClass { ContainsAxis, AvoidsAxis };

const char* to_string(SituationClass c);

struct CylPoints {
  HPoint r_plus_0;
  HPoint r_minus_0;
  HPoint r_plus_1;
  HPoint r_minus_1;
};

struct AxisSolution {
  double alpha = 0.0;    // acute angle between the axis and chi_R
  double l_O = 0.0;      // translation length
  double h_plus = 0.0;   // d(O_0, R+_0)
  double h_minus = 0.0;  // d(O_0, R-_0)
  bool opposite_sides = true;  // O_0 lies between R+_0 and R-_0
  double h_O_plus = 0.0;       // d(R+_0, axis)
  double h_O_minus = 0.0;      // d(R-_0, axis)
  double d = 0.0;              // d(midpoint of R+_0 R-_0, axis)
  double d_plus = 0.0;         // d(midpoint of R+_0 O_0, axis)
  double d_minus = 0.0;        // d(midpoint of R-_0 O_0, axis)
  HPoint O0 = HPoint::origin();
  HPoint O1 = HPoint::origin();
  double defect = 0.0;  // final bisection defect
  int iterations = 0;
};

struct CylQuad {
  double h = 0.0;
  double l_plus = 0.0;
  double l_minus = 0.0;
  double diag = 0.0;
  CylPoints planar;  // in the x3 = 0 plane, diagonal midpoint at epsilon^0
  std::optional<AxisSolution> axis;
};

/// Builds the planar quadrilateral from the five gluing lengths. Throws
/// DomainError if either triangle is degenerate.
CylQuad make_cyl_quad(double h, double l_plus, double l_minus, double diag);

/// Flattens the fundamental domain spanned by four points of H^3. Throws
/// DomainError if the two transversal sides differ by more than
/// tol * max(1, h) or a triangle is degenerate.
CylQuad flatten_fd(const HPoint& p_plus_0, const HPoint& p_minus_0, const HPoint& p_plus_1,
                   const HPoint& p_minus_1, double tol = 1e-9);

enum class SweepDirection { Forward, Backward };

struct SolveOptions {
  double tolerance = 1e-10;
  SweepDirection direction = SweepDirection::Forward;
};

/// Finds the axis of the deck translation: the line meeting chi_R and chi_Q at
/// equal angles with equal offsets of the marked points. The foot O_0 on chi_R
/// is located by bisection on a sweep along chi_R of the defect
/// d(R+_0, R_t) - d(R+_1, s(R_t)), where s is the half-turn exchanging chi_R
/// and chi_Q, until the bracket is narrower than the tolerance times
/// min(1, l_O). This also bounds the defect. Throws DomainError if chi_R and chi_Q intersect or are
/// asymptotic, or if the marked points are not related by a translation.
CylQuad solve_axis(const CylQuad& q, const SolveOptions& opts = {});

struct AxisResiduals {
  double law_of_sines = 0.0;  // |sinh h_O - sin(alpha) sinh h|, both sides
  double pythagoras = 0.0;    // |cosh h - cosh h_O cosh l|, both sides
  double angle = 0.0;         // |angle at O_1 - alpha|
  double offset = 0.0;        // |d(O_1, R+_1) - h_plus| and the minus side
  double max() const;
};

/// Internal consistency of a solved quad, each residual measured relative to
/// max(1, size of the compared quantities).
AxisResiduals axis_residuals(const CylQuad& q);

/// ContainsAxis iff h = h_plus + h_minus, AvoidsAxis iff h = |h_plus - h_minus|,
/// both within rel_tol * max(1, h). A tie (an offset of zero) is ContainsAxis.
/// Throws InvariantError for an unsolved quad or when neither relation holds.
SituationClass classify(const CylQuad& q, double rel_tol = 1e-7);

/// Length l_O cosh d of the equidistant path through the side midpoints.
/// Throws InvariantError unless q is solved and ContainsAxis.
double midpoint_path_length(const CylQuad& q);

/// A threshold value together with its provenance flags.
struct ThresholdValue {
  double value = 0.0;
  bool vacuous = false;    // an arcosh argument fell below 1
  bool log_space = false;  // evaluated through logarithms to avoid overflow
};

/// l + arcosh(e^l l^2 / eps^2). vacuous (and value NaN) when the arcosh
/// argument is below 1.
ThresholdValue h_ort_int_checked(double l_rq, double eps3);

/// As h_ort_int_checked; throws DomainError when vacuous.
double h_ort_int(double l_rq, double eps3);

/// 2 arcosh[cosh l cosh(h_ort_int(l, eps3))].
ThresholdValue situation1_term(double l, double eps3);

/// max of situation1_term over l_plus and l_minus. Vacuous if either term is.
ThresholdValue situation1_threshold_checked(double l_plus, double l_minus, double eps3);

/// As situation1_threshold_checked; throws DomainError when vacuous.
double situation1_threshold(double l_plus, double l_minus, double eps3);

/// (x + y) + ln(2x / y).
double situation2_term(double x, double y);

/// max(situation2_term(l+, l-), situation2_term(l-, l+)).
double situation2_bound(double l_plus, double l_minus);

struct CylGenParams {
  double translation_length = 0.1;
  double offset_plus = 1.0;
  double offset_minus = -1.0;
  double phase = 1.2;  // angle between the transversal and the axis, (0, pi/2]
};

/// Builds a cylinder fundamental domain from a translation of length
/// translation_length along the axis and marked points at signed distances
/// offset_plus, offset_minus from the axis foot, on a transversal crossing
/// the axis at angle `phase`. Throws DomainError if the parameters are out of
/// range, the quadrilateral is not convex, or the transversal is not the
/// shortest connection over the power window |k| <= 16.
CylQuad generate_cyl(const CylGenParams& p);

class Rng;

/// Random generator parameters as used by the Monte-Carlo checks: translation
/// length log-uniform in [0.01, 0.5], offsets of size in [0.05, 6] on opposite
/// sides of the axis (or the same side when same_side is set), and cos(phase)
/// uniform in [0, min(1, translation_length)]. The draw is not guaranteed to
/// pass generate_cyl's convexity and minimality checks.
CylGenParams random_cyl_params(Rng& rng, bool same_side);

/// Same as generate_cyl but returns nullopt instead of throwing for the
/// convexity and minimality conditions.
std::optional<CylQuad> try_generate_cyl(const CylGenParams& p);

struct McConfig {
  std::uint64_t seed = 1;
  int instances = 500;
  double eps3 = kDefaultMargulisEps;
  int threads = 1;
};

struct McSummary {
  int instances = 0;
  int failures = 0;
  int attempts = 0;  // generator draws including rejected ones
  double worst_margin = 0.0;  // min over instances of (bound - observed)
  double max_residual = 0.0;
};

/// Monte-Carlo check of the Situation 1 lemma: ContainsAxis instances with
/// h >= situation1_threshold have midpoint_path_length <= eps3.
McSummary verify_situation1(const McConfig& cfg);

/// Monte-Carlo check of the Situation 2 lemma: AvoidsAxis instances have
/// h < situation2_bound.
McSummary verify_situation2(const McConfig& cfg);

}  // namespace hypgeom
