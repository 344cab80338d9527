#include "hypgeom/trig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hypgeom/error.hpp"
#include "hypgeom/numeric.hpp"

namespace hypgeom {

double lncosh(double a) {
  a = std::abs(a);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double acosh_exp(double y) {
  if (y < 0.0) throw DomainError("acosh_exp: argument below zero");
  // arcosh(X) = ln X + ln(1 + sqrt(1 - X^-2))
  return y + std::log1p(std::sqrt(-std::expm1(-2.0 * y)));
}

double clamp_checked(double x, double lo, double hi, double slack, const char* what) {
  if (x < lo - slack || x > hi + slack || std::isnan(x)) {
    throw DomainError(std::string(what) + ": value out of domain");
  }
  return std::clamp(x, lo, hi);
}

TriangleSides::TriangleSides(double a, double b, double c) : a_(a), b_(b), c_(c) {
  if (!valid(a, b, c)) throw DomainError("triangle sides violate the triangle inequality");
}

bool TriangleSides::valid(double a, double b, double c) {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && a > 0.0 && b > 0.0 &&
         c > 0.0 && a < b + c && b < a + c && c < a + b;
}

double equidistant_length(double l, double h) {
  if (!(l >= 0.0) || !(h >= 0.0)) throw DomainError("equidistant_length: negative input");
  return l * std::cosh(h);
}

double right_hypotenuse(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("right_hypotenuse: negative leg");
  const double x = std::cosh(a) * std::cosh(b);
  if (std::isfinite(x) && x < 1e8) {
    // cosh a cosh b - 1 = (cosh a - 1) cosh b + (cosh b - 1), formed without cancellation
    const double ca1 = 2.0 * std::sinh(0.5 * a) * std::sinh(0.5 * a);
    const double cb1 = 2.0 * std::sinh(0.5 * b) * std::sinh(0.5 * b);
    const double xm1 = ca1 * std::cosh(b) + cb1;
    return std::log1p(xm1 + std::sqrt(xm1 * (xm1 + 2.0)));
  }
  return acosh_exp(lncosh(a) + lncosh(b));
}

double sinh_opposite(double alpha, double hyp) {
  if (!(alpha > 0.0 && alpha <= std::numbers::pi / 2)) {
    throw DomainError("sinh_opposite: alpha must lie in (0, pi/2]");
  }
  if (!(hyp >= 0.0)) throw DomainError("sinh_opposite: negative hypotenuse");
  if (alpha == std::numbers::pi / 2) return hyp;
  const double sh = std::sinh(hyp);
  if (std::isfinite(sh)) return std::asinh(std::sin(alpha) * sh);
  // asinh(x) ~ ln 2x for large x
  return std::log(std::sin(alpha)) + hyp;
}

double angle_from_sides(const TriangleSides& s, Vertex at) {
  double a = s.a(), b = s.b(), c = s.c();
  if (at == Vertex::B) std::swap(a, b);
  if (at == Vertex::C) std::swap(a, c);
  const double p = 0.5 * (a + b + c);
  // tan(A/2)^2 = sinh(p-b) sinh(p-c) / (sinh p sinh(p-a))
  const double num = std::sinh(p - b) * std::sinh(p - c);
  const double den = std::sinh(p) * std::sinh(p - a);
  if (std::isfinite(num) && std::isfinite(den)) {
    return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
  }
  // Huge sides: compare logarithms of the sinh factors.
  auto lnsinh = [](double x) { return x + std::log(-std::expm1(-2.0 * x)) - std::numbers::ln2; };
  const double lr = 0.5 * (lnsinh(p - b) + lnsinh(p - c) - lnsinh(p) - lnsinh(p - a));
  return 2.0 * std::atan(std::exp(lr));
}

double side_from_sas(double b, double c, double A) {
  if (!(b > 0.0) || !(c > 0.0)) throw DomainError("side_from_sas: sides must be positive");
  A = clamp_checked(A, 0.0, std::numbers::pi, 1e-6, "side_from_sas angle");
  // sinh^2(a/2) = sinh^2((b-c)/2) + sinh b sinh c sin^2(A/2)
  const double sd = std::sinh(0.5 * (b - c));
  const double sa = std::sin(0.5 * A);
  const double t = sd * sd + std::sinh(b) * std::sinh(c) * sa * sa;
  if (std::isfinite(t)) return 2.0 * std::asinh(std::sqrt(t));
  // t is huge here, and 2 asinh(sqrt t) = ln t + 2 ln 2 to double precision.
  const double d = std::abs(b - c);
  const double em = -std::expm1(-d);
  const double scaled = 0.25 * em * em * std::exp(d - (b + c)) +
                        0.25 * sa * sa * -std::expm1(-2.0 * b) * -std::expm1(-2.0 * c);
  return (b + c) + std::log(scaled) + 2.0 * std::numbers::ln2;
}

double angle_defect_area(const TriangleSides& s) {
  const double p = 0.5 * (s.a() + s.b() + s.c());
  const double q = std::tanh(0.5 * p) * std::tanh(0.5 * (p - s.a())) *
                   std::tanh(0.5 * (p - s.b())) * std::tanh(0.5 * (p - s.c()));
  return 4.0 * std::atan(std::sqrt(q));
}

double equilateral_side_for_angle(double A) {
  if (!(A > 0.0 && A < std::numbers::pi / 3)) {
    throw DomainError("equilateral_side_for_angle: angle must lie in (0, pi/3)");
  }
  // cos A = cosh s / (cosh s + 1); cosh s - 1 = (2 cos A - 1) / (1 - cos A)
  const double one_minus_cos = 2.0 * std::sin(0.5 * A) * std::sin(0.5 * A);
  const double xm1 = (1.0 - 2.0 * one_minus_cos) / one_minus_cos;
  return std::log1p(xm1 + std::sqrt(xm1 * (xm1 + 2.0)));
}

}  // namespace hypgeom
