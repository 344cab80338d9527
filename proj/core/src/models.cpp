#include "hypgeom/models.hpp"

#include <cmath>

#include "hypgeom/error.hpp"

namespace hypgeom {

namespace {

void check_factor_domain(double lambda, double rho) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in (0, 1]");
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
}

}  // namespace

double KleinPoint::norm() const { return std::sqrt(y1 * y1 + y2 * y2 + y3 * y3); }

KleinPoint to_klein(const HPoint& p) {
  const Vec4& v = p.v();
  return {v.x1 / v.x0, v.x2 / v.x0, v.x3 / v.x0};
}

HPoint from_klein(const KleinPoint& k) {
  const double r2 = k.y1 * k.y1 + k.y2 * k.y2 + k.y3 * k.y3;
  if (!(r2 < 1.0)) throw DomainError("Klein point not inside the unit ball");
  const double x0 = 1.0 / std::sqrt(1.0 - r2);
  return HPoint::normalize({x0, x0 * k.y1, x0 * k.y2, x0 * k.y3});
}

PoincarePoint to_poincare(const HPoint& p) {
  const Vec4& v = p.v();
  const double s = 1.0 / (1.0 + v.x0);
  return {s * v.x1, s * v.x2, s * v.x3};
}

HPoint from_poincare(const PoincarePoint& z) {
  const double r2 = z.z1 * z.z1 + z.z2 * z.z2 + z.z3 * z.z3;
  if (!(r2 < 1.0)) throw DomainError("Poincare point not inside the unit ball");
  const double s = 1.0 / (1.0 - r2);
  return HPoint::normalize({s * (1.0 + r2), 2.0 * s * z.z1, 2.0 * s * z.z2, 2.0 * s * z.z3});
}

void HomothetyParams::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in (0, 1]");
  if (!(rho_B > 0.0 && rho_B < 1.0)) throw DomainError("rho_B must lie in (0, 1)");
}

double radial_factor(double lambda, double rho) {
  check_factor_domain(lambda, rho);
  const double r2 = rho * rho;
  return lambda * (1.0 - r2) / (1.0 - lambda * lambda * r2);
}

double perp_factor(double lambda, double rho) {
  check_factor_domain(lambda, rho);
  const double r2 = rho * rho;
  return lambda * std::sqrt((1.0 - r2) / (1.0 - lambda * lambda * r2));
}

HPoint homothety_apply(const HomothetyParams& params, const HPoint& p) {
  params.validate();
  if (params.lambda == 1.0) return p;
  const KleinPoint k = to_klein(p);
  if (k.norm() > params.rho_B) throw DomainError("point lies outside the homothety ball");
  const double l = params.lambda;
  return from_klein({l * k.y1, l * k.y2, l * k.y3});
}

double curve_length_lower_bound(const HomothetyParams& params, double length) {
  params.validate();
  if (!(length >= 0.0)) throw DomainError("length must be nonnegative");
  return radial_factor(params.lambda, params.rho_B) * length;
}

}  // namespace hypgeom
