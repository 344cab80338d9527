#pragma once

// Projective (Klein) and conformal (Poincare) ball models, and the Klein-model
// Euclidean homothety centred at the origin.

#include <array>

#include "hypgeom/hyperboloid.hpp"

namespace hypgeom {

/// Euclidean coordinates in the open unit ball.
struct KleinPoint {
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;

  double norm() const;
  friend bool operator==(const KleinPoint&, const KleinPoint&) = default;
};

/// Euclidean coordinates in the open unit ball (conformal model).
struct PoincarePoint {
  double z1 = 0.0;
  double z2 = 0.0;
  double z3 = 0.0;
};

KleinPoint to_klein(const HPoint& p);
/// Throws DomainError if k is not strictly inside the unit ball.
HPoint from_klein(const KleinPoint& k);

PoincarePoint to_poincare(const HPoint& p);
HPoint from_poincare(const PoincarePoint& z);

struct HomothetyParams {
  double lambda = 1.0;  // (0, 1]
  double rho_B = 0.5;   // (0, 1)

  void validate() const;
};

/// f(rho) = lambda (1 - rho^2) / (1 - lambda^2 rho^2): the stretch of vectors
/// along the radius-vector under the homothety, at Klein radius rho.
double radial_factor(double lambda, double rho);

/// g(rho) = lambda sqrt(1 - rho^2) / sqrt(1 - lambda^2 rho^2): the stretch of
/// vectors perpendicular to the radius-vector.
double perp_factor(double lambda, double rho);

/// from_klein(lambda * to_klein(p)). Throws DomainError if p lies outside the
/// Klein ball of radius rho_B.
HPoint homothety_apply(const HomothetyParams& params, const HPoint& p);

/// f(rho_B) * length, a lower bound on the length of the homothety image of
/// any curve of the given length inside the ball.
double curve_length_lower_bound(const HomothetyParams& params, double length);

}  // namespace hypgeom
