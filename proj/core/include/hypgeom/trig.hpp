#pragma once

// Hyperbolic plane trigonometry (curvature -1).

namespace hypgeom {

/// Side lengths; a is opposite vertex A, and so on.
class TriangleSides {
 public:
  /// Throws DomainError unless all sides are positive and the triangle
  /// inequalities hold strictly.
  TriangleSides(double a, double b, double c);

  /// False instead of throwing.
  static bool valid(double a, double b, double c);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

 private:
  double a_, b_, c_;
};

enum class Vertex { A, B, C };

/// Length l cosh h of the equidistant arc at height h over a geodesic segment
/// of length l.
double equidistant_length(double l, double h);

/// Hypotenuse of the right triangle with legs a, b: arcosh(cosh a cosh b).
double right_hypotenuse(double a, double b);

/// Leg opposite the angle alpha in a right triangle with hypotenuse hyp:
/// arsinh(sin alpha sinh hyp).
double sinh_opposite(double alpha, double hyp);

/// Interior angle at the given vertex. Uses the half-angle form of the law of
/// cosines, which stays accurate for thin and for tiny triangles.
double angle_from_sides(const TriangleSides& s, Vertex at);

/// Side opposite the angle A between sides b and c.
double side_from_sas(double b, double c, double A);

/// pi minus the angle sum (the area), from the hyperbolic L'Huilier formula.
double angle_defect_area(const TriangleSides& s);

/// Side of the equilateral triangle whose angles all equal A, A in (0, pi/3).
double equilateral_side_for_angle(double A);

}  // namespace hypgeom
