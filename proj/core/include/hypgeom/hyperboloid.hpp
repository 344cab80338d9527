#pragma once

// Hyperboloid model of H^3: the upper sheet {<x,x> = -1, x0 > 0} of R^{3,1}
// with the Minkowski form <x,y> = -x0 y0 + x1 y1 + x2 y2 + x3 y3. H^2 is the
// x3 = 0 slice of the same types.

#include <array>
#include <cstddef>
#include <span>

namespace hypgeom {

inline constexpr double kDefaultTol = 1e-9;

/// Conventional default for the 3-dimensional Margulis constant. This is a
/// published lower bound, not a sharp value.
inline constexpr double kDefaultMargulisEps = 0.104;

struct Vec4 {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr double operator[](std::size_t i) const {
    return i == 0 ? x0 : i == 1 ? x1 : i == 2 ? x2 : x3;
  }
  constexpr double& operator[](std::size_t i) {
    return i == 0 ? x0 : i == 1 ? x1 : i == 2 ? x2 : x3;
  }

  friend constexpr Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
  }
  friend constexpr Vec4 operator-(const Vec4& a, const Vec4& b) {
    return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
  }
  friend constexpr Vec4 operator-(const Vec4& a) { return {-a.x0, -a.x1, -a.x2, -a.x3}; }
  friend constexpr Vec4 operator*(double s, const Vec4& a) {
    return {s * a.x0, s * a.x1, s * a.x2, s * a.x3};
  }
  friend constexpr Vec4 operator*(const Vec4& a, double s) { return s * a; }
  friend constexpr bool operator==(const Vec4&, const Vec4&) = default;

  /// Largest absolute component.
  double max_abs() const;
  bool finite() const;
};

/// Minkowski scalar product.
constexpr double mdot(const Vec4& u, const Vec4& v) {
  return -u.x0 * v.x0 + u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}

/// Standard basis vectors epsilon^0..epsilon^3.
constexpr Vec4 basis_vector(std::size_t i) {
  Vec4 v;
  v[i] = 1.0;
  return v;
}

struct ModelConfig {
  double tol_model = kDefaultTol;
  double margulis_eps = kDefaultMargulisEps;

  /// Throws DomainError unless both fields are positive and finite.
  void validate() const;
};

/// A point of the hyperboloid sheet.
///
/// The invariant <v,v> = -1 is checked relative to the scale x0^2, since that is
/// the size of the rounding error in the form for points far from epsilon^0.
class HPoint {
 public:
  /// Validates and wraps. Throws InvariantError.
  static HPoint make(const Vec4& v, double tol = kDefaultTol);
  /// Rescales a timelike vector onto the upper sheet. Throws InvariantError if
  /// v is not timelike.
  static HPoint normalize(const Vec4& v);
  /// epsilon^0 = (1, 0, 0, 0).
  static HPoint origin();

  const Vec4& v() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }

  /// True when the point lies in the H^2 slice x3 = 0.
  bool in_h2_slice(double tol = kDefaultTol) const;

  friend bool operator==(const HPoint&, const HPoint&) = default;

 private:
  explicit HPoint(const Vec4& v) : v_(v) {}
  Vec4 v_;
};

/// A vector of T_base, i.e. Minkowski-orthogonal to the base point.
class TangentVec {
 public:
  static TangentVec make(const HPoint& base, const Vec4& v, double tol = kDefaultTol);
  /// Projects an arbitrary vector onto T_base.
  static TangentVec project(const HPoint& base, const Vec4& v);

  const HPoint& base() const { return base_; }
  const Vec4& v() const { return v_; }
  double norm() const;

 private:
  TangentVec(const HPoint& base, const Vec4& v) : base_(base), v_(v) {}
  HPoint base_;
  Vec4 v_;
};

/// A point together with an orthonormal basis of its tangent space.
class Frame {
 public:
  static Frame make(const HPoint& origin, const std::array<Vec4, 3>& basis,
                    double tol = kDefaultTol);
  /// epsilon^0 with (epsilon^1, epsilon^2, epsilon^3).
  static Frame standard();

  const HPoint& origin() const { return origin_; }
  TangentVec basis(std::size_t i) const;
  const std::array<Vec4, 3>& basis_vectors() const { return basis_; }

 private:
  Frame(const HPoint& origin, const std::array<Vec4, 3>& basis)
      : origin_(origin), basis_(basis) {}
  HPoint origin_;
  std::array<Vec4, 3> basis_;
};

/// Row-major 4x4 matrix: m[row][col].
using Mat4 = std::array<std::array<double, 4>, 4>;

Mat4 identity_matrix();
Mat4 multiply(const Mat4& a, const Mat4& b);
Mat4 transpose(const Mat4& m);
Vec4 multiply(const Mat4& m, const Vec4& v);
Vec4 column(const Mat4& m, std::size_t c);
Mat4 from_columns(const std::array<Vec4, 4>& cols);

/// max |(m^T J m - J)_{ij}| with J = diag(-1, 1, 1, 1).
double pseudo_orthogonality_residual(const Mat4& m);

/// True iff m preserves the Minkowski form within tol and maps the upper cone
/// to itself.
bool is_pseudo_orthogonal(const Mat4& m, double tol);

/// An element of O'(3,1), acting on the hyperboloid.
class Isometry {
 public:
  /// Throws InvariantError unless is_pseudo_orthogonal(m, tol).
  static Isometry make(const Mat4& m, double tol = kDefaultTol);
  static Isometry identity();

  /// Hyperbolic translation by signed distance t along the geodesic through
  /// epsilon^0 in direction epsilon^axis (axis in 1..3).
  static Isometry translation(std::size_t axis, double t);
  /// Rotation by theta in the (epsilon^a, epsilon^b) plane, a, b in 1..3.
  static Isometry rotation(std::size_t a, std::size_t b, double theta);

  const Mat4& matrix() const { return m_; }

  HPoint apply(const HPoint& p) const;
  TangentVec apply(const TangentVec& t) const;
  Vec4 apply(const Vec4& v) const { return multiply(m_, v); }

  /// Composition: (a * b).apply(p) == a.apply(b.apply(p)).
  friend Isometry operator*(const Isometry& a, const Isometry& b);

  /// Exact inverse J m^T J.
  Isometry inverse() const;

 private:
  explicit Isometry(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

/// Hyperbolic distance. Evaluated as 2 asinh(|p - q|_M / 2), which equals
/// arcosh(max(1, -<p,q>)) but keeps full precision for nearby points.
double dist(const HPoint& p, const HPoint& q);

/// The point at signed distance t from the base of `dir` along `dir`
/// (dir need not be unit; it is normalized).
HPoint exp_map(const TangentVec& dir, double t);

/// The point at fraction s in [0, 1] of the geodesic segment from p to q.
HPoint geodesic_point(const HPoint& p, const HPoint& q, double s);

/// Unit tangent at p pointing toward q. Throws InvariantError if p == q.
TangentVec direction_to(const HPoint& p, const HPoint& q);

/// The unique isometry sending f1.origin to f2.origin and each basis vector of
/// f1 to the corresponding basis vector of f2: M2 * M1^{-1}.
Isometry isometry_from_frames(const Frame& f1, const Frame& f2);

/// Image of a frame under an isometry.
Frame frame_image(const Isometry& iso, const Frame& f);

/// The probe points P0 = (1,0,0,0) and Pk = (sqrt 2, epsilon^k) for k = 1..3.
std::array<HPoint, 4> probe_points();

/// Recovers the matrix of an isometry from the images of the probe points:
/// column 0 is image(P0), column k is image(Pk) - sqrt(2) image(P0).
/// Throws InvariantError if the result is not pseudo-orthogonal within tol.
Isometry reconstruct_from_probes(std::span<const HPoint, 4> images, double tol = 1e-6);

}  // namespace hypgeom
