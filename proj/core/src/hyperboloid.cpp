#include "hypgeom/hyperboloid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypgeom/error.hpp"

namespace hypgeom {

namespace {

// Rounding in the Minkowski form grows with the square of the coordinates.
double form_scale(const Vec4& v) { return std::max(1.0, v.max_abs() * v.max_abs()); }

std::string describe(const Vec4& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << v.x0 << ", " << v.x1 << ", " << v.x2 << ", " << v.x3 << ')';
  return os.str();
}

constexpr std::array<double, 4> kJ = {-1.0, 1.0, 1.0, 1.0};

}  // namespace

double Vec4::max_abs() const {
  return std::max({std::abs(x0), std::abs(x1), std::abs(x2), std::abs(x3)});
}

bool Vec4::finite() const {
  return std::isfinite(x0) && std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
}

void ModelConfig::validate() const {
  if (!(tol_model > 0.0) || !std::isfinite(tol_model)) {
    throw DomainError("tol_model must be positive");
  }
  if (!(margulis_eps > 0.0) || !std::isfinite(margulis_eps)) {
    throw DomainError("margulis_eps must be positive");
  }
}

// --- HPoint ---------------------------------------------------------------

HPoint HPoint::make(const Vec4& v, double tol) {
  if (!v.finite()) throw InvariantError("HPoint: non-finite coordinates " + describe(v));
  if (!(v.x0 > 0.0)) throw InvariantError("HPoint: not on the upper sheet " + describe(v));
  const double residual = std::abs(mdot(v, v) + 1.0);
  if (residual > tol * form_scale(v)) {
    throw InvariantError("HPoint: <v,v> != -1 for " + describe(v));
  }
  return HPoint(v);
}

HPoint HPoint::normalize(const Vec4& v) {
  const double q = mdot(v, v);
  if (!v.finite() || !(q < 0.0)) {
    throw InvariantError("HPoint::normalize: vector is not timelike " + describe(v));
  }
  const double s = (v.x0 > 0.0 ? 1.0 : -1.0) / std::sqrt(-q);
  return HPoint(s * v);
}

HPoint HPoint::origin() { return HPoint(Vec4{1.0, 0.0, 0.0, 0.0}); }

bool HPoint::in_h2_slice(double tol) const { return std::abs(v_.x3) <= tol; }

// --- TangentVec -----------------------------------------------------------

TangentVec TangentVec::make(const HPoint& base, const Vec4& v, double tol) {
  if (!v.finite()) throw InvariantError("TangentVec: non-finite vector");
  const double scale = std::max(1.0, base.v().max_abs() * v.max_abs());
  if (std::abs(mdot(base.v(), v)) > tol * scale) {
    throw InvariantError("TangentVec: vector not orthogonal to base " + describe(v));
  }
  return TangentVec(base, v);
}

TangentVec TangentVec::project(const HPoint& base, const Vec4& v) {
  // <base, base> = -1, so v + <v, base> base is orthogonal to base.
  return TangentVec(base, v + mdot(v, base.v()) * base.v());
}

double TangentVec::norm() const { return std::sqrt(std::max(0.0, mdot(v_, v_))); }

// --- Frame ----------------------------------------------------------------

Frame Frame::make(const HPoint& origin, const std::array<Vec4, 3>& basis, double tol) {
  for (std::size_t i = 0; i < 3; ++i) {
    (void)TangentVec::make(origin, basis[i], tol);
    for (std::size_t j = i; j < 3; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      const double scale = std::max(1.0, basis[i].max_abs() * basis[j].max_abs());
      if (std::abs(mdot(basis[i], basis[j]) - expected) > tol * scale) {
        std::ostringstream os;
        os << "Frame: basis not orthonormal at (" << i << ", " << j << ")";
        throw InvariantError(os.str());
      }
    }
  }
  return Frame(origin, basis);
}

Frame Frame::standard() {
  return Frame(HPoint::origin(), {basis_vector(1), basis_vector(2), basis_vector(3)});
}

TangentVec Frame::basis(std::size_t i) const {
  return TangentVec::make(origin_, basis_.at(i), 1.0);
}

// --- matrices -------------------------------------------------------------

Mat4 identity_matrix() {
  Mat4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      const double aik = a[i][k];
      for (std::size_t j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
    }
  }
  return c;
}

Mat4 transpose(const Mat4& m) {
  Mat4 t{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = m[j][i];
  return t;
}

Vec4 multiply(const Mat4& m, const Vec4& v) {
  Vec4 r;
  for (std::size_t i = 0; i < 4; ++i) {
    r[i] = m[i][0] * v.x0 + m[i][1] * v.x1 + m[i][2] * v.x2 + m[i][3] * v.x3;
  }
  return r;
}

Vec4 column(const Mat4& m, std::size_t c) { return {m[0][c], m[1][c], m[2][c], m[3][c]}; }

Mat4 from_columns(const std::array<Vec4, 4>& cols) {
  Mat4 m{};
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t r = 0; r < 4; ++r) m[r][c] = cols[c][r];
  return m;
}

double pseudo_orthogonality_residual(const Mat4& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      // (m^T J m)_{ij} = <column i, column j>
      const double g = mdot(column(m, i), column(m, j));
      const double expected = i == j ? kJ[i] : 0.0;
      worst = std::max(worst, std::abs(g - expected));
    }
  }
  return worst;
}

bool is_pseudo_orthogonal(const Mat4& m, double tol) {
  for (const auto& row : m)
    for (double x : row)
      if (!std::isfinite(x)) return false;
  // Given the form is preserved, epsilon^0 maps to column 0, whose sheet is
  // decided by the sign of m00.
  return pseudo_orthogonality_residual(m) <= tol && m[0][0] > 0.0;
}

// --- Isometry -------------------------------------------------------------

Isometry Isometry::make(const Mat4& m, double tol) {
  if (!is_pseudo_orthogonal(m, tol)) {
    std::ostringstream os;
    os << "Isometry: matrix is not in O'(3,1) (residual "
       << pseudo_orthogonality_residual(m) << ", m00 " << m[0][0] << ')';
    throw InvariantError(os.str());
  }
  return Isometry(m);
}

Isometry Isometry::identity() { return Isometry(identity_matrix()); }

Isometry Isometry::translation(std::size_t axis, double t) {
  if (axis < 1 || axis > 3) throw InvariantError("Isometry::translation: axis must be 1..3");
  Mat4 m = identity_matrix();
  m[0][0] = std::cosh(t);
  m[axis][axis] = std::cosh(t);
  m[0][axis] = std::sinh(t);
  m[axis][0] = std::sinh(t);
  return Isometry(m);
}

Isometry Isometry::rotation(std::size_t a, std::size_t b, double theta) {
  if (a < 1 || a > 3 || b < 1 || b > 3 || a == b) {
    throw InvariantError("Isometry::rotation: axes must be distinct in 1..3");
  }
  Mat4 m = identity_matrix();
  m[a][a] = std::cos(theta);
  m[b][b] = std::cos(theta);
  m[a][b] = -std::sin(theta);
  m[b][a] = std::sin(theta);
  return Isometry(m);
}

HPoint Isometry::apply(const HPoint& p) const {
  return HPoint::make(multiply(m_, p.v()), 1e-6);
}

TangentVec Isometry::apply(const TangentVec& t) const {
  return TangentVec::make(apply(t.base()), multiply(m_, t.v()), 1e-6);
}

Isometry operator*(const Isometry& a, const Isometry& b) {
  return Isometry(multiply(a.m_, b.m_));
}

Isometry Isometry::inverse() const {
  Mat4 inv = transpose(m_);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) inv[i][j] *= kJ[i] * kJ[j];
  return Isometry(inv);
}

// --- metric ---------------------------------------------------------------

double dist(const HPoint& p, const HPoint& q) {
  const Vec4 d = p.v() - q.v();
  const double chord2 = mdot(d, d);
  if (chord2 < 4.0) {
    return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, chord2)));
  }
  return std::acosh(std::max(1.0, -mdot(p.v(), q.v())));
}

HPoint exp_map(const TangentVec& dir, double t) {
  const double n = dir.norm();
  if (!(n > 0.0)) throw InvariantError("exp_map: zero direction");
  const Vec4 u = (1.0 / n) * dir.v();
  return HPoint::normalize(std::cosh(t) * dir.base().v() + std::sinh(t) * u);
}

TangentVec direction_to(const HPoint& p, const HPoint& q) {
  const TangentVec w = TangentVec::project(p, q.v());
  const double n = w.norm();
  if (!(n > 0.0)) throw InvariantError("direction_to: coincident points");
  return TangentVec::project(p, (1.0 / n) * w.v());
}

HPoint geodesic_point(const HPoint& p, const HPoint& q, double s) {
  const double d = dist(p, q);
  if (d == 0.0) return p;
  const double sd = std::sinh(d);
  const Vec4 v = (std::sinh((1.0 - s) * d) / sd) * p.v() + (std::sinh(s * d) / sd) * q.v();
  return HPoint::normalize(v);
}

// --- frames and probes ----------------------------------------------------

namespace {

Mat4 frame_matrix(const Frame& f) {
  const auto& b = f.basis_vectors();
  return from_columns({f.origin().v(), b[0], b[1], b[2]});
}

}  // namespace

Isometry isometry_from_frames(const Frame& f1, const Frame& f2) {
  const Mat4 m1 = frame_matrix(f1);
  const Mat4 m2 = frame_matrix(f2);
  // A frame matrix is pseudo-orthogonal, so its inverse is J m1^T J.
  const Isometry m1_inv = Isometry::make(m1, 1e-6).inverse();
  return Isometry::make(m2, 1e-6) * m1_inv;
}

Frame frame_image(const Isometry& iso, const Frame& f) {
  const auto& b = f.basis_vectors();
  return Frame::make(iso.apply(f.origin()),
                     {iso.apply(b[0]), iso.apply(b[1]), iso.apply(b[2])}, 1e-6);
}

std::array<HPoint, 4> probe_points() {
  const double r2 = std::sqrt(2.0);
  return {HPoint::origin(), HPoint::make({r2, 1.0, 0.0, 0.0}),
          HPoint::make({r2, 0.0, 1.0, 0.0}), HPoint::make({r2, 0.0, 0.0, 1.0})};
}

Isometry reconstruct_from_probes(std::span<const HPoint, 4> images, double tol) {
  const double r2 = std::sqrt(2.0);
  const Vec4 c0 = images[0].v();
  const Mat4 m = from_columns(
      {c0, images[1].v() - r2 * c0, images[2].v() - r2 * c0, images[3].v() - r2 * c0});
  return Isometry::make(m, tol);
}

}  // namespace hypgeom
