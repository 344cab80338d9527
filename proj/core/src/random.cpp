#include "hypgeom/random.hpp"

#include <cmath>
#include <numbers>

namespace hypgeom {

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer to decorrelate neighbouring seeds
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return Rng(z ^ (z >> 31));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  double u = uniform();
  while (u == 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

Vec4 Rng::unit_spatial(int dim) {
  for (;;) {
    Vec4 v{0.0, normal(), normal(), dim == 3 ? normal() : 0.0};
    const double n = std::sqrt(mdot(v, v));
    if (n > 1e-6) return (1.0 / n) * v;
  }
}

namespace {

// Minkowski Gram-Schmidt of candidate vectors in T_origin.
std::array<Vec4, 3> orthonormal_tangent_basis(Rng& rng, const HPoint& origin, bool h2) {
  std::array<Vec4, 3> basis{};
  const int spatial = h2 ? 2 : 3;
  for (int i = 0; i < spatial; ++i) {
    for (;;) {
      Vec4 w{rng.normal(), rng.normal(), rng.normal(), h2 ? 0.0 : rng.normal()};
      w = TangentVec::project(origin, w).v();
      for (int j = 0; j < i; ++j) w = w - mdot(w, basis[j]) * basis[j];
      const double n2 = mdot(w, w);
      if (n2 > 1e-6) {
        basis[i] = (1.0 / std::sqrt(n2)) * w;
        // one re-orthogonalization pass
        for (int j = 0; j < i; ++j) basis[i] = basis[i] - mdot(basis[i], basis[j]) * basis[j];
        basis[i] = (1.0 / std::sqrt(mdot(basis[i], basis[i]))) * basis[i];
        break;
      }
    }
  }
  if (h2) basis[2] = basis_vector(3);
  return basis;
}

}  // namespace

Frame random_frame(Rng& rng, double max_radius, bool h2) {
  const double r = rng.uniform(0.0, max_radius);
  const Vec4 u = rng.unit_spatial(h2 ? 2 : 3);
  const HPoint origin = exp_map(TangentVec::make(HPoint::origin(), u), r);
  return Frame::make(origin, orthonormal_tangent_basis(rng, origin, h2), 1e-9);
}

Isometry random_isometry(Rng& rng, double max_radius, bool h2) {
  return isometry_from_frames(Frame::standard(), random_frame(rng, max_radius, h2));
}

HPoint random_point(Rng& rng, double max_radius, bool h2) {
  return random_isometry(rng, max_radius, h2).apply(HPoint::origin());
}

}  // namespace hypgeom
