#pragma once

// Deterministic random sampling of points, frames and isometries.
//
// The engine is mt19937_64, whose output sequence is fixed by the standard.
// Distributions are implemented here rather than taken from <random> so that
// samples are identical across standard libraries.

#include <cstdint>
#include <random>

#include "hypgeom/hyperboloid.hpp"

namespace hypgeom {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for item `index` of a batch seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller, no caching).
  double normal();
  /// Uniform on the unit sphere of R^dim, dim in {2, 3}.
  Vec4 unit_spatial(int dim);

 private:
  std::mt19937_64 engine_;
};

/// Random frame whose origin is at distance at most max_radius from epsilon^0.
/// With h2 set, origin and the first two basis vectors lie in the x3 = 0 slice
/// and the third basis vector is epsilon^3.
Frame random_frame(Rng& rng, double max_radius, bool h2 = false);

/// isometry_from_frames(standard, random_frame(...)).
Isometry random_isometry(Rng& rng, double max_radius, bool h2 = false);

/// Image of epsilon^0 under a random isometry.
HPoint random_point(Rng& rng, double max_radius, bool h2 = false);

}  // namespace hypgeom
