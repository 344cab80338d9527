#pragma once

// Upper bounds on the distance between the boundary components of a convex
// domain, and the covering constants of the boundary surfaces.

#include <array>
#include <string>
#include <vector>

#include "hypgeom/hyperboloid.hpp"

namespace hypgeom {

struct BoundInputs {
  double l_plus_1 = 1.0;
  double l_minus_1 = 1.0;
  double l_plus_2 = 1.0;
  double l_minus_2 = 1.0;
  double eps3 = kDefaultMargulisEps;

  void validate() const;
};

struct BoundTerm {
  std::string name;
  double value = 0.0;  // NaN when vacuous
  bool vacuous = false;
  bool log_space = false;
};

struct SeparationBound {
  double value = 0.0;
  int argmax = 0;  // index into terms of the first term attaining the max
  std::array<BoundTerm, 8> terms;
  std::vector<std::string> warnings;

  const BoundTerm& attaining() const { return terms[argmax]; }
};

/// Maximum of the four logarithmic terms
///   l+_i + l-_i + ln(2 l+_i / l-_i),  l+_i + l-_i + ln(2 l-_i / l+_i)
/// and the four terms 2 arcosh[cosh l cosh(l + arcosh(e^l l^2 / eps3^2))] for
/// l in {l+_1, l-_1, l+_2, l-_2}. Arcosh terms whose argument falls below 1
/// are marked vacuous, excluded from the maximum and reported in warnings.
SeparationBound separation_bound(const BoundInputs& in);

struct Envelope {
  double upper = 1.0;  // Omega
  double lower = 1.0;  // omega
};

struct UniformBoundInputs {
  Envelope plus_1, minus_1, plus_2, minus_2;
  double eps3 = kDefaultMargulisEps;

  void validate() const;
};

/// The bound of separation_bound with every increasing slot filled by an
/// upper envelope and every denominator by a lower envelope.
SeparationBound uniform_separation_bound(const UniformBoundInputs& in);

struct CoveringConstants {
  double delta_S = 0.0;
  double sigma_S = 0.0;
  double delta_M = 0.0;          // sigma_S + 2 delta_S
  double neighbor_radius = 0.0;  // 3 delta_S
  double rho_hat = 0.0;          // 9 delta_S + delta_M
};

CoveringConstants covering_constants(double delta_S, double sigma_S);

}  // namespace hypgeom
