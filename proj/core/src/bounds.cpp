#include "hypgeom/bounds.hpp"

#include <cmath>
#include <limits>

#include "hypgeom/cylinder.hpp"
#include "hypgeom/error.hpp"

namespace hypgeom {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive");
}

BoundTerm log_term(const char* name, double x, double y) {
  return {name, situation2_term(x, y), false, false};
}

BoundTerm arcosh_term(const char* name, double l, double eps3) {
  const ThresholdValue t = situation1_term(l, eps3);
  return {name, t.value, t.vacuous, t.log_space};
}

SeparationBound assemble(std::array<BoundTerm, 8> terms) {
  SeparationBound b;
  b.terms = std::move(terms);
  b.value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 8; ++i) {
    const BoundTerm& t = b.terms[i];
    if (t.vacuous) {
      b.warnings.push_back(t.name + " is vacuous (arcosh argument below 1) and was excluded");
      continue;
    }
    if (t.log_space) b.warnings.push_back(t.name + " was evaluated in log space");
    if (t.value > b.value) {
      b.value = t.value;
      b.argmax = i;
    }
  }
  return b;
}

}  // namespace

void BoundInputs::validate() const {
  require_positive(l_plus_1, "l_plus_1");
  require_positive(l_minus_1, "l_minus_1");
  require_positive(l_plus_2, "l_plus_2");
  require_positive(l_minus_2, "l_minus_2");
  require_positive(eps3, "eps3");
}

SeparationBound separation_bound(const BoundInputs& in) {
  in.validate();
  return assemble({
      log_term("log(l_plus_1/l_minus_1)", in.l_plus_1, in.l_minus_1),
      log_term("log(l_minus_1/l_plus_1)", in.l_minus_1, in.l_plus_1),
      log_term("log(l_plus_2/l_minus_2)", in.l_plus_2, in.l_minus_2),
      log_term("log(l_minus_2/l_plus_2)", in.l_minus_2, in.l_plus_2),
      arcosh_term("arcosh(l_plus_1)", in.l_plus_1, in.eps3),
      arcosh_term("arcosh(l_minus_1)", in.l_minus_1, in.eps3),
      arcosh_term("arcosh(l_plus_2)", in.l_plus_2, in.eps3),
      arcosh_term("arcosh(l_minus_2)", in.l_minus_2, in.eps3),
  });
}

void UniformBoundInputs::validate() const {
  for (const Envelope* e : {&plus_1, &minus_1, &plus_2, &minus_2}) {
    require_positive(e->lower, "envelope lower bound");
    require_positive(e->upper, "envelope upper bound");
    if (e->upper < e->lower) throw DomainError("envelope upper bound below lower bound");
  }
  require_positive(eps3, "eps3");
}

SeparationBound uniform_separation_bound(const UniformBoundInputs& in) {
  in.validate();
  // (O+ + O- ) + ln(2 O+ / w-)
  auto env_log = [](const char* name, const Envelope& num, const Envelope& den) {
    return BoundTerm{name, (num.upper + den.upper) + std::log(2.0 * num.upper / den.lower), false, false};
  };
  return assemble({
      env_log("log(l_plus_1/l_minus_1)", in.plus_1, in.minus_1),
      env_log("log(l_minus_1/l_plus_1)", in.minus_1, in.plus_1),
      env_log("log(l_plus_2/l_minus_2)", in.plus_2, in.minus_2),
      env_log("log(l_minus_2/l_plus_2)", in.minus_2, in.plus_2),
      arcosh_term("arcosh(l_plus_1)", in.plus_1.upper, in.eps3),
      arcosh_term("arcosh(l_minus_1)", in.minus_1.upper, in.eps3),
      arcosh_term("arcosh(l_plus_2)", in.plus_2.upper, in.eps3),
      arcosh_term("arcosh(l_minus_2)", in.minus_2.upper, in.eps3),
  });
}

CoveringConstants covering_constants(double delta_S, double sigma_S) {
  if (!(delta_S >= 0.0) || !(sigma_S >= 0.0) || !std::isfinite(delta_S) || !std::isfinite(sigma_S)) {
    throw DomainError("covering constants must be nonnegative");
  }
  CoveringConstants c;
  c.delta_S = delta_S;
  c.sigma_S = sigma_S;
  c.delta_M = sigma_S + 2.0 * delta_S;
  c.neighbor_radius = 3.0 * delta_S;
  c.rho_hat = 9.0 * delta_S + c.delta_M;
  return c;
}

}  // namespace hypgeom
