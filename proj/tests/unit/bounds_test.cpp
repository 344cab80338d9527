#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hypgeom/bounds.hpp"
#include "hypgeom/cylinder.hpp"
#include "hypgeom/error.hpp"
#include "hypgeom/random.hpp"
#include "oracles.hpp"

namespace hypgeom {
namespace {

constexpr double kEps = 0.104;

BoundInputs inputs(double a, double b, double c, double d) {
  BoundInputs in;
  in.l_plus_1 = a;
  in.l_minus_1 = b;
  in.l_plus_2 = c;
  in.l_minus_2 = d;
  in.eps3 = kEps;
  return in;
}

UniformBoundInputs uniform(Envelope a, Envelope b, Envelope c, Envelope d) {
  UniformBoundInputs in;
  in.plus_1 = a;
  in.minus_1 = b;
  in.plus_2 = c;
  in.minus_2 = d;
  in.eps3 = kEps;
  return in;
}

TEST(SeparationBound, EqualLengths) {
  const SeparationBound b = separation_bound(inputs(1, 1, 1, 1));
  EXPECT_NEAR(b.value, 15.307306246651977056, 1e-12);
  EXPECT_EQ(b.attaining().name, "arcosh(l_plus_1)");
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(b.terms[i].value, 2.6931471805599453094, 1e-15);
  for (int i = 4; i < 8; ++i) EXPECT_EQ(b.terms[i].value, b.value);
  EXPECT_TRUE(b.warnings.empty());
}

TEST(SeparationBound, Symmetries) {
  Rng rng(103);
  for (int k = 0; k < 200; ++k) {
    const double a = rng.uniform(0.2, 5.0), b = rng.uniform(0.2, 5.0), c = rng.uniform(0.2, 5.0),
                 d = rng.uniform(0.2, 5.0);
    const double v = separation_bound(inputs(a, b, c, d)).value;
    EXPECT_EQ(v, separation_bound(inputs(b, a, c, d)).value);
    EXPECT_EQ(v, separation_bound(inputs(a, b, d, c)).value);
    EXPECT_EQ(v, separation_bound(inputs(c, d, a, b)).value);
    EXPECT_GE(v, situation2_bound(a, b));
    EXPECT_GE(v, situation2_bound(c, d));
  }
}

TEST(SeparationBound, MatchesExtendedPrecision) {
  Rng rng(107);
  for (int k = 0; k < 200; ++k) {
    const BoundInputs in = inputs(std::exp(rng.uniform(-4.0, 3.0)), std::exp(rng.uniform(-4.0, 3.0)),
                                  std::exp(rng.uniform(-4.0, 3.0)), std::exp(rng.uniform(-4.0, 3.0)));
    EXPECT_LT(testing::max_term_rel_error(separation_bound(in), testing::mp_bound_terms(in)), 1e-9);
  }
}

TEST(SeparationBound, VacuousTermsAreExcluded) {
  const SeparationBound b = separation_bound(inputs(0.01, 1.0, 1.0, 1.0));
  EXPECT_TRUE(b.terms[4].vacuous);
  EXPECT_TRUE(std::isnan(b.terms[4].value));
  EXPECT_FALSE(b.terms[5].vacuous);
  EXPECT_EQ(b.warnings.size(), 1u);
  EXPECT_NE(b.warnings[0].find("arcosh(l_plus_1)"), std::string::npos);
  EXPECT_TRUE(std::isfinite(b.value));

  const SeparationBound all = separation_bound(inputs(0.01, 0.02, 0.03, 0.04));
  EXPECT_EQ(all.warnings.size(), 4u);
  EXPECT_EQ(all.value, std::max_element(all.terms.begin(), all.terms.begin() + 4,
                                         [](const BoundTerm& x, const BoundTerm& y) { return x.value < y.value; })
                            ->value);
}

TEST(SeparationBound, LargeLengthsUseLogSpace) {
  const SeparationBound b = separation_bound(inputs(500.0, 1.0, 1.0, 1.0));
  EXPECT_TRUE(std::isfinite(b.value));
  EXPECT_TRUE(b.terms[4].log_space);
  EXPECT_EQ(b.argmax, 4);
  const BoundInputs in = inputs(500.0, 1.0, 1.0, 1.0);
  EXPECT_LT(testing::max_term_rel_error(b, testing::mp_bound_terms(in)), 1e-9);
}

TEST(SeparationBound, RejectsNonpositive) {
  EXPECT_THROW(separation_bound(inputs(0.0, 1, 1, 1)), DomainError);
  EXPECT_THROW(separation_bound(inputs(1, -1, 1, 1)), DomainError);
  EXPECT_THROW(separation_bound(inputs(1, 1, std::nan(""), 1)), DomainError);
  BoundInputs in = inputs(1, 1, 1, 1);
  in.eps3 = 0.0;
  EXPECT_THROW(separation_bound(in), DomainError);
}

TEST(UniformBound, CollapsesToSeparationBound) {
  Rng rng(109);
  for (int k = 0; k < 50; ++k) {
    const double a = rng.uniform(0.2, 4.0), b = rng.uniform(0.2, 4.0), c = rng.uniform(0.2, 4.0),
                 d = rng.uniform(0.2, 4.0);
    const SeparationBound u = uniform_separation_bound(uniform({a, a}, {b, b}, {c, c}, {d, d}));
    const SeparationBound s = separation_bound(inputs(a, b, c, d));
    EXPECT_NEAR(u.value, s.value, 1e-12 * s.value);
    EXPECT_EQ(u.argmax, s.argmax);
  }
}

TEST(UniformBound, EqualFamilies) {
  const SeparationBound u = uniform_separation_bound(uniform({2, 1}, {2, 1}, {2, 1}, {2, 1}));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(u.terms[i].value, 5.3862943611198906188, 1e-14);
  for (int i = 4; i < 8; ++i) EXPECT_NEAR(u.terms[i].value, 23.862346031619737517, 1e-11);
  EXPECT_EQ(u.argmax, 4);
  EXPECT_LT(testing::max_term_rel_error(u, testing::mp_uniform_bound_terms(uniform({2, 1}, {2, 1}, {2, 1}, {2, 1}))),
            1e-9);
}

TEST(UniformBound, MonotoneUnderWidening) {
  Rng rng(113);
  auto rand_env = [&rng] {
    const double lo = rng.uniform(0.1, 3.0);
    return Envelope{lo * rng.uniform(1.0, 3.0), lo};
  };
  for (int k = 0; k < 100; ++k) {
    UniformBoundInputs in = uniform(rand_env(), rand_env(), rand_env(), rand_env());
    const double before = uniform_separation_bound(in).value;
    Envelope* slots[] = {&in.plus_1, &in.minus_1, &in.plus_2, &in.minus_2};
    Envelope& e = *slots[k % 4];
    if (k % 2 == 0) {
      e.upper *= rng.uniform(1.0, 2.0);
    } else {
      e.lower *= rng.uniform(0.1, 1.0);
    }
    EXPECT_GE(uniform_separation_bound(in).value, before);
  }
}

TEST(UniformBound, RejectsOrderingViolation) {
  EXPECT_THROW(uniform_separation_bound(uniform({1, 2}, {2, 1}, {2, 1}, {2, 1})), DomainError);
  EXPECT_THROW(uniform_separation_bound(uniform({2, 0}, {2, 1}, {2, 1}, {2, 1})), DomainError);
}

TEST(CoveringConstants, Examples) {
  const CoveringConstants z = covering_constants(0.0, 0.0);
  EXPECT_EQ(z.delta_M, 0.0);
  EXPECT_EQ(z.neighbor_radius, 0.0);
  EXPECT_EQ(z.rho_hat, 0.0);
  const CoveringConstants c = covering_constants(1.0, 2.0);
  EXPECT_EQ(c.delta_M, 4.0);
  EXPECT_EQ(c.neighbor_radius, 3.0);
  EXPECT_EQ(c.rho_hat, 13.0);
  EXPECT_THROW(covering_constants(-1.0, 0.0), DomainError);
  EXPECT_THROW(covering_constants(0.0, -1e-9), DomainError);
  Rng rng(127);
  for (int k = 0; k < 100; ++k) {
    const CoveringConstants r = covering_constants(rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0));
    EXPECT_GE(r.rho_hat, r.neighbor_radius + r.delta_M);
  }
}

// Two cylinders over a common transversal of length h, both containing their
// axis. Once h passes the arcosh terms of both, both midpoint paths are short.
TEST(SeparationBound, TwoCylinderConsistency) {
  Rng rng(131);
  int checked = 0;
  int attempts = 0;
  while (checked < 200 && attempts < 200000) {
    ++attempts;
    // Every length has to clear the arcosh domain yet stay short enough for
    // h to pass its term, which needs short translations and balanced offsets.
    const double h = rng.uniform(5.0, 10.0);
    std::optional<CylQuad> q[2];
    for (auto& qi : q) {
      CylGenParams p;
      p.translation_length = std::exp(rng.uniform(std::log(4e-3), std::log(4e-2)));
      const double a = 0.5 * h + rng.uniform(-0.75, 0.75);
      p.offset_plus = a;
      p.offset_minus = -(h - a);
      p.phase = std::acos(rng.uniform() * std::min(1.0, p.translation_length));
      qi = try_generate_cyl(p);
    }
    if (!q[0] || !q[1]) continue;
    const SeparationBound b = separation_bound(inputs(q[0]->l_plus, q[0]->l_minus, q[1]->l_plus, q[1]->l_minus));
    bool past = true;
    for (int i = 4; i < 8; ++i) past = past && !b.terms[i].vacuous && h >= b.terms[i].value;
    if (!past) continue;
    ++checked;
    for (const auto& qi : q) {
      const CylQuad s = solve_axis(*qi);
      ASSERT_EQ(classify(s), SituationClass::ContainsAxis);
      EXPECT_LE(midpoint_path_length(s), kEps);
    }
  }
  EXPECT_EQ(checked, 200);
}

}  // namespace
}  // namespace hypgeom
