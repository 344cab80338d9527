#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hypgeom/error.hpp"
#include "hypgeom/models.hpp"
#include "hypgeom/surface.hpp"

namespace hypgeom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_interior_deviation(const H2GridOracle& o, const PolyhedralSurface& s) {
  double m = 0.0;
  for (int v : o.interior_vertices()) m = std::max(m, std::abs(s.cone_angle(v) - kTwoPi));
  return m;
}

TEST(H2Grid, ParameterValidation) {
  EXPECT_THROW(H2GridOracle({3, 0.6, -0.5}), DomainError);
  EXPECT_THROW(H2GridOracle({0, 0.6, -0.5}), DomainError);
  EXPECT_THROW(H2GridOracle({2, 0.75, -0.5}), DomainError);
  EXPECT_THROW(H2GridOracle({2, 0.6, 0.0}), DomainError);
  EXPECT_THROW(H2GridOracle({2, 0.6, -2.0}), DomainError);
}

TEST(H2Grid, ClosedSphere) {
  const H2GridOracle o({4, 0.6, -0.5});
  EXPECT_TRUE(validate(o.combinatorics()).ok());
  EXPECT_EQ(o.vertex_count(), 25 + 9);
  EXPECT_EQ(o.vertex_at(0, 0, 2), o.vertex_at(1, 0, 2));
  EXPECT_NE(o.vertex_at(0, 1, 2), o.vertex_at(1, 1, 2));
  EXPECT_TRUE(o.on_seam(o.vertex_at(0, 4, 4)));
  EXPECT_EQ(o.interior_vertices().size(), 18u);
  EXPECT_THROW(o.vertex_at(2, 0, 0), InvariantError);
}

TEST(H2Grid, MetricAxioms) {
  const H2GridOracle o({4, 0.6, -0.5});
  EXPECT_TRUE(check_oracle(o).ok(1e-9));
}

TEST(H2Grid, SameSheetIsPlaneDistance) {
  const H2GridParams p{4, 0.6, -0.25};
  const H2GridOracle o(p);
  const double w = p.half_width;
  const HPoint a = from_klein({-w + 0.5 * w, -w + 1.5 * w, 0.0});
  const HPoint b = from_klein({-w + 1.5 * w, -w + 0.5 * w, 0.0});
  EXPECT_NEAR(o.distance(o.vertex_at(0, 1, 3), o.vertex_at(0, 3, 1)), 2.0 * dist(a, b), 1e-12);
}

TEST(H2Grid, OppositeSheetsGoThroughTheSeam) {
  const H2GridOracle o({4, 0.6, -0.5});
  const int top = o.vertex_at(0, 2, 2), bottom = o.vertex_at(1, 2, 2);
  const int edge_mid = o.vertex_at(0, 0, 2);
  // The centre is equidistant from the four side midpoints.
  EXPECT_NEAR(o.distance(top, bottom), 2.0 * o.distance(top, edge_mid), 1e-9);
  const int a = o.vertex_at(0, 1, 1), b = o.vertex_at(1, 1, 1);
  EXPECT_GT(o.distance(a, b), 0.0);
  EXPECT_LT(o.distance(a, b), o.distance(a, o.vertex_at(0, 0, 0)) + o.distance(o.vertex_at(0, 0, 0), b) + 1e-12);
}

TEST(H2Grid, ComparisonPolyhedronConverges) {
  double prev_eps = 1e9, prev_dev = 1e9;
  const H2GridOracle coarse({2, 0.6, -0.5});
  for (int m : {2, 4, 8}) {
    const H2GridOracle o({m, 0.6, -0.5});
    const ComparisonResult res = comparison_polyhedron(o, o.combinatorics());
    EXPECT_TRUE(res.curvature.alexandrov);
    const double dev = max_interior_deviation(o, res.surface);
    // Measured on the vertices of the coarsest grid that are not joined by an edge there.
    const SurfaceOracle approx(res.surface, 8);
    auto image = [&](int v) {
      for (int s = 0; s < 2; ++s)
        for (int i = 0; i <= 2; ++i)
          for (int j = 0; j <= 2; ++j)
            if (coarse.vertex_at(s, i, j) == v) return o.vertex_at(s, i * m / 2, j * m / 2);
      return -1;
    };
    const PolyhedralSurface coarse_surface = comparison_polyhedron(coarse, coarse.combinatorics()).surface;
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < coarse.vertex_count(); ++u)
      for (int v = u + 1; v < coarse.vertex_count(); ++v)
        if (!coarse_surface.has_edge(u, v)) pairs.emplace_back(image(u), image(v));
    const double eps = metric_deviation([&](int u, int v) { return o.distance(u, v); },
                                        [&](int u, int v) { return approx.distance(u, v); }, pairs);
    EXPECT_LT(eps, prev_eps) << m;
    EXPECT_LT(dev, prev_dev) << m;
    prev_eps = eps;
    prev_dev = dev;
  }
}

TEST(H2Grid, FineNetConeAngles) {
  const H2GridOracle o({16, 0.6, -0.5});
  const ComparisonResult res = comparison_polyhedron(o, o.combinatorics());
  EXPECT_LT(max_interior_deviation(o, res.surface), 0.05);
  EXPECT_LT(std::abs(gauss_bonnet_residual(res.surface)), 1e-6);
}

}  // namespace
}  // namespace hypgeom
