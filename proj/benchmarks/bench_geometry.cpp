#include <benchmark/benchmark.h>

#include <numbers>

#include "hypgeom/bounds.hpp"
#include "hypgeom/cylinder.hpp"
#include "hypgeom/hyperboloid.hpp"
#include "hypgeom/random.hpp"
#include "hypgeom/surface.hpp"

using namespace hypgeom;

static void BM_Distance(benchmark::State& state) {
  Rng rng(1);
  const HPoint p = random_point(rng, 3.0), q = random_point(rng, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(dist(p, q));
}
BENCHMARK(BM_Distance);

static void BM_ProbeReconstruction(benchmark::State& state) {
  Rng rng(2);
  const Isometry g = random_isometry(rng, 2.0);
  const auto p = probe_points();
  const std::array<HPoint, 4> images = {g.apply(p[0]), g.apply(p[1]), g.apply(p[2]), g.apply(p[3])};
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_from_probes(images));
}
BENCHMARK(BM_ProbeReconstruction);

// refinement sweep on the octahedron
static void BM_IntrinsicMetric(benchmark::State& state) {
  const PolyhedralSurface s(octahedron());
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const IntrinsicMetric m(s, n);
    benchmark::DoNotOptimize(m.distance(0, 1));
  }
}
BENCHMARK(BM_IntrinsicMetric)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

static void BM_ComparisonH2Grid(benchmark::State& state) {
  const H2GridOracle o({static_cast<int>(state.range(0)), 0.6, -0.5});
  for (auto _ : state) benchmark::DoNotOptimize(comparison_polyhedron(o, o.combinatorics()));
}
BENCHMARK(BM_ComparisonH2Grid)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

static void BM_SolveAxis(benchmark::State& state) {
  CylGenParams p;
  p.translation_length = 0.2;
  p.offset_plus = 1.5;
  p.offset_minus = -0.7;
  p.phase = 1.55;
  const CylQuad q = generate_cyl(p);
  for (auto _ : state) benchmark::DoNotOptimize(solve_axis(q));
}
BENCHMARK(BM_SolveAxis);

static void BM_SeparationBound(benchmark::State& state) {
  BoundInputs in;
  in.l_plus_1 = 0.8;
  in.l_minus_1 = 1.3;
  in.l_plus_2 = 2.1;
  in.l_minus_2 = 0.4;
  for (auto _ : state) benchmark::DoNotOptimize(separation_bound(in));
}
BENCHMARK(BM_SeparationBound);

static void BM_VerifySituation2(benchmark::State& state) {
  McConfig cfg;
  cfg.seed = 9;
  cfg.instances = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_situation2(cfg));
}
BENCHMARK(BM_VerifySituation2)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
