#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hyperlip/bounds.hpp"
#include "hyperlip/curves.hpp"
#include "hyperlip/realroots.hpp"
#include "hyperlip/tracking.hpp"

using namespace hyperlip;

namespace {

MonicPoly random_hyperbolic(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> roots(static_cast<size_t>(n));
  for (double& r : roots) r = u(rng);
  return MonicPoly::from_roots(roots);
}

GroundTruthFamily random_family(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Poly> roots;
  for (int j = 0; j < n; ++j) roots.push_back(Poly({u(rng), u(rng), u(rng), u(rng), u(rng)}));
  return from_root_functions(roots, {-1.0, 1.0});
}

void BM_OrderedRoots(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<MonicPoly> ps;
  for (int i = 0; i < 64; ++i) ps.push_back(random_hyperbolic(static_cast<int>(state.range(0)), rng));
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ordered_roots(ps[i++ % ps.size()]));
}
BENCHMARK(BM_OrderedRoots)->DenseRange(2, 8, 2);

void BM_DoubleRoot(benchmark::State& state) {
  const MonicPoly p = MonicPoly::from_roots(std::vector<double>{-1.0, 0.5, 0.5 + 1e-6, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(ordered_roots(p));
}
BENCHMARK(BM_DoubleRoot);

void BM_TrackOrdered(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const GroundTruthFamily f = random_family(static_cast<int>(state.range(0)), rng);
  const std::vector<double> grid = sample_grid({-0.5, 0.5}, 2048);
  for (auto _ : state) benchmark::DoNotOptimize(track_ordered(f.curve, grid));
}
BENCHMARK(BM_TrackOrdered)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_TrackMatched(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const GroundTruthFamily f = random_family(static_cast<int>(state.range(0)), rng);
  const std::vector<double> grid = sample_grid({-0.5, 0.5}, 2048);
  for (auto _ : state) benchmark::DoNotOptimize(track_matched(f.curve, grid));
}
BENCHMARK(BM_TrackMatched)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_BronshteinBound(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const GroundTruthFamily f = random_family(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(bronshtein_bound(f.curve, {-0.5, 0.5}, {-1.0, 1.0}));
}
BENCHMARK(BM_BronshteinBound)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
