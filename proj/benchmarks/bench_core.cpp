#include <benchmark/benchmark.h>

#include "nonlocal/behavior.hpp"
#include "nonlocal/bell.hpp"
#include "nonlocal/capacity.hpp"
#include "nonlocal/polytope.hpp"
#include "nonlocal/quantum.hpp"

using namespace nonlocal;

static void BM_BornBehavior(benchmark::State& state) {
  double gamma = 0.5;
  for (auto _ : state) {
    auto p = born_behavior(gamma, 0.9);
    benchmark::DoNotOptimize(p);
    gamma = gamma < 1.0 ? gamma + 1e-6 : 0.5;  // defeat caching
  }
}
BENCHMARK(BM_BornBehavior);

static void BM_I3(benchmark::State& state) {
  const BehaviorTable p = born_behavior(0.8, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(i3_signed(p));
}
BENCHMARK(BM_I3);

static void BM_SignalingDeficit(benchmark::State& state) {
  const BehaviorTable p = born_behavior(0.8, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(signaling_deficit(p));
}
BENCHMARK(BM_SignalingDeficit);

static void BM_EnumerateQutritVertices(benchmark::State& state) {
  for (auto _ : state) {
    auto set = enumerate_local_vertices({2, 2, 3, 3});
    benchmark::DoNotOptimize(set);
  }
}
BENCHMARK(BM_EnumerateQutritVertices);

static void BM_DistanceLocalQutrit(benchmark::State& state) {
  const BehaviorTable p = born_behavior(1.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(distance_to_local_polytope(p).distance);
}
BENCHMARK(BM_DistanceLocalQutrit);

static void BM_ProjectNonsignaling(benchmark::State& state) {
  // A genuinely signaling input so the full two-stage path runs.
  Dims d{2, 2, 3, 3};
  std::vector<double> e = born_behavior(0.7, 0.9).entries();
  e[d.index(0, 0, 0, 0)] += 0.05;
  e[d.index(0, 0, 1, 1)] -= 0.05;
  const BehaviorTable p(d, e);
  for (auto _ : state)
    benchmark::DoNotOptimize(project_nonsignaling(p).distance);
}
BENCHMARK(BM_ProjectNonsignaling);

static void BM_BlahutArimotoBsc(benchmark::State& state) {
  Eigen::MatrixXd bsc(2, 2);
  bsc << 0.89, 0.11, 0.11, 0.89;
  for (auto _ : state)
    benchmark::DoNotOptimize(channel_capacity(bsc, 1e-6).capacity_bits);
}
BENCHMARK(BM_BlahutArimotoBsc);

static void BM_NonlocalCapacityPr(benchmark::State& state) {
  const BehaviorTable pr = BehaviorTable::pr_box();
  for (auto _ : state)
    benchmark::DoNotOptimize(nonlocal_capacity_asym(pr, 1e-4).value);
}
BENCHMARK(BM_NonlocalCapacityPr);

static void BM_NonlocalCapacityQutrit(benchmark::State& state) {
  const BehaviorTable p = born_behavior(1.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(nonlocal_capacity_asym(p, 1e-4).value);
}
BENCHMARK(BM_NonlocalCapacityQutrit);

BENCHMARK_MAIN();
