#include <benchmark/benchmark.h>

#include "lamina/circuits.hpp"
#include "lamina/gcs.hpp"
#include "lamina/symbolic.hpp"

using namespace lamina;

static void BM_Kneading(benchmark::State& state) {
  Angle alpha(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kneading(2, alpha));
}
BENCHMARK(BM_Kneading)->Arg(6)->Arg(1022)->Arg(65534);

static void BM_Legal(benchmark::State& state) {
  auto nu = kneading(2, Angle(7, 30));
  Word g = itinerary(2, Angle(7, 30), Angle(3, 17), static_cast<size_t>(state.range(0)));
  for (auto& l : g)
    if (l == kStar) l = kL;
  for (auto _ : state) benchmark::DoNotOptimize(legal(g, nu));
}
BENCHMARK(BM_Legal)->Arg(16)->Arg(64)->Arg(256);

static void BM_Leaves(benchmark::State& state) {
  Circle c(2, Angle(1, 6));
  for (auto _ : state) benchmark::DoNotOptimize(leaves(c, state.range(0)));
}
BENCHMARK(BM_Leaves)->DenseRange(4, 10, 3);

static void BM_GCSPartition(benchmark::State& state) {
  Circle c(2, Angle(7, 30));
  for (auto _ : state) benchmark::DoNotOptimize(gcs_partition(c, state.range(0)));
}
BENCHMARK(BM_GCSPartition)->Arg(2)->Arg(5)->Arg(8);

static void BM_PullbackChain(benchmark::State& state) {
  Circle c(2, Angle(1, 6));
  CKCovering cov(c, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pullback_chain(cov, Angle(5, 37), state.range(0)));
}
BENCHMARK(BM_PullbackChain)->Arg(10)->Arg(30);

static void BM_IteratePullback(benchmark::State& state) {
  Circle c(2, Angle(1, 6));
  CylinderCovering cov(c, 2);
  Angle x(5, 37);
  long n = state.range(0);
  Angle top = c.hop(x, n);
  GluingCircuit g = leaf_circuit(c, cov.link_for(top), top, 6, 3, 12);
  for (auto _ : state) benchmark::DoNotOptimize(iterate_pullback(cov, g, x, n));
}
BENCHMARK(BM_IteratePullback)->Arg(4)->Arg(12);

static void BM_SRSearch(benchmark::State& state) {
  auto nu = kneading(2, Angle(7, 30));
  for (auto _ : state)
    benchmark::DoNotOptimize(sr_search(nu, 4, mpq_class(9, 10), state.range(0), SRMode::kGreedy));
}
BENCHMARK(BM_SRSearch)->Arg(20)->Arg(60);

BENCHMARK_MAIN();
