#include <benchmark/benchmark.h>

#include "hyperlace/partition/partition.hpp"
#include "hyperlace/polycore/multipoly.hpp"
#include "hyperlace/rayleigh/rayleigh.hpp"
#include "hyperlace/unipoly/jacobi.hpp"

using namespace hyperlace;

static void BM_RestrictToLine(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  QMultiPoly h = elementary_symmetric(n, 3);
  Vector<Rational> base(n, Rational(1)), dir(n);
  for (std::size_t i = 0; i < n; ++i) dir[i] = ratio(static_cast<long>(i) + 1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(h.restrict_to_line(base, dir));
}
BENCHMARK(BM_RestrictToLine)->Arg(6)->Arg(10)->Arg(14);

static void BM_GreedyPartition(benchmark::State& state) {
  auto inst = standard_basis(static_cast<std::size_t>(state.range(0)), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_partition(inst));
}
BENCHMARK(BM_GreedyPartition)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_JacobiLargestZero(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  Rational ab(d);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_largest_zero_shifted(d, ab, ab));
}
BENCHMARK(BM_JacobiLargestZero)->Arg(20)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_EdmondsUniform(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  MatroidView m = uniform_matroid(2, n);
  for (auto _ : state) benchmark::DoNotOptimize(edmonds_check(m, n / 2));
}
BENCHMARK(BM_EdmondsUniform)->Arg(10)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
