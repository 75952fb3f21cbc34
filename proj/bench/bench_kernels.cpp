// Serial reference vs OpenMP kernels on the hot paths.
//
//   ./bench_kernels --benchmark_filter=Robust
//
// OMP_NUM_THREADS controls the parallel backend's width.

#include <benchmark/benchmark.h>

#include <random>

#include "betaot/costs.hpp"
#include "betaot/solver.hpp"

namespace {

using namespace betaot;

PointCloud cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  PointCloud pc(d);
  std::vector<double> p(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : p) v = nd(rng);
    pc.push_back(p);
  }
  return pc;
}

Exec backend(const benchmark::State& s) { return s.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_Cost(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = cloud(n, 10, 1), y = cloud(n, 10, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sq_euclidean_cost(x, y, backend(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}

void BM_RobustSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cost = sq_euclidean_cost(cloud(n, 2, 3), cloud(n, 2, 4));
  SolverConfig cfg;
  cfg.iterations = 10;
  cfg.exec = backend(state);
  for (auto _ : state) benchmark::DoNotOptimize(robust_solve(cost, cfg));
  state.SetItemsProcessed(state.iterations() * 10 * static_cast<long>(n * n));
}

void BM_Sinkhorn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cost = sq_euclidean_cost(cloud(n, 2, 5), cloud(n, 2, 6));
  for (auto _ : state)
    benchmark::DoNotOptimize(sinkhorn_solve(cost, 2.0, 0.0, 20, backend(state)));
  state.SetItemsProcessed(state.iterations() * 20 * static_cast<long>(n * n));
}

void BM_SinkhornLog(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cost = sq_euclidean_cost(cloud(n, 2, 5), cloud(n, 2, 6));
  for (auto _ : state)
    benchmark::DoNotOptimize(sinkhorn_solve_log(cost, 2.0, 0.0, 20, backend(state)));
  state.SetItemsProcessed(state.iterations() * 20 * static_cast<long>(n * n));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {256, 1024, 2048})
    for (long par : {0, 1}) b->Args({n, par});
  b->ArgNames({"n", "omp"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_Cost)->Apply(sizes);
BENCHMARK(BM_RobustSolve)->Apply(sizes);
BENCHMARK(BM_Sinkhorn)->Apply(sizes);
BENCHMARK(BM_SinkhornLog)->Apply(sizes);

BENCHMARK_MAIN();
