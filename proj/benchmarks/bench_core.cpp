#include <benchmark/benchmark.h>

#include <cmath>

#include "logsp/energy.hpp"
#include "logsp/kernels.hpp"
#include "logsp/manifolds.hpp"

using namespace logsp;

namespace {

const KernelTables& tables_for(int n) {
  static std::map<int, KernelTables> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, build_kernel_tables(make_grid(12.0, n))).first;
  return it->second;
}

GridFunction gauss(const GridSpec& spec) {
  return sample_function(spec, [](double x, double y) {
    return std::exp(-0.5 * (x * x + y * y));
  });
}

void BM_BuildKernelTables(benchmark::State& state) {
  const GridSpec spec = make_grid(12.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_kernel_tables(spec));
}
BENCHMARK(BM_BuildKernelTables)->Arg(128)->Arg(256);

void BM_Convolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelTables& t = tables_for(n);
  GridFunction rho = squared(gauss(t.spec));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(t, 0, rho));
}
BENCHMARK(BM_Convolve)->Arg(128)->Arg(192)->Arg(256);

void BM_EnergyTerms(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelTables& t = tables_for(n);
  GridFunction u = gauss(t.spec);
  const ProblemParams params{4.0, 1.0};
  const PotentialModel pot = builtin_well1();
  for (auto _ : state) benchmark::DoNotOptimize(energy_terms(u, params, pot, t));
}
BENCHMARK(BM_EnergyTerms)->Arg(128)->Arg(256);

void BM_Residual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelTables& t = tables_for(n);
  GridFunction u = gauss(t.spec);
  const ProblemParams params{4.0, 1.0};
  const PotentialModel pot = builtin_well1();
  for (auto _ : state) benchmark::DoNotOptimize(residual(u, params, pot, t));
}
BENCHMARK(BM_Residual)->Arg(128)->Arg(256);

void BM_NehariProject(benchmark::State& state) {
  const KernelTables& t = tables_for(256);
  GridFunction u = gauss(t.spec);
  const ProblemParams params{4.0, 1.0};
  const PotentialModel pot = builtin_well1();
  for (auto _ : state) benchmark::DoNotOptimize(nehari_project(u, params, pot, t));
}
BENCHMARK(BM_NehariProject);

void BM_NpProject(benchmark::State& state) {
  const KernelTables& t = tables_for(256);
  GridFunction u = gauss(t.spec);
  const ProblemParams params{3.0, 1.0};
  const PotentialModel pot = builtin_well1();
  for (auto _ : state) benchmark::DoNotOptimize(np_project(u, params, pot, t));
}
BENCHMARK(BM_NpProject);

}  // namespace

BENCHMARK_MAIN();
