// Parallel kernels against the naive reference loops.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fraceig/grid_function.hpp"
#include "fraceig/kernels.hpp"

using namespace fraceig;

namespace {

DomainPtr domain_for(int n1d, int dim) {
  if (dim == 1) return build_domain({1, 1.0 / n1d, Shape::interval(0, 1)}, 4.0);
  return build_domain({2, 1.0 / n1d, Shape::box({0, 0}, {1, 1})}, 4.0);
}

GridFunction random_function(const DomainPtr& d) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> v(d->omega_count());
  for (auto& x : v) x = U(rng);
  return GridFunction::from_free(d, v);
}

const FracParams kParams(0.5, 1.5);

void BM_ReferenceEnergy(benchmark::State& st) {
  auto d = domain_for(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  auto u = random_function(d);
  for (auto _ : st) benchmark::DoNotOptimize(reference::energy(u.values(), *d, kParams));
  st.counters["cells"] = static_cast<double>(d->size());
}

void BM_KernelEnergy(benchmark::State& st) {
  auto d = domain_for(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const KernelOperator op(d, kParams, static_cast<int>(st.range(2)));
  const auto u = random_function(d).free_values();
  for (auto _ : st) benchmark::DoNotOptimize(op.energy(u));
  st.counters["omega"] = static_cast<double>(d->omega_count());
}

void BM_ReferenceApply(benchmark::State& st) {
  auto d = domain_for(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  auto u = random_function(d);
  for (auto _ : st) benchmark::DoNotOptimize(reference::apply(u.values(), *d, kParams));
}

void BM_KernelEnergyApply(benchmark::State& st) {
  auto d = domain_for(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const KernelOperator op(d, kParams, static_cast<int>(st.range(2)));
  const auto u = random_function(d).free_values();
  std::vector<double> g(u.size());
  for (auto _ : st) benchmark::DoNotOptimize(op.energy_apply(u, g));
}

void BM_KernelAssembly(benchmark::State& st) {
  auto d = domain_for(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) {
    KernelOperator op(d, kParams, static_cast<int>(st.range(2)));
    benchmark::DoNotOptimize(op.tail(0));
  }
}

}  // namespace

BENCHMARK(BM_ReferenceEnergy)->Args({64, 1})->Args({16, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReferenceApply)->Args({64, 1})->Args({16, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelEnergy)->ArgsProduct({{64}, {1}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelEnergy)->ArgsProduct({{16, 32}, {2}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelEnergyApply)->ArgsProduct({{16, 32}, {2}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelAssembly)->ArgsProduct({{32}, {2}, {1, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
