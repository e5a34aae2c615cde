#include <benchmark/benchmark.h>

#include <vector>

#include "ppn/checks.hpp"
#include "ppn/datagen.hpp"
#include "ppn/estimators.hpp"
#include "ppn/model.hpp"
#include "ppn/random.hpp"

using namespace ppn;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

std::vector<double> normals(std::size_t n, std::uint64_t seed, double shift) {
  VariateStream s{Seed(seed)};
  std::vector<double> v(n);
  for (auto& x : v) x = shift + s.normal();
  return v;
}

void BM_KdeDensity(benchmark::State& state) {
  const auto samples = normals(static_cast<std::size_t>(state.range(1)), 1, 0.0);
  std::vector<double> grid(1024);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -5.0 + 10.0 * static_cast<double>(i) / 1023.0;
  for (auto _ : state) benchmark::DoNotOptimize(kde_density(samples, grid, mode(state)));
}

void BM_SymKl(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto p = normals(n, 2, 0.0);
  const auto q = normals(n, 3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sym_kl_estimate(p, q, mode(state)));
}

void BM_ReplicateDiagnostics(benchmark::State& state) {
  const DataSplit split = split_data(gen_gmm_data(600, Seed(4)), kEqualThirds, Seed(5));
  CheckConfig config;
  config.draws = 50;
  const auto model = make_gmm_model("K3", 3, GibbsConfig{400, 200, 2});
  const FittedModel fitted = fit_model(split, model, config, Seed(6));
  const auto R = static_cast<std::size_t>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(replicate_diagnostics(fitted, fitted, split.x_out, R, Seed(7), mode(state)));
}

}  // namespace

BENCHMARK(BM_KdeDensity)->ArgsProduct({{0, 1}, {200, 2000}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SymKl)->ArgsProduct({{0, 1}, {200, 2000}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ReplicateDiagnostics)->ArgsProduct({{0, 1}, {50, 200}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
