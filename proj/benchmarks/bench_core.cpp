#include <benchmark/benchmark.h>

#include <vector>

#include "ncdeform/coalgebra_star.hpp"
#include "ncdeform/momentum_flow.hpp"
#include "ncdeform/realization.hpp"

using namespace ncdeform;

namespace {

DeformationParams sample_params(int n) {
  std::vector<mpq_class> a;
  for (int mu = 0; mu < n; ++mu) a.emplace_back(mu + 1, 10 * (mu + 2));
  return DeformationParams(n, a, mpq_class(3, 100));
}

}  // namespace

// Normal ordering of xhat_0 xhat_1 at truncation N.
static void BM_NormalProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Realization r(RealizationSpec(sample_params(n), FKind::sqrt_one_minus_B, static_cast<int>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(normal_product(r.xhat(0), r.xhat(1), r.trunc()));
}
BENCHMARK(BM_NormalProduct)->Args({2, 8})->Args({3, 8})->Args({4, 8})->Unit(benchmark::kMicrosecond);

static void BM_CheckAxioms(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Realization r(RealizationSpec(sample_params(n), FKind::sqrt_one_minus_B, 8));
  for (auto _ : state) benchmark::DoNotOptimize(check_axioms(r, 6));
}
BENCHMARK(BM_CheckAxioms)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_DsumSeries(benchmark::State& state) {
  const int order = static_cast<int>(state.range(1));
  const auto p = sample_params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dsum_series(p, order));
}
BENCHMARK(BM_DsumSeries)->Args({2, 6})->Args({3, 6})->Args({4, 6})->Unit(benchmark::kMillisecond);

static void BM_FlowClosedForm(benchmark::State& state) {
  const auto p = FloatParams::make({0.1, -0.05, 0.03}, 0.02);
  const MomentumVector k = {0.4, -0.2, 0.3}, q = {0.1, 0.5, -0.4};
  for (auto _ : state) benchmark::DoNotOptimize(flow_closed_form(k, q, 1.0, p));
}
BENCHMARK(BM_FlowClosedForm);

static void BM_FlowRk4(benchmark::State& state) {
  const auto p = FloatParams::make({0.1, -0.05, 0.03}, 0.02);
  const MomentumVector k = {0.4, -0.2, 0.3}, q = {0.1, 0.5, -0.4};
  for (auto _ : state) benchmark::DoNotOptimize(flow_ode(k, q, 1.0, p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FlowRk4)->Arg(1000);

static void BM_StarPlaneWaves(benchmark::State& state) {
  const auto p = FloatParams::make({0.1, -0.05, 0.03}, 0.02);
  const MomentumVector k = {0.4, -0.2, 0.3}, q = {0.1, 0.5, -0.4};
  for (auto _ : state) benchmark::DoNotOptimize(star_plane_waves(k, q, p));
}
BENCHMARK(BM_StarPlaneWaves);
BENCHMARK_MAIN();
