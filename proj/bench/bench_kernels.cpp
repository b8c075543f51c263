// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "jetlie/catalog.hpp"
#include "jetlie/cocycle.hpp"
#include "jetlie/group.hpp"
#include "jetlie/quadrature.hpp"
#include "jetlie/vanest.hpp"

namespace {

using namespace jetlie;

void BM_StructureConstants(benchmark::State& state) {
  const auto g = su2_group();
  for (auto _ : state) benchmark::DoNotOptimize(structure_constants(g));
}
void BM_StructureConstantsSerial(benchmark::State& state) {
  const auto g = su2_group();
  for (auto _ : state) benchmark::DoNotOptimize(structure_constants_serial(g));
}

void BM_CocycleIdentity(benchmark::State& state) {
  const auto g = su2_group();
  const auto f = make_cocycle("vanest:coboundary", g);
  for (auto _ : state) benchmark::DoNotOptimize(cocycle_identity_residual(g, f, 1));
}
void BM_CocycleIdentitySerial(benchmark::State& state) {
  const auto g = su2_group();
  const auto f = make_cocycle("vanest:coboundary", g);
  for (auto _ : state) benchmark::DoNotOptimize(cocycle_identity_residual_serial(g, f, 1));
}

const std::vector<double> kX{0.2, -0.1, 0.15}, kY{-0.05, 0.25, 0.1};

void BM_IntegrateF0(benchmark::State& state) {
  const auto g = su2_group();
  const auto w = make_omega("coboundary", g);
  const auto rule = simplex_rule(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_f0(g, w, kX, kY, rule));
}
void BM_IntegrateF0Serial(benchmark::State& state) {
  const auto g = su2_group();
  const auto w = make_omega("coboundary", g);
  const auto rule = simplex_rule(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_f0_serial(g, w, kX, kY, rule));
}

void BM_DifferentiateCocycle(benchmark::State& state) {
  const auto g = su2_group();
  const auto f = make_cocycle("vanest:coboundary", g);
  for (auto _ : state) benchmark::DoNotOptimize(differentiate_cocycle(g, f));
}
void BM_DifferentiateCocycleSerial(benchmark::State& state) {
  const auto g = su2_group();
  const auto f = make_cocycle("vanest:coboundary", g);
  for (auto _ : state) benchmark::DoNotOptimize(differentiate_cocycle_serial(g, f));
}

BENCHMARK(BM_StructureConstants)->UseRealTime();
BENCHMARK(BM_StructureConstantsSerial)->UseRealTime();
BENCHMARK(BM_CocycleIdentity)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CocycleIdentitySerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntegrateF0)->Arg(7)->Arg(15)->Arg(31)->UseRealTime();
BENCHMARK(BM_IntegrateF0Serial)->Arg(7)->Arg(15)->Arg(31)->UseRealTime();
BENCHMARK(BM_DifferentiateCocycle)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DifferentiateCocycleSerial)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
