#include <benchmark/benchmark.h>

#include "jetlie/parse.hpp"
#include "jetlie/solutions.hpp"
#include "jetlie/symmetry.hpp"
#include "jetlie/variational.hpp"

namespace {

using namespace jetlie;

void BM_ParseSupportPower(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse("(x*u_x + y*u_y - u)^4"));
}
BENCHMARK(BM_ParseSupportPower);

void BM_SymmetryResidual(benchmark::State& state) {
  const LieAlgebra g = titeica_symmetry_algebra();
  const JetExpr F = titeica_operator();
  for (auto _ : state) {
    for (const auto& X : g.basis()) benchmark::DoNotOptimize(symmetry_residual(X, F, true));
  }
}
BENCHMARK(BM_SymmetryResidual)->Unit(benchmark::kMillisecond);

void BM_StructureTable(benchmark::State& state) {
  const LieAlgebra g = titeica_symmetry_algebra();
  for (auto _ : state) benchmark::DoNotOptimize(structure_table(g));
}
BENCHMARK(BM_StructureTable)->Unit(benchmark::kMillisecond);

void BM_DeterminingSystem(benchmark::State& state) {
  const JetExpr F = titeica_operator();
  for (auto _ : state) benchmark::DoNotOptimize(determining_system(F));
}
BENCHMARK(BM_DeterminingSystem)->Unit(benchmark::kMillisecond);

void BM_EulerLagrange(benchmark::State& state) {
  const JetExpr L = titeica_lagrangian();
  for (auto _ : state) benchmark::DoNotOptimize(euler_lagrange(L));
}
BENCHMARK(BM_EulerLagrange)->Unit(benchmark::kMillisecond);

void BM_NoetherFlux(benchmark::State& state) {
  const JetExpr L = titeica_lagrangian();
  const JetExpr Q = parse("y*u_x"), xi1 = parse("-y");
  for (auto _ : state) benchmark::DoNotOptimize(noether_flux(Q, L, xi1, 0));
}
BENCHMARK(BM_NoetherFlux)->Unit(benchmark::kMillisecond);

void BM_VerifyCatalog(benchmark::State& state) {
  const auto& entries = builtin_catalog();
  for (auto _ : state) benchmark::DoNotOptimize(verify_catalog(entries, GridSpec{}));
}
BENCHMARK(BM_VerifyCatalog)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
