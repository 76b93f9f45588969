#include <benchmark/benchmark.h>

#include "poisskit/fixtures.hpp"
#include "poisskit/flow.hpp"
#include "poisskit/liealg.hpp"
#include "poisskit/poisson.hpp"

namespace {

using namespace poisskit;

void BM_ParseExpr(benchmark::State& state) {
  auto c = make_chart({"x", "y", "z", "w"});
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_expr("(x^2 + y*z - 3/4*w)^3 / (1 + x^2 + y^2)", *c));
}
BENCHMARK(BM_ParseExpr);

void BM_IsPoisson(benchmark::State& state) {
  const char* names[] = {"so3", "s3_standard", "s2_bruhat"};
  MultiVec pi = fixture(names[state.range(0)]).pi;
  for (auto _ : state) benchmark::DoNotOptimize(is_poisson(pi).ok);
  state.SetLabel(names[state.range(0)]);
}
BENCHMARK(BM_IsPoisson)->DenseRange(0, 2);

void BM_Cohomology(benchmark::State& state) {
  PoissonStructure pi(fixture("r2_xdxdy").pi);
  const auto d = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    for (std::size_t k = 0; k <= 2; ++k) benchmark::DoNotOptimize(cohomology(pi, k, d).dim_h);
}
BENCHMARK(BM_Cohomology)->DenseRange(2, 6, 2);

void BM_LiePoissonCohomology(benchmark::State& state) {
  PoissonStructure pi = lie_poisson(LieAlgebra::so3());
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(pi, 1, static_cast<unsigned>(state.range(0))).dim_h);
}
BENCHMARK(BM_LiePoissonCohomology)->DenseRange(1, 3);

void BM_RigidBodyRK4(benchmark::State& state) {
  MultiVec so3 = fixture("so3").pi;
  auto c = so3.chart_ptr();
  RatFunc h = parse_expr("x^2/2 + y^2/4 + z^2/6", *c);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 1;
  cfg.record_stride = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_hamiltonian(so3, h, {1, 0.1, 0.1}, cfg).h_drift);
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_RigidBodyRK4);

void BM_SprayRealization(benchmark::State& state) {
  MultiVec so3 = fixture("so3").pi;
  FlowConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(spray_realization(so3, {{1, 0, 0, 0.05, -0.02, 0.03}}, 16, cfg).size());
}
BENCHMARK(BM_SprayRealization);

}  // namespace

BENCHMARK_MAIN();
