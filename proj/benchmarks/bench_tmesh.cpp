#include <benchmark/benchmark.h>

#include "tmesh/asuit.hpp"
#include "tmesh/complexity.hpp"
#include "tmesh/dual.hpp"
#include "tmesh/marking.hpp"

namespace {

using namespace tmesh;

Mesh refined_mesh(int m) {
  Mesh g = Mesh::initial({6, 6, 6}, {3, 3, 3}, m);
  for (std::uint64_t r = 0; r < 2; ++r) {
    const auto marked = random_marking(g, 5, 42 + r);
    g = refine(g, marked, {.check_input = false}).output;
  }
  return g;
}

void BM_CornerExperiment(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto log = corner_experiment({4, 5, 8}, {3, 3, 3}, m, 16);
    benchmark::DoNotOptimize(log.total_new());
  }
}
BENCHMARK(BM_CornerExperiment)->Arg(2)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Closure(benchmark::State& state) {
  const Mesh g = refined_mesh(2);
  const auto marked = random_marking(g, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(closure(g, marked).size());
}
BENCHMARK(BM_Closure)->Arg(1)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_VerifyAdmissible(benchmark::State& state) {
  Mesh g = Mesh::initial({4, 5, 8}, {3, 3, 3}, 4);
  corner_experiment({4, 5, 8}, {3, 3, 3}, 4, 16, &g);
  for (auto _ : state) benchmark::DoNotOptimize(verify_admissible(g).admissible);
}
BENCHMARK(BM_VerifyAdmissible)->Unit(benchmark::kMillisecond);

void BM_AnalysisSuitable(benchmark::State& state) {
  const Mesh g = refined_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const Topology topo(g);
    benchmark::DoNotOptimize(is_analysis_suitable(topo).analysis_suitable);
  }
}
BENCHMARK(BM_AnalysisSuitable)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DualCompatible(benchmark::State& state) {
  const Mesh g = refined_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const Topology topo(g);
    benchmark::DoNotOptimize(is_dual_compatible(topo).dual_compatible);
  }
}
BENCHMARK(BM_DualCompatible)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DualBasisCheck(benchmark::State& state) {
  const Mesh g = refined_mesh(2);
  for (auto _ : state) {
    const Topology topo(g);
    benchmark::DoNotOptimize(dual_basis_check(topo).max_error);
  }
}
BENCHMARK(BM_DualBasisCheck)->Unit(benchmark::kMillisecond);

void BM_RankOracle(benchmark::State& state) {
  const Mesh g = Mesh::initial({static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(0))},
                               {3, 3, 3}, 2);
  const Topology topo(g);
  for (auto _ : state) benchmark::DoNotOptimize(rank_oracle(topo).rank);
}
BENCHMARK(BM_RankOracle)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LambdaCubic(benchmark::State& state) {
  const double knots[] = {0, 1, 1.5, 2, 3};
  const double other[] = {1, 1.5, 2, 3, 4};
  for (auto _ : state) benchmark::DoNotOptimize(lambda_1d(knots, other));
}
BENCHMARK(BM_LambdaCubic);

}  // namespace

BENCHMARK_MAIN();
