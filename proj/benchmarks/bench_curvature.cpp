#include <benchmark/benchmark.h>

#include "ricci/curvature.hpp"
#include "ricci/geometrize.hpp"

using namespace ricci;

namespace {

void BM_LowerBoundGnm(benchmark::State& state) {
  const auto space = build_gnm(4, 2);
  const CurvatureOptions options{.sample_pairs = 0, .threads = 1};
  for (auto _ : state) benchmark::DoNotOptimize(ricci_lower_bound(space.graph(), space.kernel(), options).global_lb);
}

void BM_LowerBoundDOutRegular(benchmark::State& state) {
  const auto space = build_doutregular(4, 1);
  const CurvatureOptions options{.sample_pairs = 0, .threads = static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(ricci_lower_bound(space.graph(), space.kernel(), options).global_lb);
}

void BM_LowerBoundPermInsertionFloat(benchmark::State& state) {
  const auto space = build_permutation_insertion(static_cast<unsigned>(state.range(0)));
  const CurvatureOptions options{.sample_pairs = 0, .threads = 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(ricci_lower_bound(space.graph(), space.kernel_double(), options).global_lb);
}

void BM_BuildPermInsertion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_permutation_insertion(static_cast<unsigned>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_LowerBoundGnm);
BENCHMARK(BM_LowerBoundDOutRegular)->Arg(1)->Arg(4);
BENCHMARK(BM_LowerBoundPermInsertionFloat)->Arg(4)->Arg(5);
BENCHMARK(BM_BuildPermInsertion)->Arg(5)->Arg(6);
BENCHMARK_MAIN();
