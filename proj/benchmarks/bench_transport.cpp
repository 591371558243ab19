#include <benchmark/benchmark.h>

#include "ricci/checks.hpp"
#include "ricci/curvature.hpp"
#include "ricci/transport.hpp"

using namespace ricci;

namespace {

template <Scalar T>
void BM_WassersteinNeighborRows(benchmark::State& state) {
  Rng rng(1);
  const auto g = random_connected_graph(static_cast<std::size_t>(state.range(0)), 0.1, rng);
  const auto m = lazy_kernel<T>(g, T(0));
  const auto [x, y] = g.edges().front();
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein(m.row(x), m.row(y), g).distance);
}

void BM_KantorovichDual(benchmark::State& state) {
  Rng rng(2);
  const auto g = random_connected_graph(static_cast<std::size_t>(state.range(0)), 0.1, rng);
  const auto m = lazy_kernel(g, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(kantorovich_dual(m.row(0), m.row(1), g).value);
}

}  // namespace

BENCHMARK(BM_WassersteinNeighborRows<double>)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_WassersteinNeighborRows<Rational>)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_KantorovichDual)->Arg(16)->Arg(64);
BENCHMARK_MAIN();
