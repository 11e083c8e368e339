#include <benchmark/benchmark.h>

#include <random>

#include "webtrace/annulus.hpp"
#include "webtrace/kasteleyn.hpp"
#include "webtrace/matrix.hpp"
#include "webtrace/multiweb.hpp"

using namespace webtrace;

static Matrix<Rational> random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix<Rational> m(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = Rational(static_cast<long>(rng() % 19) - 9,
                         1 + static_cast<long>(rng() % 4));
  return m;
}

static void BM_DetFractionFree(benchmark::State& state) {
  auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(det_fraction_free(m));
}
BENCHMARK(BM_DetFractionFree)->Arg(6)->Arg(10)->Arg(14);

static void BM_AnnulusDetKz(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(det_Kz(1, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AnnulusDetKz)->Arg(2)->Arg(4);

static void BM_AnnulusGridTraceSum(benchmark::State& state) {
  AnnulusGrid ag = build_annulus_grid(1, 2);
  Connection<Rational> conn = random_sl(ag.graph, 3, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_main(ag.graph, 3, conn));
}
BENCHMARK(BM_AnnulusGridTraceSum);

BENCHMARK_MAIN();
