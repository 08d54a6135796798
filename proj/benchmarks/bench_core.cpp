#include <benchmark/benchmark.h>

#include "cosimplex/cohomology.hpp"
#include "cosimplex/hessenberg.hpp"
#include "cosimplex/labels.hpp"
#include "cosimplex/normal_extension.hpp"
#include "cosimplex/spread.hpp"
#include "cosimplex/tower.hpp"

using namespace cosimplex;

namespace {

void BM_EnumerateLabels(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_labels(level));
}
BENCHMARK(BM_EnumerateLabels)->DenseRange(6, 12, 3);

void BM_ExactCohomologyPrototypical(benchmark::State& state) {
  auto complex = build_complex(prototypical(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(complex));
}
BENCHMARK(BM_ExactCohomologyPrototypical)->DenseRange(4, 12, 4);

void BM_MinimalNormalExtension(benchmark::State& state) {
  auto scs = from_ell({2, 3, 2, 3}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_normal_extension(scs));
}
BENCHMARK(BM_MinimalNormalExtension)->DenseRange(6, 12, 3);

template <class T>
void BM_CheckNormal(benchmark::State& state) {
  auto tower = from_scs<T>(prototypical(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(check_normal(tower));
}
BENCHMARK(BM_CheckNormal<Rational>)->DenseRange(4, 8, 2);
BENCHMARK(BM_CheckNormal<double>)->DenseRange(4, 8, 2);

void BM_Hessenberg(benchmark::State& state) {
  auto data = build_symmetric_rep(from_scs<Rational>(prototypical(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(check_hessenberg(data));
}
BENCHMARK(BM_Hessenberg)->DenseRange(4, 8, 2);

void BM_TheoremCFloat(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  DMatrix c(k, k);
  for (std::size_t i = 0; i < k; ++i) c(i, i) = 0.5 / static_cast<double>(i + 1);
  auto family = from_contraction(c, 8);
  for (auto _ : state) benchmark::DoNotOptimize(check_theorem_C(family));
}
BENCHMARK(BM_TheoremCFloat)->DenseRange(1, 4, 1);

}  // namespace

BENCHMARK_MAIN();
