#include <random>

#include <benchmark/benchmark.h>

#include "modalkit/nosignal.hpp"
#include "modalkit/verifiers.hpp"

using namespace modalkit;

namespace {

QMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  QMatrix m(RationalField{}, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(d(rng), 1 + (d(rng) + 9) % 5);
  }
  return m;
}

FpMatrix random_fp_matrix(std::int64_t p, std::size_t n, unsigned seed) {
  const PrimeField f(p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  FpMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = f.make(d(rng));
  }
  return m;
}

ColoringProblem cycle(std::size_t n) {
  std::vector<std::string> vs;
  std::vector<std::vector<std::string>> es;
  for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) es.push_back({vs[i], vs[(i + 1) % n]});
  return ColoringProblem(vs, es, 1);
}

void BM_RationalRref(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_RationalRref)->Arg(4)->Arg(8)->Arg(16)->Arg(36);

void BM_PrimeFieldRref(benchmark::State& state) {
  const auto m = random_fp_matrix(101, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_PrimeFieldRref)->Arg(8)->Arg(32)->Arg(64);

void BM_SingletTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(singlet_table(state.range(0)));
}
BENCHMARK(BM_SingletTable)->Arg(2)->Arg(101);

void BM_ColoringExhaustive(benchmark::State& state) {
  const auto p = cycle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_colorings(p));
}
BENCHMARK(BM_ColoringExhaustive)->Arg(3)->Arg(12)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_ColoringBacktracking(benchmark::State& state) {
  const auto p = cycle(static_cast<std::size_t>(state.range(0)));
  SearchLimits limits;
  limits.exhaustive_cap = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_colorings(p, limits));
}
BENCHMARK(BM_ColoringBacktracking)->Arg(20)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_LocalModels(benchmark::State& state) {
  const auto t = singlet_table(2);
  for (auto _ : state) benchmark::DoNotOptimize(find_local_models(t));
}
BENCHMARK(BM_LocalModels);

void BM_NoSignalSolve(benchmark::State& state) {
  const auto t = singlet_table(2);
  for (auto _ : state) {
    const auto sys = build_system(t);
    benchmark::DoNotOptimize(solve(sys));
  }
}
BENCHMARK(BM_NoSignalSolve)->Unit(benchmark::kMicrosecond);

void BM_ForcedZeros(benchmark::State& state) {
  const auto sys = build_system(singlet_table(2));
  const auto space = solve(sys);
  for (auto _ : state) benchmark::DoNotOptimize(forced_zero_cells(sys, space));
}
BENCHMARK(BM_ForcedZeros)->Unit(benchmark::kMillisecond);

void BM_EnumerateMeasurements(benchmark::State& state) {
  const auto p = state.range(0);
  const auto d = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_measurements(p, d));
}
BENCHMARK(BM_EnumerateMeasurements)->Args({2, 2})->Args({3, 3})->Args({2, 4})->Args({7, 2})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
