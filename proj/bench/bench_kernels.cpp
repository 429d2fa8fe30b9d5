// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "lovx/graphinv.hpp"
#include "lovx/random_fn.hpp"
#include "lovx/submod.hpp"

using namespace lovx;

namespace {

SetFunction bench_function(int n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  Rng rng(seed);
  return random_function(n, Mode::Set, 1, rng, lo, hi);
}

void BM_Enumerate(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto f = bench_function(n, 1), g = bench_function(n, 2, 0.1, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_ratio_optimum(f, g).value);
}
void BM_EnumerateSerial(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto f = bench_function(n, 1), g = bench_function(n, 2, 0.1, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(serial::enumerate_ratio_optimum(f, g).value);
}

void BM_Submodular(benchmark::State& st) {
  Rng rng(3);
  const auto f = random_submodular(static_cast<int>(st.range(0)), rng).materialized();
  for (auto _ : st) benchmark::DoNotOptimize(is_submodular(f).holds);
}
void BM_SubmodularSerial(benchmark::State& st) {
  Rng rng(3);
  const auto f = random_submodular(static_cast<int>(st.range(0)), rng).materialized();
  for (auto _ : st) benchmark::DoNotOptimize(serial::is_submodular(f).holds);
}

void BM_Multistart(benchmark::State& st) {
  const auto p = cheeger_problem(Graph::cycle(8), CheegerVariant::Classic);
  SolverConfig cfg;
  for (auto _ : st) benchmark::DoNotOptimize(mixed_ipsd_multistart(p, cfg, IpsdVariant::Normalized).r);
}
void BM_MultistartSerial(benchmark::State& st) {
  const auto p = cheeger_problem(Graph::cycle(8), CheegerVariant::Classic);
  SolverConfig cfg;
  for (auto _ : st) benchmark::DoNotOptimize(serial::mixed_ipsd_multistart(p, cfg, IpsdVariant::Normalized).r);
}

void BM_OptimumCheck(benchmark::State& st) {
  const auto r = chromatic_number(Graph::cycle(5));
  for (auto _ : st) benchmark::DoNotOptimize(check_discrete_continuous(r, st.range(0), 42).best_sampled);
}
void BM_OptimumCheckSerial(benchmark::State& st) {
  const auto r = chromatic_number(Graph::cycle(5));
  for (auto _ : st) benchmark::DoNotOptimize(serial::check_discrete_continuous(r, st.range(0), 42).best_sampled);
}

}  // namespace

BENCHMARK(BM_Enumerate)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnumerateSerial)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Submodular)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SubmodularSerial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Multistart)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MultistartSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OptimumCheck)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OptimumCheckSerial)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
