#include <benchmark/benchmark.h>

#include "repring/exprparse.hpp"
#include "repring/families.hpp"
#include "repring/gamma.hpp"
#include "repring/jordan_oracle.hpp"
#include "repring/species.hpp"

using namespace repring;

static void BM_JordanOracle(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(jordan_tensor_type(5, 2, a, a));
}
BENCHMARK(BM_JordanOracle)->Arg(8)->Arg(16)->Arg(25);

static void BM_CyclicPnTable(benchmark::State& state) {
  for (auto _ : state) {
    RingSpec r = cyclic_pn(5, 2);
    benchmark::DoNotOptimize(r.rank());
  }
}
BENCHMARK(BM_CyclicPnTable);

static void BM_CoreDimSequence(benchmark::State& state) {
  RingSpec z5 = cyclic_p(5);
  Element j2 = parse_element("J2", z5);
  RepIdeal proj = x_proj(z5);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(core_dim_sequence(j2, proj, z5, N));
}
BENCHMARK(BM_CoreDimSequence)->Arg(32)->Arg(128);

static void BM_GammaPF(benchmark::State& state) {
  RingSpec z13 = cyclic_p(13);
  Element x = parse_element("J2+J3", z13);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_pf(x, z13).gamma);
}
BENCHMARK(BM_GammaPF);

static void BM_EnumerateSpecies(benchmark::State& state) {
  RingSpec r = z2_z4_integral();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_species(r).size());
}
BENCHMARK(BM_EnumerateSpecies);

BENCHMARK_MAIN();
