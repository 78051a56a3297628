#include <benchmark/benchmark.h>

#include "canvar/bounds.hpp"
#include "canvar/geometry.hpp"
#include "canvar/repcalc.hpp"

using namespace canvar;

static void BM_RingelForm(benchmark::State& state) {
  CanonicalType t({2, 3, 4, 5});
  DimVector h = special_vector_h(t);
  DimVector d = h * 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ringel_form(t, d, h));
  }
}
BENCHMARK(BM_RingelForm);

static void BM_SplitStats(benchmark::State& state) {
  CanonicalType t({2, 2, 3, 3});
  DimVector d = special_vector_h(t) * state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(split_stats(t, d));
  }
}
BENCHMARK(BM_SplitStats)->Arg(2)->Arg(4)->Arg(8);

static void BM_PrunedEnumeration(benchmark::State& state) {
  CanonicalType t({2, 2, 2, 2, 2});
  DimVector d = special_vector_h(t) * state.range(0);
  for (auto _ : state) {
    i64 count = 0;
    enumerate_splits(t, d, EnumMode::Pruned,
                     [&](const SplitRecord&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_PrunedEnumeration)->Arg(2)->Arg(3);

static void BM_Decide(benchmark::State& state) {
  CanonicalType t({4, 4, 4});
  DimVector d = special_vector_h(t) * state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide(t, d));
  }
}
BENCHMARK(BM_Decide)->Arg(2)->Arg(4);

static void BM_ReducePair(benchmark::State& state) {
  CanonicalType t({2, 2, 3, 3});
  DimVector d = special_vector_h(t) * 4;
  DimVector dp = unit_vector(t, Vertex::alpha());
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce_pair(t, d, dp));
  }
}
BENCHMARK(BM_ReducePair);

static void BM_HomDim(benchmark::State& state) {
  CanonicalType t({2, 3, 4});
  TubeParams params = TubeParams::defaults(t);
  Rep a = build_homogeneous(t, params, 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hom_dim(a, a));
  }
}
BENCHMARK(BM_HomDim);

BENCHMARK_MAIN();
