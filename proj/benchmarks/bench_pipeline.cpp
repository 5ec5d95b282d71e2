#include <benchmark/benchmark.h>

#include <vector>

#include "clv/classify.hpp"
#include "clv/correlation.hpp"
#include "clv/datagen.hpp"
#include "clv/experiment.hpp"
#include "clv/linkage.hpp"
#include "clv/resultant.hpp"

namespace {

clv::Dataset dataset(int variables) {
  clv::GeneratorParams p;
  p.num_variables = variables;
  p.seed = 1;
  return clv::generate_dataset(p).dataset;
}

void BM_CorrelationDistance(benchmark::State& state) {
  const clv::Dataset ds = dataset(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clv::correlation_distance_matrix(ds));
}
BENCHMARK(BM_CorrelationDistance)->Arg(50)->Arg(100)->Arg(300);

void BM_WardLinkage(benchmark::State& state) {
  const clv::DistanceMatrix d = clv::correlation_distance_matrix(dataset(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(clv::ward_linkage(d));
}
BENCHMARK(BM_WardLinkage)->Arg(50)->Arg(100)->Arg(300);

void BM_KMeansTwo(benchmark::State& state) {
  const clv::Dataset ds = dataset(300);
  const clv::Dendrogram tree = clv::ward_linkage(clv::correlation_distance_matrix(ds));
  const clv::RVMatrix rvs = clv::extract_rvs(ds, clv::cut_tree(tree, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(clv::kmeans_two(rvs.values, {10, 300, 7}));
}
BENCHMARK(BM_KMeansTwo)->DenseRange(2, 6);

void BM_Replicate(benchmark::State& state) {
  clv::GeneratorParams p;
  p.num_variables = static_cast<int>(state.range(0));
  p.factor_strength = 0.5;
  const std::vector<int> rv_counts{2, 3, 4, 5, 6};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    p.seed = ++seed;
    benchmark::DoNotOptimize(clv::run_replicate(p, rv_counts, 10));
  }
}
BENCHMARK(BM_Replicate)->Arg(50)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
