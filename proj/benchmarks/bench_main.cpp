#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "monobox/consistency.hpp"
#include "monobox/exact_oracle.hpp"
#include "monobox/generators.hpp"
#include "monobox/model.hpp"
#include "monobox/monotone1d.hpp"
#include "monobox/pipelines.hpp"

using namespace monobox;

namespace {

void BM_pipeline_box_6x6(benchmark::State& state) {
  const BoxColouring col = gen_random_colouring(2, 6, 2, Seed{1});
  PipelineParams params;
  params.budget = 200'000;
  params.retries = 4;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    params.seed = Seed{seed++};
    benchmark::DoNotOptimize(find_mono_box(col, 2, params));
  }
}
BENCHMARK(BM_pipeline_box_6x6);

void BM_two_phase_box_6x6(benchmark::State& state) {
  const BoxColouring col = gen_random_colouring(2, 6, 2, Seed{2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_mono_box_2d(col, 2));
  }
}
BENCHMARK(BM_two_phase_box_6x6);

void BM_decide_box_3x3(benchmark::State& state) {
  const BoxColouring col = gen_random_colouring(2, 6, 2, Seed{3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide_R_instance(col, 3));
  }
}
BENCHMARK(BM_decide_box_3x3);

void BM_consistency_check(benchmark::State& state) {
  const BoxColouring col = gen_direction_colouring(3, 6, 2);
  const std::vector<int> sides(3, 6);
  const SubBox box = SubBox::full(sides);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_consistent(col, box));
  }
}
BENCHMARK(BM_consistency_check);

void BM_longest_runs_1024(benchmark::State& state) {
  const NumericArray arr = gen_random_array({1024}, Seed{4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(longest_monotone(arr.values()));
  }
}
BENCHMARK(BM_longest_runs_1024);

void BM_lex_search_4x4(benchmark::State& state) {
  const NumericArray arr = gen_random_array({4, 4}, Seed{5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_lex_monotone(arr, 2));
  }
}
BENCHMARK(BM_lex_search_4x4);

} // namespace

BENCHMARK_MAIN();
