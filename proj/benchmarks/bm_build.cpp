#include <benchmark/benchmark.h>

#include "quadspect/aspects.hpp"
#include "quadspect/bench.hpp"

namespace {

using namespace quadspect;

void BM_BuildJointSpace(benchmark::State& state) {
  const auto g = FiveBarGeometry::m1();
  const auto classify = jointspace_reach_classifier(g);
  const int depth = static_cast<int>(state.range(0));
  std::uint64_t calls = 0;
  for (auto _ : state) {
    auto tree = build(jointspace_box(), depth, classify);
    calls = tree.stats.classifier_calls;
    benchmark::DoNotOptimize(tree.root);
  }
  state.counters["calls"] = static_cast<double>(calls);
}
BENCHMARK(BM_BuildJointSpace)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

void BM_BuildWorkspace(benchmark::State& state) {
  const auto g = FiveBarGeometry::m1();
  const auto classify = workspace_reach_classifier(g);
  const int depth = static_cast<int>(state.range(0));
  std::uint64_t calls = 0;
  for (auto _ : state) {
    auto tree = build(workspace_box(g), depth, classify);
    calls = tree.stats.classifier_calls;
    benchmark::DoNotOptimize(tree.root);
  }
  state.counters["calls"] = static_cast<double>(calls);
}
BENCHMARK(BM_BuildWorkspace)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

void BM_ComboClassifier(benchmark::State& state) {
  const auto g = FiveBarGeometry::m2();
  const auto classify = jointspace_classifier(all_combos().front(), g);
  const Box2 box{Interval{0.1, 0.2}, Interval{2.0, 2.1}};
  for (auto _ : state) benchmark::DoNotOptimize(classify(box));
}
BENCHMARK(BM_ComboClassifier);

void BM_LabelRegions(benchmark::State& state) {
  const auto g = FiveBarGeometry::m2();
  const auto tree = build(workspace_box(g), static_cast<int>(state.range(0)),
                          workspace_classifier(all_combos().front(), g));
  for (auto _ : state) benchmark::DoNotOptimize(label_regions(tree));
}
BENCHMARK(BM_LabelRegions)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
