#include <benchmark/benchmark.h>

#include "galent/group_engine.hpp"
#include "galent/group_id.hpp"

namespace {

using namespace galent;

void BM_GenerateGL2(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(general_linear_group(n));
}
BENCHMARK(BM_GenerateGL2)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_EnumerateClasses(benchmark::State& state) {
  const GroupPtr g = general_linear_group(static_cast<std::uint32_t>(state.range(0)));
  std::size_t classes = 0;
  for (auto _ : state) classes = enumerate_subgroups(g, Conjugacy::kUpToConjugacy).size();
  state.counters["classes"] = static_cast<double>(classes);
}
BENCHMARK(BM_EnumerateClasses)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_EnumerateAll(benchmark::State& state) {
  const GroupPtr g = general_linear_group(3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subgroups(g, Conjugacy::kAll));
}
BENCHMARK(BM_EnumerateAll)->Unit(benchmark::kMillisecond);

void BM_IdentifyCatalog(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& e : catalog()) benchmark::DoNotOptimize(identify(*e.model));
}
BENCHMARK(BM_IdentifyCatalog)->Unit(benchmark::kMillisecond);

}  // namespace
