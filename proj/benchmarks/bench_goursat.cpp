#include <benchmark/benchmark.h>

#include "galent/entangle.hpp"

namespace {

using namespace galent;

void BM_EntSetDirect(benchmark::State& state) {
  const EntContext ctx = make_product_context(general_linear_group(2), general_linear_group(3));
  for (auto _ : state) benchmark::DoNotOptimize(ent_set_direct(ctx));
}
BENCHMARK(BM_EntSetDirect)->Unit(benchmark::kMillisecond);

void BM_EntSetGoursat(benchmark::State& state) {
  const GroupPtr a = general_linear_group(static_cast<std::uint32_t>(state.range(0)));
  const GroupPtr b = general_linear_group(static_cast<std::uint32_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(ent_set_goursat(a, b));
}
BENCHMARK(BM_EntSetGoursat)->Args({2, 3})->Args({2, 5})->Args({3, 5})->Unit(benchmark::kMillisecond);

}  // namespace
