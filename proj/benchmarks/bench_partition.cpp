#include <vector>

#include <benchmark/benchmark.h>

#include "qsl/partition.hpp"
#include "qsl/rng.hpp"

namespace {

using qsl::Key;

void BM_Hoare(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto input = qsl::make_input(n, 1);
  std::vector<Key> v(n);
  for (auto _ : state) {
    state.PauseTiming();
    v = input;
    state.ResumeTiming();
    benchmark::DoNotOptimize(qsl::hoare_partition(v, static_cast<Key>(n / 2)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Hoare)->Range(1 << 10, 1 << 20);

void BM_Ybb(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto input = qsl::make_input(n, 2);
  std::vector<Key> v(n);
  for (auto _ : state) {
    state.PauseTiming();
    v = input;
    state.ResumeTiming();
    benchmark::DoNotOptimize(qsl::ybb_partition(v, static_cast<Key>(n / 3), static_cast<Key>(2 * n / 3)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ybb)->Range(1 << 10, 1 << 20);

void BM_Waterloo(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto input = qsl::make_input(n, 3);
  std::vector<Key> v(n);
  for (auto _ : state) {
    state.PauseTiming();
    v = input;
    state.ResumeTiming();
    benchmark::DoNotOptimize(qsl::waterloo_partition(v, static_cast<Key>(n / 4), static_cast<Key>(n / 2),
                                                     static_cast<Key>(3 * n / 4)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Waterloo)->Range(1 << 10, 1 << 20);

}  // namespace
