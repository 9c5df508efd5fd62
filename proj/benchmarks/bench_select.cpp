#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "qsl/engine.hpp"
#include "qsl/rng.hpp"

namespace {

void BM_Select(benchmark::State& state, const std::string& name) {
  const auto preset = qsl::parse_preset(name);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto input = qsl::make_input(n, 7);
  std::vector<qsl::Key> v(n);
  qsl::Rng rng(11);
  for (auto _ : state) {
    state.PauseTiming();
    v = input;
    state.ResumeTiming();
    benchmark::DoNotOptimize(qsl::quickselect(v, qsl::RankSpec::random(), preset, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK_CAPTURE(BM_Select, cqs, std::string("cqs"))->Range(1 << 12, 1 << 20);
BENCHMARK_CAPTURE(BM_Select, yqs, std::string("yqs"))->Range(1 << 12, 1 << 20);
BENCHMARK_CAPTURE(BM_Select, waterloo, std::string("waterloo"))->Range(1 << 12, 1 << 20);
BENCHMARK_CAPTURE(BM_Select, sqs2, std::string("sqs2"))->Range(1 << 12, 1 << 20);
BENCHMARK_CAPTURE(BM_Select, sqsk7, std::string("sqsk:7"))->Range(1 << 12, 1 << 20);

}  // namespace
