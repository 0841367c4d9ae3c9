#include <benchmark/benchmark.h>

#include "qfinv/forms.hpp"
#include "qfinv/graphs.hpp"
#include "qfinv/oracle.hpp"

namespace {

qfinv::Tower tower_for(const benchmark::State& state) {
  return qfinv::Tower(static_cast<std::uint32_t>(state.range(0)), static_cast<unsigned>(state.range(1)));
}

void BM_AuEnumerateSerial(benchmark::State& state) {
  const auto t = tower_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(qfinv::au_enumerate_serial(t));
}

void BM_AuEnumerateParallel(benchmark::State& state) {
  const auto t = tower_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(qfinv::au_enumerate(t));
}

void BM_CrossValidateSerial(benchmark::State& state) {
  const auto t = tower_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfinv::cross_validate_serial(t, 1, 4, qfinv::ValidationMode::exhaustive()));
  }
}

void BM_CrossValidateParallel(benchmark::State& state) {
  const auto t = tower_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfinv::cross_validate(t, 1, 4, qfinv::ValidationMode::exhaustive()));
  }
}

void BM_AttainableSerial(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qfinv::attainable_au_serial(n, qfinv::BaseClass::finite(3)));
}

void BM_AttainableParallel(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qfinv::attainable_au(n, qfinv::BaseClass::finite(3)));
}

}  // namespace

BENCHMARK(BM_AuEnumerateSerial)->Args({3, 2})->Args({13, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AuEnumerateParallel)->Args({3, 2})->Args({13, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossValidateSerial)->Args({3, 1})->Args({5, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossValidateParallel)->Args({3, 1})->Args({5, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttainableSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttainableParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
