#include <benchmark/benchmark.h>

#include "pcalab/seqcode.hpp"

using namespace pcalab;

static void EncodeShortSequence(benchmark::State& state) {
  std::vector<Nat> sigma;
  for (std::int64_t i = 0; i < state.range(0); ++i) sigma.emplace_back(i * 7 % 100);
  for (auto _ : state) {
    Nat code = seq_encode(sigma);
    benchmark::DoNotOptimize(code);
  }
}
BENCHMARK(EncodeShortSequence)->DenseRange(1, 13, 4);

static void DecodeRoundTrip(benchmark::State& state) {
  Nat n = 0;
  for (auto _ : state) {
    auto sigma = seq_decode(n);
    benchmark::DoNotOptimize(sigma);
    n = (n + 1) % 100000;
  }
}
BENCHMARK(DecodeRoundTrip);
