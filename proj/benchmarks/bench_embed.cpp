#include <benchmark/benchmark.h>

#include <random>

#include "pcalab/embed.hpp"

using namespace pcalab;

namespace {

pca::PcaTable random_table(std::mt19937_64& g, std::size_t size) {
  pca::PcaTable t;
  for (std::size_t i = 0; i < size; ++i) t.elements.push_back("e" + std::to_string(i));
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b)
      if (g() % 3 == 0) t.graph[{a, b}] = g() % size;
  return t;
}

}  // namespace

static void CertifyMagma(benchmark::State& state) {
  std::mt19937_64 g(7);
  auto table = random_table(g, static_cast<std::size_t>(state.range(0)));
  embed::CertifyOptions opt;
  opt.depth = 128;
  for (auto _ : state) {
    auto cert = embed::certify(table, opt);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(CertifyMagma)->Arg(2)->Arg(4)->Arg(6);
