#include <benchmark/benchmark.h>

#include "pcalab/k2k.hpp"

using namespace pcalab;

static void PrefixScanHit(benchmark::State& state) {
  // strategy answering after range(0) reads: the scan runs that deep
  unsigned modulus = static_cast<unsigned>(state.range(0));
  k2k::Strategy strat = [modulus](const Nat& q, std::span<const Nat> ans) {
    if (ans.size() < modulus) return k2k::StrategyResult::need_more();
    return k2k::StrategyResult::output(q + 1);
  };
  Real r = k2k::reify(strat);
  Real beta = parse_real("ec:2,7;3");
  for (auto _ : state) {
    Eval e = k2k::functional_value(r.partial(), real_cons(5, beta).partial(), Fuel{1'000'000});
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(PrefixScanHit)->DenseRange(0, 12, 3);

static void KleeneSkk(benchmark::State& state) {
  Real s = k2k::combinator_s();
  Real k = k2k::combinator_k();
  Real c = parse_real("ec:5;0");
  for (auto _ : state) {
    Real skkc = k2k::apply_all({s, k, k, c});
    Eval e = eval_at(skkc, state.range(0), Fuel{4'000'000});
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(KleeneSkk)->Arg(0)->Arg(7)->Arg(15);
