#include <benchmark/benchmark.h>

#include "pcalab/k2m.hpp"

using namespace pcalab;

static void MachineKab(benchmark::State& state) {
  Real a = parse_real("ec:3,1,4,1,5;9");
  Real b = parse_real("ec:0;0");
  for (auto _ : state) {
    // fresh thunks so the memo never short-circuits the VM
    Real kab = k2m::apply(k2m::apply(k2m::combinator_k(), a), b);
    Eval e = eval_at(kab, state.range(0), Fuel{1'000'000});
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(MachineKab)->Arg(0)->Arg(15)->Arg(63);

static void MachineSabc(benchmark::State& state) {
  Real s = k2m::combinator_s();
  Real k = k2m::combinator_k();
  Real c = parse_real("ec:5;0");
  for (auto _ : state) {
    Real skkc = k2m::apply_all({s, k, k, c});
    Eval e = eval_at(skkc, state.range(0), Fuel{1'000'000});
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(MachineSabc)->Arg(0)->Arg(15)->Arg(31);
