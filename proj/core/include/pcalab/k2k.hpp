#pragma once

#include <functional>
#include <map>
#include <span>

#include "pcalab/real.hpp"

namespace pcalab::k2k {

/// A continuous functional presented as an interrogation strategy:
/// given a question and the answers read so far (the argument's values at
/// 0..k-1, in order), either ask for more or commit to an output.
/// Strategies must be monotone (an Output never changes on extensions)
/// and total on finite inputs.
struct StrategyResult {
  bool has_output = false;
  Nat value = 0;

  static StrategyResult need_more() { return {}; }
  static StrategyResult output(Nat v) { return {true, std::move(v)}; }
};
using Strategy = std::function<StrategyResult(const Nat& question, std::span<const Nat> answers)>;

struct ScanInfo {
  unsigned probes = 0;  // scan steps taken; on success, hit index + 1
};

/// Applies alpha as a functional code to beta by the increasing-prefix
/// scan: probe alpha at the code of beta's length-m prefix for
/// m = 0, 1, 2, ...; the first nonzero probe v yields v - 1.
///
/// Each scan step charges 1 + bit-length(probe position) fuel, so a
/// budget genuinely bounds the work even though prefix codes grow
/// doubly exponentially with m. A diverging scan (all probes zero) is
/// reported as FuelOut at every finite budget.
Eval functional_value(const PartialReal& alpha, const PartialReal& beta, FuelMeter& fuel,
                      ScanInfo* info = nullptr);
inline Eval functional_value(const PartialReal& alpha, const PartialReal& beta, Fuel fuel) {
  FuelMeter m(fuel);
  return functional_value(alpha, beta, m);
}

/// Application: position n of alpha*beta is the functional value of alpha
/// at n-cons-beta. Combinator stages short-circuit to their defining
/// tables, which agree with the scan wherever the scan resolves.
Real apply(const Real& alpha, const Real& beta);
Real apply_all(std::initializer_list<Real> factors);

/// Finite partial knowledge of a stream, keyed by position.
using PrefixTable = std::map<Nat, Nat>;

/// The functional-value scan restricted to finite information: probes
/// answer only from the tables, anything outside yields NeedMore. Total:
/// the scan length is bounded by the contiguous beta prefix plus two.
StrategyResult finite_verdict(const PrefixTable& alpha_tab, const PrefixTable& beta_tab,
                              const Nat& question);

/// Codes a strategy as a real: position (n, b_0..b_{k-1}) holds v+1 when
/// the strategy outputs v on that data, 0 otherwise (and 0 at positions
/// not coding a nonempty sequence). Applying the result replays the
/// strategy against the argument's true answers.
Real reify(Strategy s);

/// The k combinator of this coding: k*a holds a(n)+1 at the code of (n)
/// and 0 elsewhere, so (k*a)*b = a for every b.
Real combinator_k();

/// The s combinator: a three-layer table built on the bounded
/// finite-information simulation of a*c(b*c). s*a and s*a*b are total,
/// and s*a*b*c agrees with a*c(b*c) positionwise.
Real combinator_s();

}  // namespace pcalab::k2k
