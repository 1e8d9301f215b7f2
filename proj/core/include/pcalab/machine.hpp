#pragma once

#include "pcalab/eval.hpp"
#include "pcalab/fuel.hpp"
#include "pcalab/program.hpp"
#include "pcalab/real.hpp"

namespace pcalab {

/// What a running program sees when it queries the oracle.
class OracleView {
 public:
  virtual ~OracleView() = default;
  virtual Eval query(const Nat& pos, FuelMeter& fuel) const = 0;
};

/// Oracle backed by a stream.
class StreamOracle final : public OracleView {
 public:
  explicit StreamOracle(PartialReal x) : x_(std::move(x)) {}
  Eval query(const Nat& pos, FuelMeter& fuel) const override { return x_.at(pos, fuel); }

 private:
  PartialReal x_;
};

/// Small-step cost model: one fuel unit per AST node visit plus one per
/// oracle query. Nested Run/RunVia share the caller's budget. A recursion
/// depth cap (stack protection only, far above any test workload) reports
/// FuelOut.
///
/// Provable divergences: invalid program code, Idx outside any Mu, an
/// invalid program in RunVia's q slot, and queries of undefined
/// partial-oracle positions.
Eval opl_eval(const Nat& code, const Nat& input, const OracleView& oracle, FuelMeter& fuel);
Eval opl_eval(const Program& prog, const Nat& input, const OracleView& oracle, FuelMeter& fuel);

inline Eval opl_eval(const Nat& code, const Nat& input, const PartialReal& oracle, Fuel fuel) {
  FuelMeter m(fuel);
  StreamOracle view(oracle);
  return opl_eval(code, input, view, m);
}
inline Eval opl_eval(const Nat& code, const Nat& input, const Real& oracle, Fuel fuel) {
  return opl_eval(code, input, oracle.partial(), fuel);
}

}  // namespace pcalab
