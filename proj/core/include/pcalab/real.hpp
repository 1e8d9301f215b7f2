#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pcalab/eval.hpp"
#include "pcalab/fuel.hpp"
#include "pcalab/nat.hpp"

namespace pcalab {

/// Optional fast path for table-backed streams whose generator is defined
/// on decoded sequences: lets scans hand over the decoded prefix and skip
/// the encode/decode round trip on large position numbers.
class SeqView {
 public:
  virtual ~SeqView() = default;
  virtual Eval at_prefix(std::span<const Nat> sigma, FuelMeter& fuel) const = 0;
};

/// Generator behind a stream. Implementations must be pure: at(pos) yields
/// the same value on every call that returns one, regardless of fuel.
class StreamNode {
 public:
  virtual ~StreamNode() = default;
  virtual Eval at(const Nat& pos, FuelMeter& fuel) const = 0;
  virtual const SeqView* seq_view() const { return nullptr; }
};

using NodePtr = std::shared_ptr<const StreamNode>;

/// Partial function omega -> omega; per-position definedness is
/// fuel-semidecidable. Immutable and freely shareable across threads.
class PartialReal {
 public:
  /// Nowhere defined.
  PartialReal();
  explicit PartialReal(NodePtr node) : node_(std::move(node)) {}

  Eval at(const Nat& pos, FuelMeter& fuel) const { return node_->at(pos, fuel); }
  const NodePtr& node() const { return node_; }

 private:
  NodePtr node_;
};

/// Total function omega -> omega (totality is by intent; evaluation still
/// reports FuelOut under a tight budget). Includes into PartialReal as-is.
class Real {
 public:
  explicit Real(NodePtr node) : node_(std::move(node)) {}

  Eval at(const Nat& pos, FuelMeter& fuel) const { return node_->at(pos, fuel); }
  const NodePtr& node() const { return node_; }
  PartialReal partial() const { return PartialReal(node_); }

 private:
  NodePtr node_;
};

inline Eval eval_at(const Real& r, const Nat& pos, Fuel fuel) {
  FuelMeter m(fuel);
  return r.at(pos, m);
}
inline Eval eval_at(const PartialReal& r, const Nat& pos, Fuel fuel) {
  FuelMeter m(fuel);
  return r.at(pos, m);
}

// --- constructors ---

/// Eventually constant literal: head values then a constant tail.
Real real_ec(std::vector<Nat> head, Nat tail);
Real real_zeros();
/// The real e followed by zeros (text form `prg:e`).
Real real_prg(const Nat& e);
/// The stream n followed by x: result(0) = n, result(m+1) = x(m).
Real real_cons(const Nat& n, const Real& x);
/// Interleaving: even positions from a, odd positions from b.
Real real_join(const Real& a, const Real& b);
PartialReal partial_join(const PartialReal& a, const PartialReal& b);
/// Finite explicit graph (text form `pc:p=v,...`); undefined elsewhere.
PartialReal partial_graph(std::map<Nat, Nat> graph);
/// Copy of x with the given positions made undefined.
PartialReal punch_holes(const Real& x, std::set<Nat> holes);
PartialReal punch_holes(const PartialReal& x, std::set<Nat> holes);

/// Derived stream with a memo of settled positions (values and proven
/// divergences; FuelOut is never cached). Thread-safe.
Real real_thunk(std::function<Eval(const Nat&, FuelMeter&)> gen);
PartialReal partial_thunk(std::function<Eval(const Nat&, FuelMeter&)> gen);

/// Table-backed stream: generator is given the decoded sequence of the
/// position. Used by the prefix-scan coding, where positions are sequence
/// codes. Total by construction (the generators are fuel-free).
Real real_table(std::function<Nat(std::span<const Nat>)> gen);

// --- literal text formats (bit-exact per the CLI contract) ---

/// Parses `ec:v0,...,vk;c` and `prg:e`. Throws std::invalid_argument.
Real parse_real(const std::string& text);
/// Additionally accepts `pc:p=v,...` (and bare `pc:` for nowhere-defined).
PartialReal parse_partial(const std::string& text);

// --- finite-prefix comparison ---

struct PrefixCmp {
  enum class Kind { eq, diff, inconclusive };
  Kind kind = Kind::eq;
  Nat pos = 0;   // first disagreeing position when kind == diff
  Eval lhs = Eval::fuel_out();
  Eval rhs = Eval::fuel_out();

  bool is_eq() const { return kind == Kind::eq; }
  bool is_diff() const { return kind == Kind::diff; }
  bool is_inconclusive() const { return kind == Kind::inconclusive; }
};

/// Compares positions 0..depth-1 with a fresh per-position budget on each
/// side. Diff reports the first position with two values that differ or a
/// value against a proven divergence; two proven divergences agree. If no
/// Diff exists but some position ran out of fuel, the result is
/// inconclusive.
PrefixCmp prefix_eq(const PartialReal& x, const PartialReal& y, unsigned depth, Fuel fuel);
inline PrefixCmp prefix_eq(const Real& x, const Real& y, unsigned depth, Fuel fuel) {
  return prefix_eq(x.partial(), y.partial(), depth, fuel);
}

}  // namespace pcalab
