#pragma once

#include <cstdint>

namespace pcalab {

/// Step budget for one evaluation. Fuel gates work but never changes
/// values: a position that returns Value(v) at some budget returns the
/// same Value(v) at every larger budget.
struct Fuel {
  std::uint64_t steps = 0;
};

/// Mutable counter threaded through one evaluation. Nested program runs
/// (Run/RunVia, oracle queries) all draw from the same meter.
class FuelMeter {
 public:
  explicit FuelMeter(Fuel f) : left_(f.steps) {}
  explicit FuelMeter(std::uint64_t steps) : left_(steps) {}

  /// Consume n steps; false once the budget is exhausted.
  bool spend(std::uint64_t n = 1) {
    if (left_ < n) {
      left_ = 0;
      return false;
    }
    left_ -= n;
    return true;
  }

  std::uint64_t remaining() const { return left_; }

 private:
  std::uint64_t left_;
};

}  // namespace pcalab
