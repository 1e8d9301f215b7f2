#pragma once

#include <string>

#include "pcalab/nat.hpp"

namespace pcalab {

/// Three-valued outcome of evaluating one stream position.
///
/// FuelOut means "undefined so far" (the budget ran out); Diverged is a
/// proof of divergence (invalid program code, query of an undefined
/// partial-oracle position, ...). Checkers treat FuelOut as inconclusive,
/// never as refutation.
class Eval {
 public:
  enum class Kind { value, fuel_out, diverged };

  static Eval value(Nat v) { return Eval(Kind::value, std::move(v)); }
  static Eval fuel_out() { return Eval(Kind::fuel_out, 0); }
  static Eval diverged() { return Eval(Kind::diverged, 0); }

  Kind kind() const { return kind_; }
  bool is_value() const { return kind_ == Kind::value; }
  bool is_fuel_out() const { return kind_ == Kind::fuel_out; }
  bool is_diverged() const { return kind_ == Kind::diverged; }

  /// Only meaningful when is_value().
  const Nat& get() const { return value_; }

  friend bool operator==(const Eval& a, const Eval& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::value || a.value_ == b.value_;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::value: return value_.str();
      case Kind::fuel_out: return "?";
      default: return "!";
    }
  }

 private:
  Eval(Kind k, Nat v) : kind_(k), value_(std::move(v)) {}
  Kind kind_;
  Nat value_;
};

}  // namespace pcalab
