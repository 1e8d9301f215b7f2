#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>

namespace pcalab {

/// Unbounded natural number. All stream values, positions and program
/// numbers are Nats; callers must keep them nonnegative.
using Nat = boost::multiprecision::cpp_int;

/// Cantor pairing pi(a,b) = (a+b)(a+b+1)/2 + b.
inline Nat cantor_pair(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

/// Inverse of cantor_pair.
inline std::pair<Nat, Nat> cantor_unpair(const Nat& z) {
  Nat disc = 8 * z + 1;
  Nat root = boost::multiprecision::sqrt(disc);
  Nat w = (root - 1) / 2;
  Nat b = z - w * (w + 1) / 2;
  return {w - b, b};
}

/// Number of bits in n (0 for n = 0). Used by the scan fuel model.
inline std::uint64_t bit_length(const Nat& n) {
  if (n == 0) return 0;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(n)) + 1;
}

inline std::uint64_t to_u64(const Nat& n) { return n.convert_to<std::uint64_t>(); }

}  // namespace pcalab
