#pragma once

#include <span>
#include <vector>

#include "pcalab/nat.hpp"

namespace pcalab {

/// Bijective coding of finite sequences of naturals.
///
/// Base recurrence: code(empty) = 0, code(sigma + x) = pair(code(sigma), x) + 1,
/// composed with the transposition that swaps the codes of the empty sequence
/// and of (0,0,0). Net effect: encode((0,0,0)) = 0, encode(empty) = 4, and
/// encode((n)) = (n+1)(n+2)/2 > n for every n.
Nat seq_encode(std::span<const Nat> sigma);
std::vector<Nat> seq_decode(const Nat& code);

/// Incremental encoder: extends a prefix one value at a time without
/// recoding the whole sequence. `code()` applies the final transposition.
class SeqBuilder {
 public:
  void push(const Nat& v) {
    base_ = cantor_pair(base_, v) + 1;
    ++len_;
  }
  Nat code() const;
  std::size_t size() const { return len_; }

 private:
  Nat base_ = 0;
  std::size_t len_ = 0;
};

namespace detail {
/// The 0 <-> 4 transposition applied on top of the base recurrence.
inline Nat seq_swap(const Nat& n) {
  if (n == 0) return 4;
  if (n == 4) return 0;
  return n;
}
}  // namespace detail

inline Nat SeqBuilder::code() const { return detail::seq_swap(base_); }

}  // namespace pcalab
