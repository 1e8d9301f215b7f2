#include "pcalab/seqcode.hpp"

#include <algorithm>

namespace pcalab {

Nat seq_encode(std::span<const Nat> sigma) {
  Nat base = 0;
  for (const Nat& v : sigma) base = cantor_pair(base, v) + 1;
  return detail::seq_swap(base);
}

std::vector<Nat> seq_decode(const Nat& code) {
  Nat base = detail::seq_swap(code);
  std::vector<Nat> out;
  while (base != 0) {
    auto [rest, x] = cantor_unpair(base - 1);
    out.push_back(x);
    base = rest;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace pcalab
