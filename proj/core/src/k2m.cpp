#include "pcalab/k2m.hpp"

namespace pcalab::k2m {

const Tags& tags() {
  static const Tags t = [] {
    const auto& rc = reserved_codes();
    return Tags{rc.k, rc.ka, rc.s, rc.sa, rc.sab};
  }();
  return t;
}

Real combinator_k() { return real_prg(reserved_codes().k); }
Real combinator_s() { return real_prg(reserved_codes().s); }

PartialReal apply(const PartialReal& a, const PartialReal& b) {
  PartialReal joined = partial_join(a, b);
  PartialReal head = a;
  return partial_thunk([head, joined](const Nat& pos, FuelMeter& fuel) -> Eval {
    Eval e = head.at(0, fuel);
    if (!e.is_value()) return e;
    StreamOracle oracle(joined);
    return opl_eval(e.get(), pos, oracle, fuel);
  });
}

Real apply(const Real& a, const Real& b) {
  PartialReal r = apply(a.partial(), b.partial());
  return Real(r.node());
}

Real apply_all(std::initializer_list<Real> factors) {
  auto it = factors.begin();
  Real acc = *it++;
  for (; it != factors.end(); ++it) acc = apply(acc, *it);
  return acc;
}

SabParts extract_sab(const Real& x, Fuel fuel) {
  SabParts out{false, 0, false, real_zeros(), real_zeros()};
  Eval tag = eval_at(x, 0, fuel);
  if (tag.is_value()) {
    out.tag_known = true;
    out.found_tag = tag.get();
    out.tag_ok = tag.get() == tags().sab;
  }
  Real src = x;
  out.a = real_thunk([src](const Nat& i, FuelMeter& m) { return src.at(2 * i + 1, m); });
  out.b = real_thunk([src](const Nat& i, FuelMeter& m) { return src.at(2 * i + 2, m); });
  return out;
}

}  // namespace pcalab::k2m
