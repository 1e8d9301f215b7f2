#include "pcalab/machine.hpp"

namespace pcalab {

namespace {

constexpr unsigned kMaxEvalDepth = 10000;

class VirtualOracle final : public OracleView {
 public:
  VirtualOracle(ProgPtr q, const OracleView& base, unsigned depth)
      : q_(std::move(q)), base_(base), depth_(depth) {}

  Eval query(const Nat& pos, FuelMeter& fuel) const override;

 private:
  ProgPtr q_;
  const OracleView& base_;
  unsigned depth_;
};

struct Frame {
  const OracleView& oracle;
  const Nat& input;
  const Nat* mu_index;  // innermost Mu, null outside any Mu
  unsigned depth;
};

Eval eval_node(const Program& p, const Frame& fr, FuelMeter& fuel);

Eval eval_kid(const Program& p, unsigned i, const Frame& fr, FuelMeter& fuel) {
  Frame kid{fr.oracle, fr.input, fr.mu_index, fr.depth + 1};
  return eval_node(*p.kids[i], kid, fuel);
}

Eval eval_node(const Program& p, const Frame& fr, FuelMeter& fuel) {
  if (!fuel.spend()) return Eval::fuel_out();
  if (fr.depth > kMaxEvalDepth) return Eval::fuel_out();
  switch (p.op) {
    case Op::in: return Eval::value(fr.input);
    case Op::lit: return Eval::value(p.payload);
    case Op::idx:
      if (!fr.mu_index) return Eval::diverged();
      return Eval::value(*fr.mu_index);
    case Op::succ: {
      Eval e = eval_kid(p, 0, fr, fuel);
      if (!e.is_value()) return e;
      return Eval::value(e.get() + 1);
    }
    case Op::pred: {
      Eval e = eval_kid(p, 0, fr, fuel);
      if (!e.is_value()) return e;
      return Eval::value(e.get() == 0 ? Nat(0) : Nat(e.get() - 1));
    }
    case Op::qry: {
      Eval e = eval_kid(p, 0, fr, fuel);
      if (!e.is_value()) return e;
      if (!fuel.spend()) return Eval::fuel_out();
      return fr.oracle.query(e.get(), fuel);
    }
    case Op::if0: {
      Eval c = eval_kid(p, 0, fr, fuel);
      if (!c.is_value()) return c;
      return eval_kid(p, c.get() == 0 ? 1 : 2, fr, fuel);
    }
    case Op::pair: {
      Eval a = eval_kid(p, 0, fr, fuel);
      if (!a.is_value()) return a;
      Eval b = eval_kid(p, 1, fr, fuel);
      if (!b.is_value()) return b;
      return Eval::value(cantor_pair(a.get(), b.get()));
    }
    case Op::fst: {
      Eval e = eval_kid(p, 0, fr, fuel);
      if (!e.is_value()) return e;
      return Eval::value(cantor_unpair(e.get()).first);
    }
    case Op::snd: {
      Eval e = eval_kid(p, 0, fr, fuel);
      if (!e.is_value()) return e;
      return Eval::value(cantor_unpair(e.get()).second);
    }
    case Op::mu: {
      Frame body{fr.oracle, fr.input, nullptr, fr.depth + 1};
      for (Nat j = 0;; ++j) {
        body.mu_index = &j;
        Eval e = eval_node(*p.kids[0], body, fuel);
        if (!e.is_value()) return e;
        if (e.get() == 0) return Eval::value(j);
      }
    }
    case Op::run: {
      Eval d = eval_kid(p, 0, fr, fuel);
      if (!d.is_value()) return d;
      Eval t = eval_kid(p, 1, fr, fuel);
      if (!t.is_value()) return t;
      ProgPtr prog = program_decode(d.get());
      if (!prog) return Eval::diverged();
      Frame inner{fr.oracle, t.get(), nullptr, fr.depth + 1};
      return eval_node(*prog, inner, fuel);
    }
    case Op::run_via: {
      Eval d = eval_kid(p, 0, fr, fuel);
      if (!d.is_value()) return d;
      Eval t = eval_kid(p, 1, fr, fuel);
      if (!t.is_value()) return t;
      Eval q = eval_kid(p, 2, fr, fuel);
      if (!q.is_value()) return q;
      ProgPtr prog = program_decode(d.get());
      ProgPtr qprog = program_decode(q.get());
      if (!prog || !qprog) return Eval::diverged();
      VirtualOracle via(std::move(qprog), fr.oracle, fr.depth + 1);
      Frame inner{via, t.get(), nullptr, fr.depth + 1};
      return eval_node(*prog, inner, fuel);
    }
  }
  return Eval::diverged();
}

Eval VirtualOracle::query(const Nat& pos, FuelMeter& fuel) const {
  // q answers under the oracle current at the RunVia site, not under
  // its own virtualization.
  Frame fr{base_, pos, nullptr, depth_ + 1};
  return eval_node(*q_, fr, fuel);
}

}  // namespace

Eval opl_eval(const Program& prog, const Nat& input, const OracleView& oracle, FuelMeter& fuel) {
  Frame fr{oracle, input, nullptr, 0};
  return eval_node(prog, fr, fuel);
}

Eval opl_eval(const Nat& code, const Nat& input, const OracleView& oracle, FuelMeter& fuel) {
  ProgPtr prog = program_decode(code);
  if (!prog) return Eval::diverged();
  return opl_eval(*prog, input, oracle, fuel);
}

}  // namespace pcalab
