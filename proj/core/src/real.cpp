#include "pcalab/real.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "pcalab/seqcode.hpp"

namespace pcalab {
namespace {

class EcNode final : public StreamNode {
 public:
  EcNode(std::vector<Nat> head, Nat tail) : head_(std::move(head)), tail_(std::move(tail)) {}

  Eval at(const Nat& pos, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    if (pos < head_.size()) return Eval::value(head_[to_u64(pos)]);
    return Eval::value(tail_);
  }

 private:
  std::vector<Nat> head_;
  Nat tail_;
};

class ConsNode final : public StreamNode {
 public:
  ConsNode(Nat first, Real rest) : first_(std::move(first)), rest_(std::move(rest)) {}

  Eval at(const Nat& pos, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    if (pos == 0) return Eval::value(first_);
    return rest_.at(pos - 1, fuel);
  }

 private:
  Nat first_;
  Real rest_;
};

class JoinNode final : public StreamNode {
 public:
  JoinNode(NodePtr even, NodePtr odd) : even_(std::move(even)), odd_(std::move(odd)) {}

  Eval at(const Nat& pos, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    Nat half = pos / 2;
    return (pos % 2 == 0) ? even_->at(half, fuel) : odd_->at(half, fuel);
  }

 private:
  NodePtr even_;
  NodePtr odd_;
};

class GraphNode final : public StreamNode {
 public:
  explicit GraphNode(std::map<Nat, Nat> graph) : graph_(std::move(graph)) {}

  Eval at(const Nat& pos, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    auto it = graph_.find(pos);
    if (it == graph_.end()) return Eval::diverged();
    return Eval::value(it->second);
  }

 private:
  std::map<Nat, Nat> graph_;
};

class HoleNode final : public StreamNode {
 public:
  HoleNode(NodePtr inner, std::set<Nat> holes) : inner_(std::move(inner)), holes_(std::move(holes)) {}

  Eval at(const Nat& pos, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    if (holes_.count(pos)) return Eval::diverged();
    return inner_->at(pos, fuel);
  }

 private:
  NodePtr inner_;
  std::set<Nat> holes_;
};

class ThunkNode final : public StreamNode {
 public:
  explicit ThunkNode(std::function<Eval(const Nat&, FuelMeter&)> gen) : gen_(std::move(gen)) {}

  Eval at(const Nat& pos, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(pos);
      if (it != memo_.end()) return it->second;
    }
    Eval e = gen_(pos, fuel);
    if (!e.is_fuel_out()) {
      std::lock_guard<std::mutex> lock(mu_);
      memo_.emplace(pos, e);
    }
    return e;
  }

 private:
  std::function<Eval(const Nat&, FuelMeter&)> gen_;
  mutable std::mutex mu_;
  mutable std::map<Nat, Eval> memo_;
};

class TableNode final : public StreamNode, public SeqView {
 public:
  explicit TableNode(std::function<Nat(std::span<const Nat>)> gen) : gen_(std::move(gen)) {}

  Eval at(const Nat& pos, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    auto sigma = seq_decode(pos);
    return Eval::value(gen_(sigma));
  }

  Eval at_prefix(std::span<const Nat> sigma, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    return Eval::value(gen_(sigma));
  }

  const SeqView* seq_view() const override { return this; }

 private:
  std::function<Nat(std::span<const Nat>)> gen_;
};

Nat parse_nat(const std::string& s, std::size_t& i) {
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
    throw std::invalid_argument("expected digit in real literal: " + s);
  std::size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return Nat(s.substr(start, i - start));
}

}  // namespace

PartialReal::PartialReal() : node_(std::make_shared<GraphNode>(std::map<Nat, Nat>{})) {}

Real real_ec(std::vector<Nat> head, Nat tail) {
  return Real(std::make_shared<EcNode>(std::move(head), std::move(tail)));
}

Real real_zeros() { return real_ec({0}, 0); }

Real real_prg(const Nat& e) { return real_ec({e}, 0); }

Real real_cons(const Nat& n, const Real& x) {
  return Real(std::make_shared<ConsNode>(n, x));
}

Real real_join(const Real& a, const Real& b) {
  return Real(std::make_shared<JoinNode>(a.node(), b.node()));
}

PartialReal partial_join(const PartialReal& a, const PartialReal& b) {
  return PartialReal(std::make_shared<JoinNode>(a.node(), b.node()));
}

PartialReal partial_graph(std::map<Nat, Nat> graph) {
  return PartialReal(std::make_shared<GraphNode>(std::move(graph)));
}

PartialReal punch_holes(const Real& x, std::set<Nat> holes) {
  return PartialReal(std::make_shared<HoleNode>(x.node(), std::move(holes)));
}

PartialReal punch_holes(const PartialReal& x, std::set<Nat> holes) {
  return PartialReal(std::make_shared<HoleNode>(x.node(), std::move(holes)));
}

Real real_thunk(std::function<Eval(const Nat&, FuelMeter&)> gen) {
  return Real(std::make_shared<ThunkNode>(std::move(gen)));
}

PartialReal partial_thunk(std::function<Eval(const Nat&, FuelMeter&)> gen) {
  return PartialReal(std::make_shared<ThunkNode>(std::move(gen)));
}

Real real_table(std::function<Nat(std::span<const Nat>)> gen) {
  return Real(std::make_shared<TableNode>(std::move(gen)));
}

Real parse_real(const std::string& text) {
  if (text.rfind("ec:", 0) == 0) {
    std::size_t i = 3;
    std::vector<Nat> head;
    head.push_back(parse_nat(text, i));
    while (i < text.size() && text[i] == ',') {
      ++i;
      head.push_back(parse_nat(text, i));
    }
    if (i >= text.size() || text[i] != ';')
      throw std::invalid_argument("ec literal missing ';': " + text);
    ++i;
    Nat tail = parse_nat(text, i);
    if (i != text.size()) throw std::invalid_argument("trailing junk in literal: " + text);
    return real_ec(std::move(head), std::move(tail));
  }
  if (text.rfind("prg:", 0) == 0) {
    std::size_t i = 4;
    Nat e = parse_nat(text, i);
    if (i != text.size()) throw std::invalid_argument("trailing junk in literal: " + text);
    return real_prg(e);
  }
  throw std::invalid_argument("unknown real literal: " + text);
}

PartialReal parse_partial(const std::string& text) {
  if (text.rfind("pc:", 0) == 0) {
    std::map<Nat, Nat> graph;
    std::size_t i = 3;
    while (i < text.size()) {
      Nat p = parse_nat(text, i);
      if (i >= text.size() || text[i] != '=')
        throw std::invalid_argument("pc literal missing '=': " + text);
      ++i;
      Nat v = parse_nat(text, i);
      if (!graph.emplace(p, v).second)
        throw std::invalid_argument("duplicate position in pc literal: " + text);
      if (i < text.size()) {
        if (text[i] != ',') throw std::invalid_argument("trailing junk in literal: " + text);
        ++i;
      }
    }
    return partial_graph(std::move(graph));
  }
  return parse_real(text).partial();
}

PrefixCmp prefix_eq(const PartialReal& x, const PartialReal& y, unsigned depth, Fuel fuel) {
  bool saw_fuel_out = false;
  for (unsigned n = 0; n < depth; ++n) {
    Eval ex = eval_at(x, n, fuel);
    Eval ey = eval_at(y, n, fuel);
    if (ex.is_fuel_out() || ey.is_fuel_out()) {
      saw_fuel_out = true;
      continue;
    }
    bool clash = (ex.is_value() && ey.is_value() && ex.get() != ey.get()) ||
                 (ex.is_value() != ey.is_value());
    if (clash) return {PrefixCmp::Kind::diff, n, ex, ey};
  }
  if (saw_fuel_out) return {PrefixCmp::Kind::inconclusive, 0, Eval::fuel_out(), Eval::fuel_out()};
  return {};
}

}  // namespace pcalab
