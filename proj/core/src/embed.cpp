#include "pcalab/embed.hpp"

#include <memory>
#include <stdexcept>

#include "json.hpp"
#include "pcalab/k2k.hpp"
#include "pcalab/seqcode.hpp"

namespace pcalab::embed {

bool in_l(const Nat& n) {
  Nat cur = n;
  while (true) {
    if (cur == 0) return true;
    auto s = seq_decode(cur);
    if (s.size() != 2) return false;
    cur = s[0];
  }
}

std::optional<unsigned> l_level(const Nat& n) {
  Nat cur = n;
  unsigned level = 0;
  while (true) {
    if (cur == 0) return level;
    auto s = seq_decode(cur);
    if (s.size() != 2) return std::nullopt;
    cur = s[0];
    ++level;
  }
}

Nat off_l_value(const Nat& n) {
  if (in_l(n)) throw std::invalid_argument("off_l_value on an L-position");
  Nat cur = n;
  Nat depth = 0;
  while (true) {
    auto s = seq_decode(cur);
    if (s.size() != 1) return depth;
    if (in_l(s[0])) return depth;
    cur = s[0];
    ++depth;
  }
}

namespace {

// z components of an L-position of level >= 1, outermost first.
std::vector<Nat> unwrap_l(const Nat& q) {
  std::vector<Nat> zs;
  Nat cur = q;
  while (cur != 0) {
    auto s = seq_decode(cur);
    zs.push_back(s[1]);
    cur = s[0];
  }
  return zs;
}

Chain chain_walk(const pca::PcaTable& t, std::size_t a_index, const std::vector<Nat>& zs) {
  Chain chain;
  const Numbering gamma{t.elements.size()};
  std::size_t w = gamma.mincode(a_index);
  chain.walked.push_back(w);
  for (std::size_t j = 0; j < zs.size(); ++j) {
    auto it = t.graph.find({w, gamma.element_at(zs[j])});
    if (it == t.graph.end()) {
      chain.fail_step = static_cast<unsigned>(j + 1);
      return chain;
    }
    w = gamma.mincode(it->second);
    chain.walked.push_back(w);
  }
  chain.complete = true;
  return chain;
}

Nat chain_from(const pca::PcaTable& t, std::size_t a_index, const std::vector<Nat>& zs) {
  Chain chain = chain_walk(t, a_index, zs);
  if (!chain.complete) return Nat(chain.fail_step - 1);
  return Nat(chain.walked.back()) + zs.size();
}

class EmbedNode final : public StreamNode, public SeqView {
 public:
  EmbedNode(std::shared_ptr<const pca::PcaTable> t, std::size_t index, bool repairs)
      : table_(std::move(t)), index_(index), repairs_(repairs) {}

  Eval at_prefix(std::span<const Nat> sigma, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    return Eval::value(value_at(sigma));
  }

  Eval at(const Nat& pos, FuelMeter& fuel) const override {
    if (!fuel.spend()) return Eval::fuel_out();
    auto sigma = seq_decode(pos);
    return Eval::value(value_at(sigma));
  }

  const SeqView* seq_view() const override { return this; }

 private:
  Nat value_at(std::span<const Nat> sigma) const {
    // position 0 decodes to (0,0,0): the minimal-code clause
    if (sigma.size() == 3 && sigma[0] == 0 && sigma[1] == 0 && sigma[2] == 0)
      return Nat(index_);
    if (sigma.size() == 2 && in_l(sigma[0])) {
      std::vector<Nat> zs;
      zs.push_back(sigma[1]);
      for (const Nat& z : unwrap_l(sigma[0])) zs.push_back(z);
      return chain_from(*table_, index_, zs);
    }
    if (!repairs_) return 0;
    if (sigma.size() == 1) {
      if (in_l(sigma[0])) return 0;
      return off_l_value(sigma[0]) + 1;
    }
    return 0;
  }

  std::shared_ptr<const pca::PcaTable> table_;
  std::size_t index_;
  bool repairs_;
};

}  // namespace

Chain chain_trace(const pca::PcaTable& t, std::size_t a_index, const Nat& q) {
  if (q == 0 || !in_l(q)) throw std::invalid_argument("chain_trace needs an L-position of level >= 1");
  return chain_walk(t, a_index, unwrap_l(q));
}

Nat chain_value(const pca::PcaTable& t, std::size_t a_index, const Nat& q) {
  if (q == 0 || !in_l(q)) throw std::invalid_argument("chain_value needs an L-position of level >= 1");
  return chain_from(t, a_index, unwrap_l(q));
}

Real embed_element(const pca::PcaTable& t, std::size_t a_index, bool repairs) {
  if (a_index >= t.elements.size()) throw std::invalid_argument("element index out of range");
  auto shared = std::make_shared<const pca::PcaTable>(t);
  return Real(std::make_shared<EmbedNode>(std::move(shared), a_index, repairs));
}

Certificate certify(const pca::PcaTable& t, const CertifyOptions& opt) {
  Certificate cert;
  cert.depth = opt.depth;
  cert.fuel = opt.fuel;
  cert.seed = opt.seed;
  cert.repairs = opt.repairs;

  auto shared = std::make_shared<const pca::PcaTable>(t);
  std::vector<Real> images;
  images.reserve(t.elements.size());
  for (std::size_t i = 0; i < t.elements.size(); ++i)
    images.push_back(Real(std::make_shared<EmbedNode>(shared, i, opt.repairs)));

  for (std::size_t i = 0; i < images.size(); ++i) {
    Eval e = eval_at(images[i], 0, Fuel{opt.fuel});
    cert.position0.push_back(e.is_value() ? e.get() : Nat(0));
    for (std::size_t j = 0; j < i; ++j) {
      if (cert.position0[i] == cert.position0[j]) {
        cert.injectivity_pass = false;
        cert.injectivity_notes.push_back("position-0 clash between " + t.elements[i] + " and " +
                                         t.elements[j]);
      }
    }
  }
  if (!cert.injectivity_pass) cert.verdict = pca::Verdict3::fail;

  for (const auto& [ab, ci] : t.graph) {
    TripleEvidence ev;
    ev.a = t.elements[ab.first];
    ev.b = t.elements[ab.second];
    ev.c = t.elements[ci];
    const Real& fa = images[ab.first];
    const Real& fb = images[ab.second];
    const Real& fc = images[ci];
    for (unsigned n = 0; n < opt.depth; ++n) {
      ++ev.positions_checked;
      k2k::ScanInfo info;
      FuelMeter meter{Fuel{opt.fuel}};
      Eval lhs = k2k::functional_value(fa.partial(), real_cons(n, fb).partial(), meter, &info);
      if (info.probes > ev.max_probes) ev.max_probes = info.probes;
      if (!lhs.is_value()) {
        ev.pass = false;
        ev.has_fail_position = true;
        ev.fail_position = n;
        ev.failures.push_back("f(" + ev.a + ")f(" + ev.b + ") unresolved at position " +
                              std::to_string(n) + " (" +
                              (lhs.is_fuel_out() ? "fuel exhausted" : "diverged") + ")");
        break;
      }
      Eval rhs = eval_at(fc, n, Fuel{opt.fuel});
      if (!rhs.is_value() || rhs.get() != lhs.get()) {
        ev.pass = false;
        ev.has_fail_position = true;
        ev.fail_position = n;
        ev.failures.push_back("value mismatch at position " + std::to_string(n) + ": got " +
                              lhs.str() + ", image of " + ev.c + " holds " + rhs.str());
        break;
      }
    }
    if (!ev.pass) cert.verdict = pca::Verdict3::fail;
    cert.triples.push_back(std::move(ev));
  }
  return cert;
}

std::string Certificate::to_json_text() const {
  nlohmann::json j;
  j["params"] = {{"depth", depth}, {"fuel", fuel}, {"seed", seed}, {"repairs", repairs}};
  nlohmann::json inj;
  inj["pass"] = injectivity_pass;
  auto codes = nlohmann::json::array();
  for (const auto& c : position0) codes.push_back(c.str());
  inj["position0"] = codes;
  inj["notes"] = injectivity_notes;
  j["injectivity"] = inj;
  auto rows = nlohmann::json::array();
  for (const auto& ev : triples) {
    rows.push_back({{"a", ev.a},
                    {"b", ev.b},
                    {"c", ev.c},
                    {"positions_checked", ev.positions_checked},
                    {"max_probes", ev.max_probes},
                    {"pass", ev.pass},
                    {"failures", ev.failures}});
  }
  j["triples"] = rows;
  j["verdict"] = verdict == pca::Verdict3::pass
                     ? "pass"
                     : (verdict == pca::Verdict3::fail ? "fail" : "inconclusive");
  return j.dump(2);
}

}  // namespace pcalab::embed
