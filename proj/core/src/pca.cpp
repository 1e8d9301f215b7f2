#include "pcalab/pca.hpp"

#include <set>
#include <stdexcept>

#include "json.hpp"
#include "pcalab/bmodel.hpp"
#include "pcalab/k2k.hpp"
#include "pcalab/k2m.hpp"
#include "pcalab/program.hpp"

namespace pcalab::pca {

std::optional<std::size_t> PcaTable::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == name) return i;
  return std::nullopt;
}

PcaTable PcaTable::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad table JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j.contains("table"))
    throw std::invalid_argument("table JSON needs \"elements\" and \"table\"");
  PcaTable t;
  for (const auto& e : j.at("elements")) {
    if (!e.is_string()) throw std::invalid_argument("element names must be strings");
    std::string name = e.get<std::string>();
    if (t.index_of(name)) throw std::invalid_argument("duplicate element: " + name);
    t.elements.push_back(std::move(name));
  }
  for (const auto& row : j.at("table")) {
    if (!row.is_array() || row.size() != 3)
      throw std::invalid_argument("table rows must be [a, b, c] triples");
    std::size_t idx[3];
    for (int i = 0; i < 3; ++i) {
      auto found = t.index_of(row[i].get<std::string>());
      if (!found) throw std::invalid_argument("unknown element in table: " + row[i].dump());
      idx[i] = *found;
    }
    if (!t.graph.emplace(std::make_pair(idx[0], idx[1]), idx[2]).second)
      throw std::invalid_argument("duplicate (a, b) pair in table");
  }
  return t;
}

std::string PcaTable::to_json_text() const {
  nlohmann::json j;
  j["elements"] = elements;
  auto rows = nlohmann::json::array();
  for (const auto& [ab, c] : graph)
    rows.push_back({elements[ab.first], elements[ab.second], elements[c]});
  j["table"] = rows;
  return j.dump();
}

std::optional<std::string> table_apply(const PcaTable& t, const std::string& a,
                                       const std::string& b) {
  auto ia = t.index_of(a);
  auto ib = t.index_of(b);
  if (!ia || !ib) throw std::invalid_argument("unknown element name");
  auto it = t.graph.find({*ia, *ib});
  if (it == t.graph.end()) return std::nullopt;
  return t.elements[it->second];
}

// --- samplers: eventually-constant literals plus small program-backed
// reals, sizes pinned for desk-scale suites ---

namespace {

PartialReal sample_machine(Rng& rng) {
  if (rng.below(4) == 0) {
    switch (rng.below(3)) {
      case 0: return real_prg(program_encode(*Program::lit(Nat(rng.below(7))))).partial();
      case 1: return real_prg(program_encode(*Program::in())).partial();
      default: return real_prg(Nat(rng.below(20))).partial();
    }
  }
  std::size_t len = 1 + rng.below(5);
  std::vector<Nat> head;
  head.reserve(len);
  for (std::size_t i = 0; i < len; ++i) head.emplace_back(rng.below(10));
  return real_ec(std::move(head), Nat(rng.below(4))).partial();
}

PartialReal sample_kleene(Rng& rng) {
  std::uint64_t kind = rng.below(16);
  if (kind < 6) {
    // reified strategy with a small modulus: applications always resolve
    unsigned modulus = static_cast<unsigned>(rng.below(3));
    std::uint64_t salt = rng.below(1u << 20);
    k2k::Strategy strat = [modulus, salt](const Nat& q,
                                          std::span<const Nat> ans) -> k2k::StrategyResult {
      if (ans.size() < modulus) return k2k::StrategyResult::need_more();
      Nat acc = q * 3 + salt % 11;
      for (unsigned i = 0; i < modulus; ++i) acc += ans[i] * (i + 2);
      return k2k::StrategyResult::output(acc % 7);
    };
    return k2k::reify(std::move(strat)).partial();
  }
  // eventually constant literal; a nonzero tail makes the scan hit on the
  // first tail probe, one sample in sixteen is left divergent for coverage
  std::size_t len = 1 + rng.below(4);
  std::vector<Nat> head;
  head.reserve(len);
  for (std::size_t i = 0; i < len; ++i) head.emplace_back(rng.below(6));
  Nat tail = kind == 6 ? Nat(0) : Nat(1 + rng.below(4));
  return real_ec(std::move(head), std::move(tail)).partial();
}

PartialReal sample_b(Rng& rng) {
  PartialReal base = sample_machine(rng);
  if (rng.below(2) == 0) {
    std::set<Nat> holes;
    unsigned count = 1 + static_cast<unsigned>(rng.below(2));
    for (unsigned i = 0; i < count; ++i) holes.insert(Nat(rng.below(8)));
    return punch_holes(base, std::move(holes));
  }
  return base;
}

Real as_real(const PartialReal& x) { return Real(x.node()); }

}  // namespace

StreamModel k2m_model() {
  StreamModel m;
  m.name = "k2m";
  m.apply = [](const PartialReal& a, const PartialReal& b) { return k2m::apply(a, b); };
  m.k = k2m::combinator_k().partial();
  m.s = k2m::combinator_s().partial();
  m.assert_stage_totality = true;
  m.extract = [](const PartialReal& x, Fuel fuel) {
    auto parts = k2m::extract_sab(as_real(x), fuel);
    return SabExtraction{parts.tag_ok, parts.tag_known, parts.found_tag, parts.a.partial(),
                         parts.b.partial()};
  };
  m.sample = sample_machine;
  return m;
}

StreamModel k2k_model() {
  StreamModel m;
  m.name = "k2k";
  m.apply = [](const PartialReal& a, const PartialReal& b) {
    return k2k::apply(as_real(a), as_real(b)).partial();
  };
  m.k = k2k::combinator_k().partial();
  m.s = k2k::combinator_s().partial();
  m.assert_stage_totality = true;
  m.sample = sample_kleene;
  return m;
}

StreamModel b_model() {
  StreamModel m;
  m.name = "b";
  m.apply = [](const PartialReal& a, const PartialReal& b) { return bmodel::apply(a, b); };
  m.k = k2m::combinator_k().partial();
  m.s = k2m::combinator_s().partial();
  m.assert_stage_totality = false;  // the algebra is total, positions may diverge
  m.sample = sample_b;
  return m;
}

// --- law checkers ---

namespace {

struct CaseTally {
  bool failed = false;
  bool inconclusive = false;
  std::string note;

  void fail(std::string n) {
    if (!failed) note = std::move(n);
    failed = true;
  }
};

void absorb(LawReport& rep, unsigned trial, CaseTally& c) {
  ++rep.trials;
  if (c.failed) {
    ++rep.failed;
    rep.notes.push_back("trial " + std::to_string(trial) + ": " + c.note);
  } else if (c.inconclusive) {
    ++rep.inconclusive;
  } else {
    ++rep.passed;
  }
}

void check_defined_prefix(const PartialReal& x, const char* what, unsigned depth, Fuel fuel,
                          CaseTally& c) {
  for (unsigned n = 0; n < depth && !c.failed; ++n) {
    Eval e = eval_at(x, n, fuel);
    if (e.is_diverged())
      c.fail(std::string(what) + " diverged at position " + std::to_string(n));
    else if (e.is_fuel_out())
      c.inconclusive = true;
  }
}

void check_prefix_agree(const PartialReal& x, const PartialReal& y, const char* what,
                        unsigned depth, Fuel fuel, CaseTally& c) {
  PrefixCmp cmp = prefix_eq(x, y, depth, fuel);
  if (cmp.is_diff())
    c.fail(std::string(what) + " differ at position " + cmp.pos.str() + " (" + cmp.lhs.str() +
           " vs " + cmp.rhs.str() + ")");
  else if (cmp.is_inconclusive())
    c.inconclusive = true;
}

}  // namespace

LawReport check_k_law(const StreamModel& m, unsigned samples, unsigned depth, Fuel fuel,
                      std::uint64_t seed) {
  LawReport rep;
  rep.law = "k-law/" + m.name;
  Rng rng(seed);
  for (unsigned t = 0; t < samples; ++t) {
    PartialReal a = m.sample(rng);
    PartialReal b = m.sample(rng);
    PartialReal ka = m.apply(m.k, a);
    CaseTally c;
    if (m.assert_stage_totality) check_defined_prefix(ka, "k*a", depth, fuel, c);
    if (!c.failed) check_prefix_agree(m.apply(ka, b), a, "k*a*b vs a", depth, fuel, c);
    absorb(rep, t, c);
  }
  return rep;
}

LawReport check_s_law(const StreamModel& m, unsigned triples, unsigned depth, Fuel fuel,
                      std::uint64_t seed) {
  LawReport rep;
  rep.law = "s-law/" + m.name;
  Rng rng(seed);
  for (unsigned t = 0; t < triples; ++t) {
    PartialReal a = m.sample(rng);
    PartialReal b = m.sample(rng);
    PartialReal c_elem = m.sample(rng);
    CaseTally c;
    PartialReal sab = m.apply(m.apply(m.s, a), b);
    if (m.assert_stage_totality) check_defined_prefix(sab, "s*a*b", depth, fuel, c);
    if (!c.failed) {
      PartialReal lhs = m.apply(sab, c_elem);
      PartialReal rhs = m.apply(m.apply(a, c_elem), m.apply(b, c_elem));
      check_prefix_agree(lhs, rhs, "s*a*b*c vs a*c(b*c)", depth, fuel, c);
    }
    absorb(rep, t, c);
  }
  return rep;
}

LawReport check_barendregt(const StreamModel& m, unsigned pairs, unsigned depth, Fuel fuel,
                           std::uint64_t seed) {
  LawReport rep;
  rep.law = "barendregt/" + m.name;
  if (!m.extract) {
    rep.notes.push_back("model does not support extraction");
    return rep;
  }
  Rng rng(seed);
  for (unsigned t = 0; t < pairs; ++t) {
    PartialReal a = m.sample(rng);
    PartialReal b = m.sample(rng);
    PartialReal sab = m.apply(m.apply(m.s, a), b);
    CaseTally c;
    SabExtraction ex = m.extract(sab, fuel);
    if (!ex.tag_known) {
      c.inconclusive = true;
    } else if (!ex.tag_ok) {
      c.fail("s*a*b carries tag " + ex.found_tag.str() + " instead of the sab tag");
    } else {
      for (unsigned n = 0; n < depth && !c.failed; ++n) {
        Eval ea = eval_at(ex.a, n, fuel);
        Eval oa = eval_at(a, n, fuel);
        Eval eb = eval_at(ex.b, n, fuel);
        Eval ob = eval_at(b, n, fuel);
        if (ea.is_fuel_out() || oa.is_fuel_out() || eb.is_fuel_out() || ob.is_fuel_out()) {
          c.inconclusive = true;
          continue;
        }
        if (!(ea == oa) || !(eb == ob))
          c.fail("extraction mismatch at position " + std::to_string(n));
      }
    }
    absorb(rep, t, c);
  }
  return rep;
}

const char* hnf_kind_name(HnfKind k) {
  switch (k) {
    case HnfKind::k: return "k";
    case HnfKind::s: return "s";
    case HnfKind::ka: return "ka";
    case HnfKind::sa: return "sa";
    case HnfKind::sab: return "sab";
  }
  return "?";
}

std::vector<Hnf> build_hnfs(const StreamModel& m, const PartialReal& a, const PartialReal& b) {
  PartialReal sa = m.apply(m.s, a);
  return {{HnfKind::k, m.k},
          {HnfKind::s, m.s},
          {HnfKind::ka, m.apply(m.k, a)},
          {HnfKind::sa, sa},
          {HnfKind::sab, m.apply(sa, b)}};
}

std::vector<HnfWitness> hnf_dissimilarity(const StreamModel& m, const PartialReal& a,
                                          const PartialReal& b, unsigned bound, Fuel fuel) {
  std::vector<Hnf> hnfs = build_hnfs(m, a, b);
  std::vector<HnfWitness> out;
  for (std::size_t i = 0; i < hnfs.size(); ++i) {
    for (std::size_t j = i + 1; j < hnfs.size(); ++j) {
      HnfWitness w;
      w.pair = std::string(hnf_kind_name(hnfs[i].kind)) + " vs " + hnf_kind_name(hnfs[j].kind);
      for (unsigned n = 0; n < bound; ++n) {
        Eval x = eval_at(hnfs[i].element, n, fuel);
        Eval y = eval_at(hnfs[j].element, n, fuel);
        if (x.is_value() && y.is_value() && x.get() != y.get()) {
          w.separated = true;
          w.position = n;
          break;
        }
      }
      out.push_back(std::move(w));
    }
  }
  return out;
}

EmbeddingReport check_weak_embedding(
    const PcaTable& src, const std::function<PartialReal(const std::string&)>& f,
    const std::function<PartialReal(const PartialReal&, const PartialReal&)>& tgt_apply,
    unsigned depth, Fuel fuel) {
  EmbeddingReport rep;
  std::vector<PartialReal> images;
  images.reserve(src.elements.size());
  for (const auto& name : src.elements) images.push_back(f(name));

  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      PrefixCmp cmp = prefix_eq(images[i], images[j], depth, fuel);
      if (cmp.is_eq()) {
        rep.verdict = Verdict3::fail;
        rep.notes.push_back("images of " + src.elements[i] + " and " + src.elements[j] +
                            " are prefix-equal: injectivity not witnessed");
      } else if (cmp.is_inconclusive() && rep.verdict == Verdict3::pass) {
        rep.verdict = Verdict3::inconclusive;
        rep.notes.push_back("injectivity of " + src.elements[i] + "/" + src.elements[j] +
                            " inconclusive");
      }
    }
  }

  for (const auto& [ab, ci] : src.graph) {
    ++rep.triples_checked;
    const std::string& na = src.elements[ab.first];
    const std::string& nb = src.elements[ab.second];
    PartialReal fab = tgt_apply(images[ab.first], images[ab.second]);
    for (unsigned n = 0; n < depth; ++n) {
      Eval e = eval_at(fab, n, fuel);
      if (e.is_value()) continue;
      // the embedding requires a value at every checked position, so a
      // missing one is a definedness counterexample either way
      rep.verdict = Verdict3::fail;
      rep.notes.push_back("f(" + na + ")f(" + nb + ") has no value at position " +
                          std::to_string(n) +
                          (e.is_diverged() ? " (diverges)" : " (budget exhausted)"));
      break;
    }
    PrefixCmp cmp = prefix_eq(fab, images[ci], depth, fuel);
    if (cmp.is_diff()) {
      rep.verdict = Verdict3::fail;
      rep.notes.push_back("f(" + na + ")f(" + nb + ") != f(" + src.elements[ci] +
                          ") at position " + cmp.pos.str());
    } else if (cmp.is_inconclusive() && rep.verdict == Verdict3::pass) {
      rep.verdict = Verdict3::inconclusive;
    }
  }
  return rep;
}

EmbeddingReport check_weak_embedding(const PcaTable& src,
                                     const std::map<std::string, std::string>& f,
                                     const PcaTable& tgt) {
  EmbeddingReport rep;
  auto image = [&](const std::string& name) -> const std::string& {
    auto it = f.find(name);
    if (it == f.end()) throw std::invalid_argument("f undefined on " + name);
    return it->second;
  };
  std::set<std::string> seen;
  for (const auto& name : src.elements) {
    if (!seen.insert(image(name)).second) {
      rep.verdict = Verdict3::fail;
      rep.notes.push_back("f not injective at " + name);
    }
  }
  for (const auto& [ab, ci] : src.graph) {
    ++rep.triples_checked;
    auto got = table_apply(tgt, image(src.elements[ab.first]), image(src.elements[ab.second]));
    if (!got || *got != image(src.elements[ci])) {
      rep.verdict = Verdict3::fail;
      rep.notes.push_back("triple (" + src.elements[ab.first] + "," + src.elements[ab.second] +
                          ") not preserved");
    }
  }
  return rep;
}

}  // namespace pcalab::pca
