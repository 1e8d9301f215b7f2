#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pcalab/real.hpp"

namespace pcalab::pca {

/// Deterministic sample source. Draws use plain modulo so runs reproduce
/// across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t below(std::uint64_t n) { return g_() % n; }

 private:
  std::mt19937_64 g_;
};

// --- finite applicative structures ---

/// Finite partial magma on named elements. Nothing is assumed beyond the
/// graph: no totality, no combinatory completeness.
struct PcaTable {
  std::vector<std::string> elements;
  // (a, b) -> c by element index; at most one entry per pair.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> graph;

  std::optional<std::size_t> index_of(const std::string& name) const;

  /// JSON form: {"elements":["x","y"],"table":[["x","x","y"]]}.
  /// Throws std::invalid_argument on malformed input (unknown names,
  /// duplicate (a,b) pairs, wrong shapes).
  static PcaTable from_json_text(const std::string& text);
  std::string to_json_text() const;
};

/// Graph lookup. Unknown names throw; an unmapped pair is Undefined
/// (nullopt).
std::optional<std::string> table_apply(const PcaTable& t, const std::string& a,
                                       const std::string& b);

// --- applicative models over streams ---

struct SabExtraction {
  bool tag_ok = false;
  bool tag_known = false;
  Nat found_tag;
  PartialReal a, b;
};

/// Type-erased applicative structure whose carrier is streams. Total
/// models simply never produce Diverged positions.
struct StreamModel {
  std::string name;
  std::function<PartialReal(const PartialReal&, const PartialReal&)> apply;
  PartialReal k, s;
  // Law suites assert positionwise definedness of ka / sab only when the
  // carrier is total; over partial elements the laws are checked as
  // verdict consistency.
  bool assert_stage_totality = true;
  std::function<SabExtraction(const PartialReal&, Fuel)> extract;  // empty when unsupported
  std::function<PartialReal(Rng&)> sample;
};

StreamModel k2m_model();
StreamModel k2k_model();
StreamModel b_model();

// --- law checkers ---

enum class Verdict3 { pass, fail, inconclusive };

struct LawReport {
  std::string law;
  unsigned trials = 0;
  unsigned passed = 0;
  unsigned failed = 0;
  unsigned inconclusive = 0;
  std::vector<std::string> notes;

  Verdict3 verdict() const {
    if (failed) return Verdict3::fail;
    if (inconclusive) return Verdict3::inconclusive;
    return Verdict3::pass;
  }
  bool ok() const { return failed == 0; }
};

/// k law: k*a is defined (per model policy) and k*a*b prefix-equals a.
LawReport check_k_law(const StreamModel& m, unsigned samples, unsigned depth, Fuel fuel,
                      std::uint64_t seed);

/// s law: s*a*b is total on the checked prefix and s*a*b*c agrees with
/// a*c(b*c) positionwise (values equal when both sides return values, and
/// no value stands against a proven divergence).
LawReport check_s_law(const StreamModel& m, unsigned triples, unsigned depth, Fuel fuel,
                      std::uint64_t seed);

/// Barendregt extraction: the operands read back out of s*a*b match a and
/// b exactly at every checked position.
LawReport check_barendregt(const StreamModel& m, unsigned pairs, unsigned depth, Fuel fuel,
                           std::uint64_t seed);

/// The five head normal form shapes. The kind is recorded when the
/// element is built, never inferred from its values.
enum class HnfKind { k, s, ka, sa, sab };

struct Hnf {
  HnfKind kind;
  PartialReal element;
};

const char* hnf_kind_name(HnfKind k);

/// The five shapes realized from witnesses a, b in a model.
std::vector<Hnf> build_hnfs(const StreamModel& m, const PartialReal& a, const PartialReal& b);

struct HnfWitness {
  std::string pair;
  bool separated = false;
  Nat position = 0;
};

/// Separating positions for the ten unordered pairs of the five head
/// normal form shapes built from witnesses a, b.
std::vector<HnfWitness> hnf_dissimilarity(const StreamModel& m, const PartialReal& a,
                                          const PartialReal& b, unsigned bound, Fuel fuel);

// --- embedding checkers ---

struct EmbeddingReport {
  Verdict3 verdict = Verdict3::pass;
  unsigned triples_checked = 0;
  std::vector<std::string> notes;
  bool ok() const { return verdict != Verdict3::fail; }
};

/// Weak embedding of a finite table into a stream model: f injective
/// (witnessed by prefix differences), and for every a*b = c in the table,
/// tgt_apply(f(a), f(b)) has values on the whole checked prefix and
/// prefix-equals f(c).
EmbeddingReport check_weak_embedding(
    const PcaTable& src, const std::function<PartialReal(const std::string&)>& f,
    const std::function<PartialReal(const PartialReal&, const PartialReal&)>& tgt_apply,
    unsigned depth, Fuel fuel);

/// Weak embedding of a table into a table (exact equality on names).
EmbeddingReport check_weak_embedding(const PcaTable& src,
                                     const std::map<std::string, std::string>& f,
                                     const PcaTable& tgt);

}  // namespace pcalab::pca
