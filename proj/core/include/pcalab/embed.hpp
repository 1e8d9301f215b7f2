#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcalab/pca.hpp"
#include "pcalab/real.hpp"

namespace pcalab::embed {

/// Membership in the inductively defined position set L: 0 is in L, and
/// the code of (m, z) is in L whenever m is. Decidable; the recursion
/// descends because sequence codes strictly dominate their head.
bool in_l(const Nat& n);
/// Level within L, or nullopt off L.
std::optional<unsigned> l_level(const Nat& n);

/// Filler values off L (the totality repair): the code of (m) carries 0
/// when m is in L and one more than m's filler otherwise; every other
/// off-L position carries 0. Throws std::invalid_argument on n in L.
Nat off_l_value(const Nat& n);

/// Surjective numbering of a finite carrier: code n names element
/// n mod size, so an element's minimal code is its index.
struct Numbering {
  std::size_t size = 0;

  std::size_t element_at(const Nat& code) const { return to_u64(code % size); }
  std::size_t mincode(std::size_t index) const { return index; }
};

/// One application chain at an L-position: the walked element indices
/// and, for a failing chain, the first step whose application was
/// undefined (1-based).
struct Chain {
  bool complete = false;
  unsigned fail_step = 0;        // meaningful when !complete
  std::vector<std::size_t> walked;  // w_0, w_1, ..., as far as defined
};

Chain chain_trace(const pca::PcaTable& t, std::size_t a_index, const Nat& q);

/// Chain value at an L-position q of level >= 1 for source element
/// a_index: walk the nested decomposition of q applying the table left to
/// right through the numbering; a full chain of length i ending at element
/// w yields w + i, a chain first failing at step j yields j - 1.
Nat chain_value(const pca::PcaTable& t, std::size_t a_index, const Nat& q);

/// The image of element a_index under the embedding: position 0 holds the
/// minimal code, L-positions of level >= 1 hold chain values, everything
/// else holds filler values (or literal zeros when repairs are disabled,
/// reproducing the unrepaired construction).
Real embed_element(const pca::PcaTable& t, std::size_t a_index, bool repairs = true);

struct TripleEvidence {
  std::string a, b, c;
  unsigned positions_checked = 0;
  unsigned max_probes = 0;  // largest scan length over the checked positions
  bool pass = true;
  bool has_fail_position = false;
  Nat fail_position = 0;
  std::vector<std::string> failures;
};

struct Certificate {
  pca::Verdict3 verdict = pca::Verdict3::pass;
  unsigned depth = 0;
  std::uint64_t fuel = 0;
  std::uint64_t seed = 0;
  bool repairs = true;
  bool injectivity_pass = true;
  std::vector<Nat> position0;  // image values at position 0, in element order
  std::vector<std::string> injectivity_notes;
  std::vector<TripleEvidence> triples;

  bool ok() const { return verdict == pca::Verdict3::pass; }
  std::string to_json_text() const;
};

struct CertifyOptions {
  unsigned depth = 128;
  std::uint64_t fuel = 1'000'000;
  bool repairs = true;
  std::uint64_t seed = 0;  // recorded in the certificate params
};

/// Certifies the embedding: injectivity via position 0, and for every
/// defined a*b = c that f(a)*f(b) has a value at every position below the
/// depth (the scan resolving by the third probe) equal to f(c) there. Any
/// value mismatch, divergence or fuel exhaustion at a guaranteed position,
/// or injectivity clash fails the certificate.
Certificate certify(const pca::PcaTable& t, const CertifyOptions& opt = {});

}  // namespace pcalab::embed
