#pragma once

#include <optional>

#include "pcalab/machine.hpp"
#include "pcalab/real.hpp"

namespace pcalab::k2m {

/// Position-0 tags of the five head normal form shapes. Pairwise distinct
/// by construction of the program numbering.
struct Tags {
  Nat k, ka, s, sa, sab;
};
const Tags& tags();

/// The designated combinators: eventually-zero (hence computable) reals
/// whose slot 0 holds the stage program.
Real combinator_k();
Real combinator_s();

/// Machine application: position n of a*b runs the program coded by a(0)
/// on input n against the join of a and b. Definedness is witnessed
/// positionwise; there is no application-level error.
Real apply(const Real& a, const Real& b);
PartialReal apply(const PartialReal& a, const PartialReal& b);

/// Left-fold application over a term.
Real apply_all(std::initializer_list<Real> factors);

struct SabParts {
  bool tag_ok = false;
  Nat found_tag;       // position-0 value when it evaluated
  bool tag_known = false;
  Real a, b;
};

/// Reads the operands back out of an sab-shaped real: a(i) = x(2i+1),
/// b(i) = x(2i+2). Reports a tag mismatch when x(0) is not the sab tag.
SabParts extract_sab(const Real& x, Fuel fuel);

}  // namespace pcalab::k2m
