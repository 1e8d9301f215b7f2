#pragma once

#include "pcalab/pca.hpp"
#include "pcalab/real.hpp"

namespace pcalab::bmodel {

/// Application over partial streams: position n runs the program coded by
/// a(0) against the join of a and b; a query of an undefined oracle
/// position diverges, and an undefined a(0) makes every position diverge.
/// The algebra is total: the result is always an element, possibly
/// nowhere defined. Restricted to total inputs this is exactly the
/// machine application.
PartialReal apply(const PartialReal& a, const PartialReal& b);

struct InclusionReport {
  pca::LawReport k_law;
  pca::LawReport s_law;
  bool ok() const { return k_law.ok() && s_law.ok(); }
};

/// Runs the k and s law suites over hole-punched partial samples with the
/// identical combinator reals the machine coding designates. Passing means
/// no value mismatch and no value against a proven divergence.
InclusionReport check_strong_inclusion(unsigned trials, unsigned depth, Fuel fuel,
                                       std::uint64_t seed);

}  // namespace pcalab::bmodel
