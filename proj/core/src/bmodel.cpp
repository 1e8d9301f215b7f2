#include "pcalab/bmodel.hpp"

#include "pcalab/k2m.hpp"

namespace pcalab::bmodel {

PartialReal apply(const PartialReal& a, const PartialReal& b) {
  // The inclusion of the machine coding is the identity: same VM, the
  // oracle just may have holes.
  return k2m::apply(a, b);
}

InclusionReport check_strong_inclusion(unsigned trials, unsigned depth, Fuel fuel,
                                       std::uint64_t seed) {
  pca::StreamModel m = pca::b_model();
  InclusionReport rep;
  rep.k_law = pca::check_k_law(m, trials, depth, fuel, seed);
  rep.s_law = pca::check_s_law(m, trials, depth, fuel, seed + 1);
  return rep;
}

}  // namespace pcalab::bmodel
