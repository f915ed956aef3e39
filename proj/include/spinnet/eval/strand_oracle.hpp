#pragma once

#include "spinnet/core/exact_scalar.hpp"
#include "spinnet/core/network.hpp"

namespace spinnet {

struct StrandOracleOptions {
  /// Upper bound on the total number of spin-1/2 strands (sum of labels).
  int max_strands = 16;
};

/// Brute-force value of a closed network: every unit is expanded into its
/// strands, every permutation allowed by each antisymmetrizer is summed, and
/// each resulting strand configuration contributes sign * (-2)^loops.
/// Independent of the recoupling evaluator; exponential cost, for tests.
/// Throws HasFreeEnds, InvalidNetwork or TooLarge.
[[nodiscard]] ExactScalar strand_expansion_oracle(const SpinNetwork& net,
                                                  const StrandOracleOptions& options = {});

/// Brute-force value of a single closed unit of label n with no vertices.
[[nodiscard]] ExactScalar strand_loop_oracle(SpinLabel n);

}  // namespace spinnet
