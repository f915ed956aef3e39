#pragma once

#include <map>
#include <string>

#include "spinnet/core/exact_scalar.hpp"
#include "spinnet/core/network.hpp"

namespace spinnet {

/// Probability of each label the new unit can take when two free ends are
/// joined. Keys ascend; only outcomes of nonzero probability are stored and
/// they sum to exactly 1.
struct OutcomeDistribution {
  std::map<SpinLabel, ExactScalar> entries;

  [[nodiscard]] ExactScalar probability(SpinLabel c) const;
  [[nodiscard]] ExactScalar total() const;

  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;
};

[[nodiscard]] std::string to_string(const OutcomeDistribution& d);

}  // namespace spinnet
