#include "spinnet/core/outcome.hpp"

#include <sstream>

namespace spinnet {

ExactScalar OutcomeDistribution::probability(SpinLabel c) const {
  const auto it = entries.find(c);
  return it == entries.end() ? ExactScalar(0) : it->second;
}

ExactScalar OutcomeDistribution::total() const {
  ExactScalar sum;
  for (const auto& [label, p] : entries) sum += p;
  return sum;
}

std::string to_string(const OutcomeDistribution& d) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [label, p] : d.entries) {
    if (!first) os << ", ";
    first = false;
    os << label.value() << ": " << p.str();
  }
  os << '}';
  return os.str();
}

}  // namespace spinnet
