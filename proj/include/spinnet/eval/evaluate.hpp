#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spinnet/core/exact_scalar.hpp"
#include "spinnet/core/network.hpp"
#include "spinnet/eval/eval_cache.hpp"

namespace spinnet {

struct EvalOptions {
  /// When set, each reduction step picks uniformly among all applicable
  /// moves instead of the fixed preference order. Used to check that the
  /// value does not depend on the order of recoupling moves.
  std::optional<std::uint64_t> move_order_seed;
};

/// Exact value of a closed network by recursive recoupling: label-0 edges
/// are dissolved, bubbles and triangles are removed in closed form, and
/// longer cycles are shortened by 6j recoupling moves.
/// Throws HasFreeEnds or InvalidNetwork.
[[nodiscard]] ExactScalar evaluate_closed(const SpinNetwork& net, EvalCache& cache,
                                          const EvalOptions& options = {});
[[nodiscard]] ExactScalar evaluate_closed(const SpinNetwork& net);

/// The network glued to its mirror image along every free end. Edges whose
/// two ends are both free become detached loops and are returned separately
/// since a network cannot represent a vertexless loop.
struct MirrorDouble {
  SpinNetwork network;
  std::vector<SpinLabel> detached_loops;
};

[[nodiscard]] MirrorDouble mirror_double(const SpinNetwork& net);

/// Value of mirror_double(net): the closed pairing of the network with
/// itself. For a closed network this is the square of its value.
/// Throws InvalidNetwork.
[[nodiscard]] ExactScalar mirror_norm(const SpinNetwork& net, EvalCache& cache,
                                      const EvalOptions& options = {});
[[nodiscard]] ExactScalar mirror_norm(const SpinNetwork& net);

}  // namespace spinnet
