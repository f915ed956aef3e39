#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "spinnet/core/exact_scalar.hpp"
#include "spinnet/core/network.hpp"
#include "spinnet/core/outcome.hpp"
#include "spinnet/eval/eval_cache.hpp"

namespace spinnet {

/// Probabilities for the label of the unit formed by joining two free ends.
/// P(c) is proportional to delta_c * <N_c | N_c> / theta(a, b, c), where N_c is
/// the network with the ends joined into c and <.|.> is mirror_norm; the
/// weights are normalized over the admissible c.
/// Throws NotAFreeEnd, InvalidNetwork or ZeroNorm.
[[nodiscard]] OutcomeDistribution join_free_ends(const SpinNetwork& net, EndRef a, EndRef b, EvalCache& cache);
[[nodiscard]] OutcomeDistribution join_free_ends(const SpinNetwork& net, EndRef a, EndRef b);

struct SplitResult {
  SpinNetwork network;
  EndRef unit;       // free end of label k
  EndRef remainder;  // free end of label a - k
};

/// Replaces free end a by a vertex (a, k, a - k) with two new free ends.
/// Throws NotAFreeEnd or InadmissibleSplit.
[[nodiscard]] SplitResult split_unit(const SpinNetwork& net, EndRef a, SpinLabel k);

struct ExchangeResult {
  ExactScalar p_up;    // outcome b + 1
  ExactScalar p_down;  // outcome b - 1
  double theta = 0.0;  // radians in [0, pi]
};

/// Splits a spin-1/2 unit off end a and joins it with end b.
[[nodiscard]] ExchangeResult exchange_experiment(const SpinNetwork& net, EndRef a, EndRef b, EvalCache& cache);
[[nodiscard]] ExchangeResult exchange_experiment(const SpinNetwork& net, EndRef a, EndRef b);

/// 2 arccos(sqrt(p)). Throws OutOfRange unless 0 <= p <= 1.
[[nodiscard]] double angle_from_probability(double p);

struct AngleMatrix {
  std::vector<EndRef> ends;
  Eigen::MatrixXd angles;
};

struct AngleOptions {
  unsigned jobs = 0;  // 0: one per hardware thread
};

/// Pairwise exchange angles, each computed on the unmodified network. The
/// unit is split off the end listed first, so entry (i, j) and (j, i) come
/// from the same experiment.
/// Throws TooFewEnds, MalformedArguments (repeated end) or whatever the
/// exchange throws.
[[nodiscard]] AngleMatrix angle_matrix(const SpinNetwork& net, const std::vector<EndRef>& ends, EvalCache& cache,
                                       const AngleOptions& options = {});
[[nodiscard]] AngleMatrix angle_matrix(const SpinNetwork& net, const std::vector<EndRef>& ends);

struct GeometryReport {
  double gram_residual = 0.0;
  bool embeddable = false;
  int rank = 0;
  Eigen::VectorXd eigenvalues;          // ascending
  std::vector<Eigen::Vector3d> embedding;  // one unit vector per end when embeddable
};

/// Tests whether the angles are those between directions in 3-space via
/// the Gram matrix of cosines.
[[nodiscard]] GeometryReport geometry_consistency(const AngleMatrix& am, double tol = 1e-9);

struct StabilityReport {
  double initial_angle = 0.0;
  std::vector<double> angles;      // after each committed repetition
  std::vector<int> outcomes;       // label of end b after each repetition
  double max_drift = 0.0;
};

/// Repeats the exchange, each time sampling the outcome with a seeded
/// generator and committing it to the network, then re-measuring the angle.
/// Throws MalformedArguments for negative repetitions and ExhaustedEnd when
/// end a has no unit left to split off.
[[nodiscard]] StabilityReport stability_measure(const SpinNetwork& net, EndRef a, EndRef b, int repetitions,
                                                std::uint64_t seed, EvalCache& cache);
[[nodiscard]] StabilityReport stability_measure(const SpinNetwork& net, EndRef a, EndRef b, int repetitions,
                                                std::uint64_t seed);

}  // namespace spinnet
