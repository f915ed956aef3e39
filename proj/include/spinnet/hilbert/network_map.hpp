#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "spinnet/core/network.hpp"
#include "spinnet/core/outcome.hpp"

namespace spinnet {

/// Network read as a linear map from the tensor product of the in-end irreps
/// to that of the out-end irreps. Basis vectors of a label-n factor are
/// ordered by descending m = n/2, n/2 - 1, ..., -n/2; the first end listed
/// is the most significant index.
struct LinearMapRep {
  std::vector<SpinLabel> in_labels;
  std::vector<SpinLabel> out_labels;
  Eigen::MatrixXcd matrix;
};

struct StateVector {
  std::vector<SpinLabel> labels;
  Eigen::VectorXcd amplitudes;

  [[nodiscard]] double norm() const { return amplitudes.norm(); }
};

/// Exact contraction of the vertex 3j tensors with the sqrt weights of the
/// free legs and the global triangle factor split off:
///   T(k_1..k_F) = sqrt(triangles) * prod_f sqrt(k_f! (n_f - k_f)!) * D(k_1..k_F)
/// where k = j + m. D is rational and sparse.
struct RationalTensor {
  std::vector<EndRef> legs;
  std::vector<int> labels;
  mpq_class triangles = 1;
  std::unordered_map<std::string, mpq_class> entries;  // key: one byte per leg holding k

  [[nodiscard]] static std::string key_of(const std::vector<int>& ks);
};

/// legs must list every free end of net exactly once. Throws InvalidNetwork
/// or InvalidPartition.
[[nodiscard]] RationalTensor contract_network(const SpinNetwork& net, const std::vector<EndRef>& legs);

/// Throws InvalidNetwork or InvalidPartition.
[[nodiscard]] LinearMapRep network_to_linear_map(const SpinNetwork& net, const std::vector<EndRef>& in_ends,
                                                 const std::vector<EndRef>& out_ends);

/// All free ends as outputs, in free_ends() order, normalized. A network
/// whose state vanishes is returned unnormalized (zero).
[[nodiscard]] StateVector network_to_state(const SpinNetwork& net);

/// Spin matrices on the label-n irrep: axis 'x', 'y' or 'z'.
[[nodiscard]] Eigen::MatrixXcd spin_matrix(SpinLabel n, char axis);

/// Largest entry of J_out M - M J_in over the three total angular momentum
/// components. Zero for an exact intertwiner.
[[nodiscard]] double intertwiner_defect(const LinearMapRep& rep);

/// Born probabilities of the total spin of the pair (a, b) in the state the
/// network prepares, with all other free ends traced out. Exact.
/// Throws NotAFreeEnd, InvalidNetwork or ZeroNorm.
[[nodiscard]] OutcomeDistribution born_join_distribution(const SpinNetwork& net, EndRef a, EndRef b);

}  // namespace spinnet
