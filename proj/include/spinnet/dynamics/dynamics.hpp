#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinnet/hilbert/network_map.hpp"

namespace spinnet {

enum class PairChannel { Singlet, Triplet };

[[nodiscard]] std::string to_string(PairChannel c);

struct PairStep {
  int i = 0;
  int j = 1;
  PairChannel channel = PairChannel::Singlet;

  friend bool operator==(const PairStep&, const PairStep&) = default;
};

/// Projector onto total spin 0 (Singlet) or 1 (Triplet) of qubits i and j,
/// identity on the others. Qubit 0 is the most significant tensor factor and
/// |up> is the first basis vector of each factor.
struct PairProjector {
  PairStep step;
  LinearMapRep rep;
};

/// Throws BadIndices unless 0 <= i < j < n_qubits.
[[nodiscard]] PairProjector pair_projector(int n_qubits, int i, int j, PairChannel channel);

struct Postselected {
  StateVector state;
  double success_probability = 0.0;
};

/// Projects and renormalizes. Throws MalformedArguments for a state that is
/// not a normalized qubit register of the projector's size, and
/// ZeroProbability when the projection vanishes.
[[nodiscard]] Postselected apply_postselected(const StateVector& state, const PairProjector& p);

/// System qubits come first, ancillas after.
struct MeasurementSequence {
  std::vector<PairStep> steps;
  int ancilla_count = 0;
};

[[nodiscard]] std::string to_string(const MeasurementSequence& seq);

/// Product of the projectors (first step applied first) on system and
/// ancilla qubits together. Throws BadIndices.
[[nodiscard]] LinearMapRep sequence_channel(const MeasurementSequence& seq, int system_qubits);

/// Singlets on ancilla pairs (0,1), (2,3), ...; an odd last ancilla is |up>.
[[nodiscard]] StateVector default_ancilla_state(int ancillas);

/// Qubit register in the computational basis, bits read from qubit 0.
[[nodiscard]] StateVector basis_state(int n_qubits, std::size_t index);

/// K = (1 x <anc|) S (1 x |anc>): ancillas prepared in anc and postselected
/// back onto it. Throws MalformedArguments on a size mismatch.
[[nodiscard]] Eigen::MatrixXcd system_map(const LinearMapRep& full, int system_qubits, const StateVector& ancilla);

/// |tr(U^H K)| / sqrt(d tr(K^H K)), 0 for K = 0. Equals 1 exactly when K is a
/// nonzero multiple of the unitary U, so global scale and phase do not count.
[[nodiscard]] double map_fidelity(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& target);

struct SearchOptions {
  int max_len = 4;
  std::size_t node_limit = 5'000'000;
  unsigned jobs = 0;  // 0: one per hardware thread
};

struct SearchReport {
  MeasurementSequence best_sequence;
  double fidelity = 0.0;
  double success_probability = 0.0;  // averaged over system inputs
  std::size_t nodes = 0;
};

/// Exhaustive search over step sequences up to max_len. A repeated step and a
/// step followed by the other channel on the same pair are skipped, as are
/// extensions of a sequence whose map already vanishes. Ties go to the
/// shorter, then lexicographically earlier sequence.
/// Throws MalformedArguments (k < 1, k + ancillas > 6, non-unitary target,
/// wrong ancilla state) and BudgetExceeded when node_limit is hit.
[[nodiscard]] SearchReport approximate_unitary_search(const Eigen::MatrixXcd& target, int ancillas,
                                                      const StateVector& ancilla_state,
                                                      const SearchOptions& options = {});
[[nodiscard]] SearchReport approximate_unitary_search(const Eigen::MatrixXcd& target, int ancillas,
                                                      const SearchOptions& options = {});

}  // namespace spinnet
