#include "spinnet/dynamics/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <unsupported/Eigen/KroneckerProduct>

#include "spinnet/core/error.hpp"

namespace spinnet {
namespace {

constexpr int kMaxQubits = 6;
constexpr double kZeroProbability = 1e-14;

std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

void check_pair(int n_qubits, int i, int j) {
  if (!(0 <= i && i < j && j < n_qubits)) {
    throw Error(ErrorCode::BadIndices, "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                           ") is not 0 <= i < j < " + std::to_string(n_qubits));
  }
}

// Basis index with the bits of qubits i and j exchanged.
std::size_t swapped(std::size_t index, int n_qubits, int i, int j) {
  const int bi = n_qubits - 1 - i;
  const int bj = n_qubits - 1 - j;
  const std::size_t x = ((index >> bi) ^ (index >> bj)) & 1U;
  return index ^ ((x << bi) | (x << bj));
}

std::vector<std::size_t> swap_permutation(int n_qubits, int i, int j) {
  std::vector<std::size_t> perm(dim_of(n_qubits));
  for (std::size_t r = 0; r < perm.size(); ++r) perm[r] = swapped(r, n_qubits, i, j);
  return perm;
}

// (1 +- SWAP) / 2 applied to the rows of m.
Eigen::MatrixXcd project_rows(const Eigen::MatrixXcd& m, const std::vector<std::size_t>& perm, PairChannel c) {
  const double sign = c == PairChannel::Triplet ? 1.0 : -1.0;
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.row(r) = 0.5 * (m.row(r) + sign * m.row(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(r)])));
  }
  return out;
}

std::vector<SpinLabel> qubit_labels(int n) { return std::vector<SpinLabel>(static_cast<std::size_t>(n), SpinLabel(1)); }

bool is_qubit_register(const StateVector& s, int n_qubits) {
  if (static_cast<int>(s.labels.size()) != n_qubits) return false;
  if (std::any_of(s.labels.begin(), s.labels.end(), [](SpinLabel l) { return l.value() != 1; })) return false;
  return static_cast<std::size_t>(s.amplitudes.size()) == dim_of(n_qubits);
}

// (1 x |anc>) as a 2^(k+a) x 2^k matrix.
Eigen::MatrixXcd embed(int system_qubits, const StateVector& ancilla) {
  const auto ds = static_cast<Eigen::Index>(dim_of(system_qubits));
  const Eigen::Index da = ancilla.amplitudes.size();
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(ds * da, ds);
  for (Eigen::Index s = 0; s < ds; ++s) e.block(s * da, s, da, 1) = ancilla.amplitudes;
  return e;
}

struct Candidate {
  std::vector<int> steps;  // indices into the step alphabet
  double fidelity = -1.0;
};

constexpr double kFidelityTie = 1e-12;

bool better(const Candidate& c, const Candidate& incumbent) {
  if (c.fidelity > incumbent.fidelity + kFidelityTie) return true;
  if (c.fidelity < incumbent.fidelity - kFidelityTie) return false;
  if (c.steps.size() != incumbent.steps.size()) return c.steps.size() < incumbent.steps.size();
  return c.steps < incumbent.steps;
}

class Search {
 public:
  Search(const Eigen::MatrixXcd& target, int system_qubits, const StateVector& ancilla, const SearchOptions& options)
      : target_(target), k_(system_qubits), n_(system_qubits + static_cast<int>(ancilla.labels.size())),
        options_(options), embed_(embed(system_qubits, ancilla)), embed_adjoint_(embed_.adjoint()) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        perms_.push_back(swap_permutation(n_, i, j));
        alphabet_.push_back(PairStep{i, j, PairChannel::Singlet});
        alphabet_.push_back(PairStep{i, j, PairChannel::Triplet});
      }
    }
  }

  SearchReport run() {
    Candidate best{{}, score(embed_)};
    count_node();
    if (options_.max_len > 0 && !alphabet_.empty()) {
      const std::size_t branches = alphabet_.size();
      std::vector<Candidate> per_branch(branches);
      unsigned jobs = options_.jobs != 0 ? options_.jobs : std::max(1U, std::thread::hardware_concurrency());
      jobs = std::min<unsigned>(jobs, static_cast<unsigned>(branches));
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      auto worker = [&] {
        for (std::size_t b = next++; b < branches; b = next++) {
          try {
            std::vector<int> prefix{static_cast<int>(b)};
            explore(apply(embed_, static_cast<int>(b)), prefix, per_branch[b]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = branches;
          }
        }
      };
      if (jobs <= 1) {
        worker();
      } else {
        std::vector<std::jthread> threads;
        for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
      }
      if (failure) std::rethrow_exception(failure);
      for (const Candidate& c : per_branch) {
        if (c.fidelity >= 0.0 && better(c, best)) best = c;
      }
    }

    SearchReport report;
    report.best_sequence.ancilla_count = n_ - k_;
    Eigen::MatrixXcd a = embed_;
    for (int s : best.steps) {
      report.best_sequence.steps.push_back(alphabet_[static_cast<std::size_t>(s)]);
      a = apply(a, s);
    }
    report.fidelity = best.fidelity;
    report.success_probability = a.squaredNorm() / static_cast<double>(dim_of(k_));
    report.nodes = nodes_.load();
    return report;
  }

 private:
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& a, int step) const {
    const PairStep& s = alphabet_[static_cast<std::size_t>(step)];
    return project_rows(a, perms_[static_cast<std::size_t>(step / 2)], s.channel);
  }

  double score(const Eigen::MatrixXcd& a) const { return map_fidelity(embed_adjoint_ * a, target_); }

  void count_node() {
    if (++nodes_ > options_.node_limit) {
      throw Error(ErrorCode::BudgetExceeded,
                  "search visited more than " + std::to_string(options_.node_limit) + " sequences");
    }
  }

  void explore(const Eigen::MatrixXcd& a, std::vector<int>& prefix, Candidate& best) {
    count_node();
    if (a.squaredNorm() < kZeroProbability) return;
    Candidate here{prefix, score(a)};
    if (best.fidelity < 0.0 || better(here, best)) best = std::move(here);
    if (static_cast<int>(prefix.size()) >= options_.max_len) return;
    const int last = prefix.back();
    for (int s = 0; s < static_cast<int>(alphabet_.size()); ++s) {
      if (s / 2 == last / 2) continue;  // same pair: repeat is idempotent, other channel vanishes
      prefix.push_back(s);
      explore(apply(a, s), prefix, best);
      prefix.pop_back();
    }
  }

  const Eigen::MatrixXcd& target_;
  int k_;
  int n_;
  SearchOptions options_;
  Eigen::MatrixXcd embed_;
  Eigen::MatrixXcd embed_adjoint_;
  std::vector<PairStep> alphabet_;
  std::vector<std::vector<std::size_t>> perms_;
  std::atomic<std::size_t> nodes_{0};
};

}  // namespace

std::string to_string(PairChannel c) { return c == PairChannel::Singlet ? "singlet" : "triplet"; }

PairProjector pair_projector(int n_qubits, int i, int j, PairChannel channel) {
  check_pair(n_qubits, i, j);
  if (n_qubits > 16) throw Error(ErrorCode::TooLarge, "too many qubits for a dense projector");
  const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  PairProjector p{PairStep{i, j, channel}, LinearMapRep{qubit_labels(n_qubits), qubit_labels(n_qubits), {}}};
  p.rep.matrix = project_rows(id, swap_permutation(n_qubits, i, j), channel);
  return p;
}

Postselected apply_postselected(const StateVector& state, const PairProjector& p) {
  const int n = static_cast<int>(p.rep.in_labels.size());
  if (!is_qubit_register(state, n)) {
    throw Error(ErrorCode::MalformedArguments, "state is not a register of " + std::to_string(n) + " qubits");
  }
  if (std::abs(state.norm() - 1.0) > 1e-9) throw Error(ErrorCode::MalformedArguments, "state is not normalized");
  const Eigen::VectorXcd projected = p.rep.matrix * state.amplitudes;
  const double prob = projected.squaredNorm();
  if (prob < kZeroProbability) {
    throw Error(ErrorCode::ZeroProbability, "postselecting " + to_string(p.step.channel) + " on (" +
                                                std::to_string(p.step.i) + ", " + std::to_string(p.step.j) +
                                                ") is impossible");
  }
  return Postselected{StateVector{state.labels, projected / std::sqrt(prob)}, std::min(prob, 1.0)};
}

std::string to_string(const MeasurementSequence& seq) {
  std::ostringstream out;
  out << '[';
  for (std::size_t s = 0; s < seq.steps.size(); ++s) {
    if (s > 0) out << ", ";
    const PairStep& p = seq.steps[s];
    out << (p.channel == PairChannel::Singlet ? 'S' : 'T') << '(' << p.i << ',' << p.j << ')';
  }
  out << ']';
  return out.str();
}

LinearMapRep sequence_channel(const MeasurementSequence& seq, int system_qubits) {
  if (system_qubits < 0 || seq.ancilla_count < 0) throw Error(ErrorCode::BadIndices, "negative qubit count");
  const int n = system_qubits + seq.ancilla_count;
  if (n > 16) throw Error(ErrorCode::TooLarge, "too many qubits for a dense channel");
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  LinearMapRep rep{qubit_labels(n), qubit_labels(n), Eigen::MatrixXcd::Identity(d, d)};
  for (const PairStep& s : seq.steps) {
    check_pair(n, s.i, s.j);
    rep.matrix = project_rows(rep.matrix, swap_permutation(n, s.i, s.j), s.channel);
  }
  return rep;
}

StateVector default_ancilla_state(int ancillas) {
  if (ancillas < 0) throw Error(ErrorCode::MalformedArguments, "negative ancilla count");
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (int a = 0; a + 1 < ancillas; a += 2) {
    Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(4);
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);
    v = Eigen::kroneckerProduct(v, singlet).eval();
  }
  if (ancillas % 2 == 1) {
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(2);
    up(0) = 1.0;
    v = Eigen::kroneckerProduct(v, up).eval();
  }
  return StateVector{qubit_labels(ancillas), v};
}

StateVector basis_state(int n_qubits, std::size_t index) {
  if (n_qubits < 0 || n_qubits > 16 || index >= dim_of(n_qubits)) {
    throw Error(ErrorCode::MalformedArguments, "no such basis state");
  }
  StateVector s{qubit_labels(n_qubits), Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_of(n_qubits)))};
  s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

Eigen::MatrixXcd system_map(const LinearMapRep& full, int system_qubits, const StateVector& ancilla) {
  const int ancillas = static_cast<int>(ancilla.labels.size());
  const auto d = static_cast<Eigen::Index>(dim_of(system_qubits + ancillas));
  if (system_qubits < 0 || !is_qubit_register(ancilla, ancillas) || full.matrix.rows() != d ||
      full.matrix.cols() != d) {
    throw Error(ErrorCode::MalformedArguments, "channel and ancilla sizes do not match");
  }
  const Eigen::MatrixXcd e = embed(system_qubits, ancilla);
  return e.adjoint() * full.matrix * e;
}

double map_fidelity(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& target) {
  if (k.rows() != target.rows() || k.cols() != target.cols() || k.rows() != k.cols()) {
    throw Error(ErrorCode::MalformedArguments, "map and target differ in shape");
  }
  const double kk = k.squaredNorm();
  if (kk < kZeroProbability) return 0.0;
  const double overlap = std::abs((target.adjoint() * k).trace());
  return std::min(1.0, overlap / std::sqrt(static_cast<double>(k.rows()) * kk));
}

SearchReport approximate_unitary_search(const Eigen::MatrixXcd& target, int ancillas, const StateVector& ancilla_state,
                                        const SearchOptions& options) {
  const Eigen::Index d = target.rows();
  int k = 0;
  while (k < kMaxQubits + 1 && (Eigen::Index{1} << k) < d) ++k;
  if (d < 2 || target.cols() != d || (Eigen::Index{1} << k) != d) {
    throw Error(ErrorCode::MalformedArguments, "target must act on k >= 1 qubits");
  }
  if (ancillas < 0 || k + ancillas > kMaxQubits) {
    throw Error(ErrorCode::MalformedArguments, "system plus ancillas must be at most " + std::to_string(kMaxQubits) +
                                                   " qubits");
  }
  if (options.max_len < 0) throw Error(ErrorCode::MalformedArguments, "max_len must be non-negative");
  if (!(target.adjoint() * target).isIdentity(1e-9)) throw Error(ErrorCode::MalformedArguments, "target is not unitary");
  if (!is_qubit_register(ancilla_state, ancillas) || std::abs(ancilla_state.norm() - 1.0) > 1e-9) {
    throw Error(ErrorCode::MalformedArguments, "ancilla state must be a normalized register of " +
                                                   std::to_string(ancillas) + " qubits");
  }
  return Search(target, k, ancilla_state, options).run();
}

SearchReport approximate_unitary_search(const Eigen::MatrixXcd& target, int ancillas, const SearchOptions& options) {
  return approximate_unitary_search(target, ancillas, default_ancilla_state(ancillas), options);
}

}  // namespace spinnet
