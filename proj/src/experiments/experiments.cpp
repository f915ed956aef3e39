#include "spinnet/experiments/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "spinnet/core/error.hpp"
#include "spinnet/eval/evaluate.hpp"
#include "spinnet/eval/primitives.hpp"

namespace spinnet {
namespace {

void require_free(const SpinNetwork& net, EndRef e) {
  if (e.edge >= net.edges().size() || (e.side != 0 && e.side != 1) || !net.is_free_end(e)) {
    throw Error(ErrorCode::NotAFreeEnd, "not a free end");
  }
}

void require_valid(const SpinNetwork& net) {
  const auto violations = validate_network(net);
  if (!violations.empty()) throw Error(ErrorCode::InvalidNetwork, violations.front().message);
}

}  // namespace

OutcomeDistribution join_free_ends(const SpinNetwork& net, EndRef a, EndRef b, EvalCache& cache) {
  require_valid(net);
  require_free(net, a);
  require_free(net, b);
  if (a == b) throw Error(ErrorCode::NotAFreeEnd, "cannot join a free end with itself");

  const SpinLabel la = net.label(a);
  const SpinLabel lb = net.label(b);
  std::vector<std::pair<SpinLabel, ExactScalar>> weights;
  ExactScalar total = 0;
  for (SpinLabel c : admissible_couplings(la, lb)) {
    const SpinNetwork joined = merge_free_ends(net, a, b, c);
    const ExactScalar w =
        loop_value(c) * mirror_norm(joined, cache) / theta_value(la, lb, c, cache);
    if (w.is_zero()) continue;
    weights.emplace_back(c, w);
    total += w;
  }
  if (total.is_zero()) throw Error(ErrorCode::ZeroNorm, "every joined network has zero norm");
  OutcomeDistribution dist;
  for (const auto& [c, w] : weights) dist.entries.emplace(c, w / total);
  return dist;
}

OutcomeDistribution join_free_ends(const SpinNetwork& net, EndRef a, EndRef b) {
  return join_free_ends(net, a, b, default_cache());
}

SplitResult split_unit(const SpinNetwork& net, EndRef a, SpinLabel k) {
  require_free(net, a);
  const SpinLabel la = net.label(a);
  if (k > la) {
    throw Error(ErrorCode::InadmissibleSplit, "cannot split " + std::to_string(k.value()) + " off a unit of " +
                                                  std::to_string(la.value()));
  }
  std::vector<Edge> edges = net.edges();
  std::vector<Vertex> vertices = net.vertices();
  const std::string vid = fresh_id(net, "s");
  const std::string unit_id = fresh_id(net, "k");
  const std::string rest_id = fresh_id(net, "r");
  const std::size_t unit = edges.size();
  edges.push_back(Edge{unit_id, k});
  edges.push_back(Edge{rest_id, SpinLabel(la.value() - k.value())});
  vertices.push_back(Vertex{vid, {a, EndRef{unit, 0}, EndRef{unit + 1, 0}}});
  return SplitResult{SpinNetwork(std::move(edges), std::move(vertices)), EndRef{unit, 1}, EndRef{unit + 1, 1}};
}

double angle_from_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::OutOfRange, "probability outside [0, 1]: " + std::to_string(p));
  return 2.0 * std::acos(std::sqrt(p));
}

ExchangeResult exchange_experiment(const SpinNetwork& net, EndRef a, EndRef b, EvalCache& cache) {
  require_valid(net);
  require_free(net, a);
  require_free(net, b);
  if (a == b) throw Error(ErrorCode::NotAFreeEnd, "exchange needs two different ends");
  const SplitResult split = split_unit(net, a, SpinLabel(1));
  const OutcomeDistribution dist = join_free_ends(split.network, split.unit, b, cache);
  const int lb = net.label(b).value();
  ExchangeResult r;
  r.p_up = dist.probability(SpinLabel(lb + 1));
  r.p_down = lb > 0 ? dist.probability(SpinLabel(lb - 1)) : ExactScalar(0);
  r.theta = angle_from_probability(r.p_up.to_double());
  return r;
}

ExchangeResult exchange_experiment(const SpinNetwork& net, EndRef a, EndRef b) {
  return exchange_experiment(net, a, b, default_cache());
}

AngleMatrix angle_matrix(const SpinNetwork& net, const std::vector<EndRef>& ends, EvalCache& cache,
                         const AngleOptions& options) {
  if (ends.size() < 2) throw Error(ErrorCode::TooFewEnds, "an angle matrix needs at least two ends");
  for (std::size_t i = 0; i < ends.size(); ++i) {
    require_free(net, ends[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (ends[i] == ends[j]) throw Error(ErrorCode::MalformedArguments, "end listed twice: " + net.describe(ends[i]));
    }
  }
  require_valid(net);

  const auto n = static_cast<Eigen::Index>(ends.size());
  AngleMatrix am{ends, Eigen::MatrixXd::Zero(n, n)};
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  unsigned jobs = options.jobs != 0 ? options.jobs : std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(pairs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) {
      try {
        const auto [i, j] = pairs[k];
        const double theta = exchange_experiment(net, ends[static_cast<std::size_t>(i)],
                                                 ends[static_cast<std::size_t>(j)], cache)
                                 .theta;
        am.angles(i, j) = theta;
        am.angles(j, i) = theta;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = pairs.size();
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
  return am;
}

AngleMatrix angle_matrix(const SpinNetwork& net, const std::vector<EndRef>& ends) {
  return angle_matrix(net, ends, default_cache());
}

GeometryReport geometry_consistency(const AngleMatrix& am, double tol) {
  const Eigen::Index n = am.angles.rows();
  const Eigen::MatrixXd gram = am.angles.array().cos().matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  GeometryReport r;
  r.eigenvalues = solver.eigenvalues();
  // round-off floor, far below any meaningful tolerance
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<Eigen::Index>(n, 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(r.eigenvalues(i)) < noise) r.eigenvalues(i) = 0.0;
  }
  if (n == 0) {
    r.embeddable = true;
    return r;
  }
  const double lowest = r.eigenvalues(0);
  double beyond_three = 0.0;
  for (Eigen::Index i = 0; i + 3 < n; ++i) beyond_three += std::max(r.eigenvalues(i), 0.0);
  r.gram_residual = std::max(0.0, -lowest) + beyond_three;
  for (Eigen::Index i = 0; i < n; ++i) r.rank += r.eigenvalues(i) > tol ? 1 : 0;
  const double fourth = n > 3 ? r.eigenvalues(n - 4) : 0.0;
  r.embeddable = lowest >= -tol && fourth <= tol;
  if (!r.embeddable) return r;

  // top three eigenpairs give coordinates; rows are then normalized and
  // expressed in the frame spanned by the first independent rows
  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, 3);
  for (Eigen::Index c = 0; c < std::min<Eigen::Index>(3, n); ++c) {
    const Eigen::Index idx = n - 1 - c;
    coords.col(c) = solver.eigenvectors().col(idx) * std::sqrt(std::max(r.eigenvalues(idx), 0.0));
  }
  std::vector<Eigen::Vector3d> frame;
  for (Eigen::Index i = 0; i < n && frame.size() < 3; ++i) {
    Eigen::Vector3d v = coords.row(i).transpose();
    for (const auto& f : frame) v -= f.dot(v) * f;
    if (v.norm() > 1e-6) frame.push_back(v.normalized());
  }
  for (const Eigen::Vector3d& seed : {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()}) {
    if (frame.size() == 3) break;
    Eigen::Vector3d v = seed;
    for (const auto& f : frame) v -= f.dot(v) * f;
    if (v.norm() > 1e-6) frame.push_back(v.normalized());
  }
  Eigen::Matrix3d basis;
  for (int k = 0; k < 3; ++k) basis.row(k) = frame[static_cast<std::size_t>(k)].transpose();
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Vector3d v = basis * coords.row(i).transpose();
    if (v.norm() > 0) v.normalize();
    r.embedding.push_back(v);
  }
  return r;
}

StabilityReport stability_measure(const SpinNetwork& net, EndRef a, EndRef b, int repetitions, std::uint64_t seed,
                                  EvalCache& cache) {
  if (repetitions < 0) throw Error(ErrorCode::MalformedArguments, "repetitions must be non-negative");
  StabilityReport report;
  ExchangeResult ex = exchange_experiment(net, a, b, cache);
  report.initial_angle = ex.theta;
  std::mt19937_64 rng(seed);
  SpinNetwork current = net;
  EndRef end_a = a;
  EndRef end_b = b;
  for (int rep = 0; rep < repetitions; ++rep) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const int lb = current.label(end_b).value();
    const int outcome = u < ex.p_up.to_double() ? lb + 1 : lb - 1;

    const SplitResult split = split_unit(current, end_a, SpinLabel(1));
    current = merge_free_ends(split.network, split.unit, end_b, SpinLabel(outcome));
    end_a = split.remainder;
    end_b = last_edge_free_end(current);
    if (current.label(end_a).value() == 0) {
      throw Error(ErrorCode::ExhaustedEnd,
                  "end a exhausted: no unit left to measure the angle after repetition " + std::to_string(rep + 1));
    }
    ex = exchange_experiment(current, end_a, end_b, cache);
    const double theta = ex.theta;
    report.angles.push_back(theta);
    report.outcomes.push_back(outcome);
    report.max_drift = std::max(report.max_drift, std::abs(theta - report.initial_angle));
  }
  return report;
}

StabilityReport stability_measure(const SpinNetwork& net, EndRef a, EndRef b, int repetitions, std::uint64_t seed) {
  return stability_measure(net, a, b, repetitions, seed, default_cache());
}

}  // namespace spinnet
