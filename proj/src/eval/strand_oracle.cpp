#include "spinnet/eval/strand_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "spinnet/core/error.hpp"

namespace spinnet {
namespace {

struct Perm {
  std::vector<int> image;
  int sign;
};

std::vector<Perm> all_permutations(int n) {
  std::vector<Perm> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j] ? 1 : 0;
    }
    out.push_back(Perm{p, inversions % 2 == 0 ? 1 : -1});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int cycles_of(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  int cycles = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = 1;
  }
  return cycles;
}

__int128 power_of_minus_two(int k) {
  __int128 v = 1;
  for (int i = 0; i < k; ++i) v *= -2;
  return v;
}

mpz_class to_mpz(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class out = 0;
  mpz_class base = 1;
  while (u != 0) {
    out += base * static_cast<unsigned long>(u & 0xffffffffU);
    base <<= 32;
    u >>= 32;
  }
  return neg ? mpz_class(-out) : out;
}

class StrandSum {
 public:
  explicit StrandSum(const SpinNetwork& net) {
    const auto& vs = net.vertices();
    offset_.resize(vs.size());
    int next = 0;
    for (std::size_t v = 0; v < vs.size(); ++v) {
      for (int s = 0; s < 3; ++s) {
        offset_[v][static_cast<std::size_t>(s)] = next;
        next += net.slot_label(v, s).value();
      }
    }
    vertex_partner_.assign(static_cast<std::size_t>(next), -1);
    edge_partner_.assign(static_cast<std::size_t>(next), -1);

    // Within a vertex, adjacent slots s, t share (n_s + n_t - n_u) / 2 strands,
    // leaving from the top of s into the bottom of t.
    for (std::size_t v = 0; v < vs.size(); ++v) {
      const std::array<int, 3> n{net.slot_label(v, 0).value(), net.slot_label(v, 1).value(),
                                 net.slot_label(v, 2).value()};
      for (int s = 0; s < 3; ++s) {
        const int t = (s + 1) % 3;
        const int u = (s + 2) % 3;
        const int shared = (n[s] + n[t] - n[u]) / 2;
        for (int q = 0; q < shared; ++q) {
          const int a = node(v, s, n[s] - 1 - q);
          const int b = node(v, t, q);
          vertex_partner_[a] = b;
          vertex_partner_[b] = a;
        }
      }
    }

    for (std::size_t e = 0; e < net.edges().size(); ++e) {
      const auto at0 = net.attachment(EndRef{e, 0});
      const auto at1 = net.attachment(EndRef{e, 1});
      const int n = net.edges()[e].label.value();
      if (n == 0) continue;
      EdgeRun run{node(at0->vertex, at0->slot, 0), node(at1->vertex, at1->slot, 0), n};
      if (!perm_cache_.count(n)) perm_cache_[n] = all_permutations(n);
      runs_.push_back(run);
      denominator_ *= factorial(n);
    }
  }

  ExactScalar value() {
    sum_ = 0;
    recurse(0, 1);
    return ExactScalar(to_mpz(sum_), denominator_);
  }

 private:
  struct EdgeRun {
    int base0;
    int base1;
    int n;
  };

  int node(std::size_t v, int s, int p) const { return offset_[v][static_cast<std::size_t>(s)] + p; }

  void recurse(std::size_t k, int sign) {
    if (k == runs_.size()) {
      sum_ += sign * power_of_minus_two(count_loops());
      return;
    }
    const EdgeRun& run = runs_[k];
    for (const Perm& p : perm_cache_.at(run.n)) {
      for (int q = 0; q < run.n; ++q) {
        const int a = run.base0 + q;
        const int b = run.base1 + run.n - 1 - p.image[static_cast<std::size_t>(q)];
        edge_partner_[a] = b;
        edge_partner_[b] = a;
      }
      recurse(k + 1, sign * p.sign);
    }
  }

  int count_loops() {
    seen_.assign(edge_partner_.size(), 0);
    int loops = 0;
    for (std::size_t x = 0; x < seen_.size(); ++x) {
      if (seen_[x]) continue;
      ++loops;
      int y = static_cast<int>(x);
      do {
        seen_[y] = 1;
        const int z = vertex_partner_[y];
        seen_[z] = 1;
        y = edge_partner_[z];
      } while (y != static_cast<int>(x));
    }
    return loops;
  }

  std::vector<std::array<int, 3>> offset_;
  std::vector<int> vertex_partner_;
  std::vector<int> edge_partner_;
  std::vector<char> seen_;
  std::vector<EdgeRun> runs_;
  std::map<int, std::vector<Perm>> perm_cache_;
  mpz_class denominator_ = 1;
  __int128 sum_ = 0;
};

}  // namespace

ExactScalar strand_expansion_oracle(const SpinNetwork& net, const StrandOracleOptions& options) {
  const auto violations = validate_network(net);
  if (!violations.empty()) throw Error(ErrorCode::InvalidNetwork, violations.front().message);
  if (!net.is_closed()) throw Error(ErrorCode::HasFreeEnds, "strand oracle needs a closed network");
  int strands = 0;
  for (const Edge& e : net.edges()) strands += e.label.value();
  if (strands > options.max_strands) {
    throw Error(ErrorCode::TooLarge, std::to_string(strands) + " strands exceed the limit of " +
                                         std::to_string(options.max_strands));
  }
  StrandSum sum(net);
  return sum.value();
}

ExactScalar strand_loop_oracle(SpinLabel n) {
  __int128 total = 0;
  for (const Perm& p : all_permutations(n.value())) {
    total += p.sign * power_of_minus_two(cycles_of(p.image));
  }
  return ExactScalar(to_mpz(total), factorial(n.value()));
}

}  // namespace spinnet
