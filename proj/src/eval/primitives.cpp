#include "spinnet/eval/primitives.hpp"

#include <algorithm>
#include <string>

#include "spinnet/core/error.hpp"

namespace spinnet {
namespace {

std::string triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

void require_admissible(int a, int b, int c) {
  if (!vertex_admissible(a, b, c)) {
    throw Error(ErrorCode::InadmissibleTriple, triple(a, b, c) + " is not admissible");
  }
}

ExactScalar theta_formula(int a, int b, int c) {
  const int i = (a + b - c) / 2;
  const int j = (a + c - b) / 2;
  const int k = (b + c - a) / 2;
  mpz_class num = factorial(i + j + k + 1) * factorial(i) * factorial(j) * factorial(k);
  const mpz_class den = factorial(i + j) * factorial(j + k) * factorial(i + k);
  if ((i + j + k) % 2 != 0) num = -num;
  return ExactScalar(num, den);
}

// Closed form for the planar tetrahedron with quantum integers at q = 1:
// vertex half-sums v_i, opposite-pair half-sums w_j, alternating sum over s.
ExactScalar tet_formula(const EvalCache::Labels& l) {
  const auto [a, b, c, d, e, f] = l;
  const std::array<int, 4> v{(a + b + c) / 2, (a + e + f) / 2, (d + b + f) / 2, (d + e + c) / 2};
  const std::array<int, 3> w{(a + d + b + e) / 2, (a + d + c + f) / 2, (b + e + c + f) / 2};

  mpz_class prefactor_num = 1;
  for (int wj : w) {
    for (int vi : v) prefactor_num *= factorial(wj - vi);
  }
  mpz_class prefactor_den = 1;
  for (int x : l) prefactor_den *= factorial(x);

  const int lo = *std::max_element(v.begin(), v.end());
  const int hi = *std::min_element(w.begin(), w.end());
  mpq_class sum = 0;
  for (int s = lo; s <= hi; ++s) {
    mpz_class den = 1;
    for (int vi : v) den *= factorial(s - vi);
    for (int wj : w) den *= factorial(wj - s);
    mpq_class term(factorial(s + 1), den);
    term.canonicalize();
    if (s % 2 != 0) sum -= term;
    else sum += term;
  }
  mpq_class pre(prefactor_num, prefactor_den);
  pre.canonicalize();
  return ExactScalar(mpq_class(pre * sum));
}

// Symmetries of the tetrahedron as permutations of the edge positions
// (a, b, c, d, e, f) = (PQ, PR, PS, RS, QS, QR).
const std::vector<std::array<int, 6>>& tet_symmetries() {
  static const std::vector<std::array<int, 6>> perms = [] {
    // edge index for an unordered vertex pair, vertices P=0 Q=1 R=2 S=3
    auto edge_of = [](int x, int y) {
      if (x > y) std::swap(x, y);
      if (x == 0 && y == 1) return 0;
      if (x == 0 && y == 2) return 1;
      if (x == 0 && y == 3) return 2;
      if (x == 2 && y == 3) return 3;
      if (x == 1 && y == 3) return 4;
      return 5;  // (1, 2)
    };
    const std::array<std::pair<int, int>, 6> ends{{{0, 1}, {0, 2}, {0, 3}, {2, 3}, {1, 3}, {1, 2}}};
    std::vector<std::array<int, 6>> out;
    std::array<int, 4> pi{0, 1, 2, 3};
    do {
      std::array<int, 6> p{};
      for (int k = 0; k < 6; ++k) p[static_cast<std::size_t>(k)] = edge_of(pi[ends[k].first], pi[ends[k].second]);
      out.push_back(p);
    } while (std::next_permutation(pi.begin(), pi.end()));
    return out;
  }();
  return perms;
}

}  // namespace

int reorientation_sign(int a, int b, int c) noexcept {
  const int i = (a + b - c) / 2;
  const int j = (a + c - b) / 2;
  const int k = (b + c - a) / 2;
  return ((i * j + j * k + k * i) % 2 == 0) ? 1 : -1;
}

EvalCache::Labels canonical_tet_key(const EvalCache::Labels& labels) {
  EvalCache::Labels best = labels;
  for (const auto& p : tet_symmetries()) {
    EvalCache::Labels cand{};
    for (std::size_t k = 0; k < 6; ++k) cand[k] = labels[static_cast<std::size_t>(p[k])];
    best = std::min(best, cand);
  }
  return best;
}

ExactScalar loop_value(SpinLabel n) {
  const int v = n.value();
  return ExactScalar(v % 2 == 0 ? v + 1 : -(v + 1));
}

ExactScalar theta_value(SpinLabel a, SpinLabel b, SpinLabel c, EvalCache& cache) {
  require_admissible(a.value(), b.value(), c.value());
  std::array<int, 3> t{a.value(), b.value(), c.value()};
  std::sort(t.begin(), t.end());
  const EvalCache::Key key{EvalCache::Kind::Theta, {t[0], t[1], t[2], 0, 0, 0}};
  if (auto hit = cache.find(key)) return *hit;
  ExactScalar value = theta_formula(t[0], t[1], t[2]);
  cache.insert(key, value);
  return value;
}

ExactScalar theta_value(SpinLabel a, SpinLabel b, SpinLabel c) {
  return theta_value(a, b, c, default_cache());
}

ExactScalar tet_value(SpinLabel a, SpinLabel b, SpinLabel c, SpinLabel d, SpinLabel e, SpinLabel f,
                      EvalCache& cache) {
  require_admissible(a.value(), b.value(), c.value());
  require_admissible(a.value(), e.value(), f.value());
  require_admissible(d.value(), b.value(), f.value());
  require_admissible(d.value(), e.value(), c.value());
  const EvalCache::Labels raw{a.value(), b.value(), c.value(), d.value(), e.value(), f.value()};
  const EvalCache::Key key{EvalCache::Kind::Tet, canonical_tet_key(raw)};
  if (auto hit = cache.find(key)) return *hit;
  ExactScalar value = tet_formula(key.labels);
  cache.insert(key, value);
  return value;
}

ExactScalar tet_value(SpinLabel a, SpinLabel b, SpinLabel c, SpinLabel d, SpinLabel e, SpinLabel f) {
  return tet_value(a, b, c, d, e, f, default_cache());
}

}  // namespace spinnet
