#include "spinnet/hilbert/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "spinnet/core/error.hpp"
#include "spinnet/core/exact_scalar.hpp"

namespace spinnet {
namespace {

template <class Key, class Value>
class Memo {
 public:
  template <class F>
  Value get(const Key& key, F&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    Value v = compute();
    std::unique_lock lock(mutex_);
    table_.emplace(key, v);
    return v;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, Value> table_;
};

const mpz_class& fact(int n) { return factorial(n); }

int k_index(HalfInteger j, HalfInteger m) {
  if (j.twice() < 0) throw Error(ErrorCode::MalformedArguments, "negative angular momentum " + to_string(j));
  if ((j.twice() + m.twice()) % 2 != 0) {
    throw Error(ErrorCode::MalformedArguments, "j - m not integral for j=" + to_string(j) + " m=" + to_string(m));
  }
  return (j.twice() + m.twice()) / 2;
}

SqrtRational from_parts(const mpq_class& square_part, const mpq_class& rational) {
  SqrtRational out;
  out.sign = sgn(rational);
  if (out.sign == 0) return out;
  out.square = square_part * rational * rational;
  out.square.canonicalize();
  return out;
}

mpq_class weight(int n, int k) { return mpq_class(fact(k) * fact(n - k)); }

}  // namespace

HalfInteger::HalfInteger(double x) {
  const double t = 2.0 * x;
  if (!std::isfinite(t) || std::abs(t - std::round(t)) > 1e-9 || std::abs(t) > 1e6) {
    throw Error(ErrorCode::MalformedArguments, "not a half-integer: " + std::to_string(x));
  }
  twice_ = static_cast<int>(std::lround(t));
}

std::string to_string(HalfInteger h) {
  if (h.is_integer()) return std::to_string(h.twice() / 2);
  return std::to_string(h.twice()) + "/2";
}

double SqrtRational::to_double() const { return sign * std::sqrt(square.get_d()); }

bool triad(HalfInteger a, HalfInteger b, HalfInteger c) noexcept {
  const int x = a.twice();
  const int y = b.twice();
  const int z = c.twice();
  if (x < 0 || y < 0 || z < 0) return false;
  return std::abs(x - y) <= z && z <= x + y && (x + y + z) % 2 == 0;
}

mpq_class triangle_coefficient(int a, int b, int c) {
  mpq_class q(fact((a + b - c) / 2) * fact((a - b + c) / 2) * fact((b + c - a) / 2), fact((a + b + c) / 2 + 1));
  q.canonicalize();
  return q;
}

mpq_class three_j_rational(int a, int b, int c, int ka, int kb, int kc) {
  if (!triad(HalfInteger::from_twice(a), HalfInteger::from_twice(b), HalfInteger::from_twice(c))) return 0;
  if (ka < 0 || ka > a || kb < 0 || kb > b || kc < 0 || kc > c) return 0;
  if ((2 * ka - a) + (2 * kb - b) + (2 * kc - c) != 0) return 0;
  static Memo<std::array<int, 6>, mpq_class> memo;
  return memo.get({a, b, c, ka, kb, kc}, [&] {
    const int x1 = (c - b - a) / 2 + ka;  // j3 - j2 + m1
    const int x2 = (c - a + b) / 2 - kb;  // j3 - j1 - m2
    const int y1 = (a + b - c) / 2;       // j1 + j2 - j3
    const int y2 = a - ka;                // j1 - m1
    const int y3 = kb;                    // j2 + m2
    const int lo = std::max({0, -x1, -x2});
    const int hi = std::min({y1, y2, y3});
    mpq_class sum = 0;
    for (int t = lo; t <= hi; ++t) {
      mpq_class term(1, fact(t) * fact(x1 + t) * fact(x2 + t) * fact(y1 - t) * fact(y2 - t) * fact(y3 - t));
      term.canonicalize();
      if (t % 2 != 0) sum -= term;
      else sum += term;
    }
    const int phase = (a - b + c) / 2 - kc;
    if (phase % 2 != 0) sum = -sum;
    return sum;
  });
}

SqrtRational wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2,
                       HalfInteger m3) {
  const int k1 = k_index(j1, m1);
  const int k2 = k_index(j2, m2);
  const int k3 = k_index(j3, m3);
  const int a = j1.twice();
  const int b = j2.twice();
  const int c = j3.twice();
  const mpq_class r = three_j_rational(a, b, c, k1, k2, k3);
  if (sgn(r) == 0) return {};
  return from_parts(triangle_coefficient(a, b, c) * weight(a, k1) * weight(b, k2) * weight(c, k3), r);
}

SqrtRational clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J,
                            HalfInteger M) {
  const HalfInteger minus_m = HalfInteger::from_twice(-M.twice());
  // validate every (j, m) pair before applying selection rules
  (void)k_index(j1, m1);
  (void)k_index(j2, m2);
  (void)k_index(J, M);
  if (m1.twice() + m2.twice() != M.twice()) return {};
  if (std::abs(m1.twice()) > j1.twice() || std::abs(m2.twice()) > j2.twice() || std::abs(M.twice()) > J.twice()) {
    return {};
  }
  SqrtRational v = wigner_3j(j1, j2, J, m1, m2, minus_m);
  if (v.is_zero()) return v;
  v.square *= J.twice() + 1;
  const int phase = (j1.twice() - j2.twice() + M.twice()) / 2;
  if (phase % 2 != 0) v.sign = -v.sign;
  return v;
}

SqrtRational wigner_6j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4, HalfInteger j5,
                       HalfInteger j6) {
  for (HalfInteger j : {j1, j2, j3, j4, j5, j6}) {
    if (j.twice() < 0) throw Error(ErrorCode::MalformedArguments, "negative angular momentum " + to_string(j));
  }
  if (!triad(j1, j2, j3) || !triad(j1, j5, j6) || !triad(j4, j2, j6) || !triad(j4, j5, j3)) return {};
  static Memo<std::array<int, 6>, SqrtRational> memo;
  const std::array<int, 6> t{j1.twice(), j2.twice(), j3.twice(), j4.twice(), j5.twice(), j6.twice()};
  return memo.get(t, [&] {
    const auto [a, b, c, d, e, f] = t;
    const std::array<int, 4> v{(a + b + c) / 2, (a + e + f) / 2, (d + b + f) / 2, (d + e + c) / 2};
    const std::array<int, 3> w{(a + b + d + e) / 2, (b + c + e + f) / 2, (c + a + f + d) / 2};
    const int lo = *std::max_element(v.begin(), v.end());
    const int hi = *std::min_element(w.begin(), w.end());
    mpq_class sum = 0;
    for (int s = lo; s <= hi; ++s) {
      mpz_class den = 1;
      for (int x : v) den *= fact(s - x);
      for (int x : w) den *= fact(x - s);
      mpq_class term(fact(s + 1), den);
      term.canonicalize();
      if (s % 2 != 0) sum -= term;
      else sum += term;
    }
    const mpq_class tri =
        triangle_coefficient(a, b, c) * triangle_coefficient(a, e, f) * triangle_coefficient(d, b, f) *
        triangle_coefficient(d, e, c);
    return from_parts(tri, sum);
  });
}

double wigner_6j_by_cg_sum(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4, HalfInteger j5,
                           HalfInteger j6) {
  if (!triad(j1, j2, j3) || !triad(j1, j5, j6) || !triad(j4, j2, j6) || !triad(j4, j5, j3)) return 0.0;
  // <(j1 j2) j3, j4; j5 | j1, (j2 j4) j6; j5> at M = j5
  const HalfInteger M = j5;
  double overlap = 0.0;
  for (int tm1 = -j1.twice(); tm1 <= j1.twice(); tm1 += 2) {
    for (int tm2 = -j2.twice(); tm2 <= j2.twice(); tm2 += 2) {
      const int tm4 = M.twice() - tm1 - tm2;
      if (std::abs(tm4) > j4.twice() || (j4.twice() + tm4) % 2 != 0) continue;
      const auto m1 = HalfInteger::from_twice(tm1);
      const auto m2 = HalfInteger::from_twice(tm2);
      const auto m4 = HalfInteger::from_twice(tm4);
      const auto m12 = HalfInteger::from_twice(tm1 + tm2);
      const auto m24 = HalfInteger::from_twice(tm2 + tm4);
      if (std::abs(m12.twice()) > j3.twice() || std::abs(m24.twice()) > j6.twice()) continue;
      overlap += clebsch_gordan(j1, m1, j2, m2, j3, m12).to_double() *
                 clebsch_gordan(j3, m12, j4, m4, j5, M).to_double() *
                 clebsch_gordan(j2, m2, j4, m4, j6, m24).to_double() *
                 clebsch_gordan(j1, m1, j6, m24, j5, M).to_double();
    }
  }
  const int phase = (j1.twice() + j2.twice() + j4.twice() + j5.twice()) / 2;
  const double norm = std::sqrt(static_cast<double>((j3.twice() + 1) * (j6.twice() + 1)));
  return (phase % 2 != 0 ? -overlap : overlap) / norm;
}

}  // namespace spinnet
