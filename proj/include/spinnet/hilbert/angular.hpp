#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>

namespace spinnet {

/// Integer or half-odd-integer, stored as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  /// Throws Error(MalformedArguments) unless 2x is an integer.
  explicit HalfInteger(double x);
  static constexpr HalfInteger from_twice(int twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }

  [[nodiscard]] constexpr int twice() const noexcept { return twice_; }
  [[nodiscard]] constexpr double value() const noexcept { return twice_ / 2.0; }
  [[nodiscard]] constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

 private:
  int twice_ = 0;
};

[[nodiscard]] std::string to_string(HalfInteger h);

/// sign * sqrt(square) with square a non-negative rational.
struct SqrtRational {
  int sign = 0;  // -1, 0, +1
  mpq_class square = 0;

  [[nodiscard]] double to_double() const;
  [[nodiscard]] bool is_zero() const noexcept { return sign == 0; }
  /// sign * square, the exactly representable signed square of the value.
  [[nodiscard]] mpq_class signed_square() const { return sign < 0 ? mpq_class(-square) : square; }

  friend bool operator==(const SqrtRational& a, const SqrtRational& b) {
    return a.sign == b.sign && (a.sign == 0 || a.square == b.square);
  }
};

/// <j1 m1; j2 m2 | J M> with Condon-Shortley phases; 0 when the selection
/// rules fail. Throws MalformedArguments for negative j or when some j - m
/// is not an integer.
[[nodiscard]] SqrtRational clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2,
                                          HalfInteger J, HalfInteger M);

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3).
[[nodiscard]] SqrtRational wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1,
                                     HalfInteger m2, HalfInteger m3);

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} by the Racah sum; 0 when a triad
/// fails the triangle or parity rule.
[[nodiscard]] SqrtRational wigner_6j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4,
                                     HalfInteger j5, HalfInteger j6);

/// Same symbol by explicit contraction of four Clebsch-Gordan coefficients,
/// in floating point. Independent cross-check of wigner_6j.
[[nodiscard]] double wigner_6j_by_cg_sum(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4,
                                         HalfInteger j5, HalfInteger j6);

/// Triangle inequality plus integral perimeter.
[[nodiscard]] bool triad(HalfInteger a, HalfInteger b, HalfInteger c) noexcept;

// Label-unit helpers used by the tensor contraction: labels are 2j and
// k = j + m runs over 0..label.

/// Triangle coefficient (j1+j2-j3)!(j1-j2+j3)!(-j1+j2+j3)!/(j1+j2+j3+1)! for
/// labels a = 2 j1, b = 2 j2, c = 2 j3.
[[nodiscard]] mpq_class triangle_coefficient(int a, int b, int c);

/// Rational part R of the 3j symbol in
///   (a b c; ka kb kc) = sqrt(triangle) * sqrt(prod k!(n-k)!) * R,
/// with zero unless the magnetic numbers sum to zero.
[[nodiscard]] mpq_class three_j_rational(int a, int b, int c, int ka, int kb, int kc);

}  // namespace spinnet
