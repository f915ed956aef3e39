#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace spinnet {

/// Arbitrary-precision rational in lowest terms with positive denominator.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  ExactScalar(const mpz_class& numerator, const mpz_class& denominator);
  explicit ExactScalar(mpq_class q);

  /// Parses "p/q" or "p".
  static ExactScalar parse(const std::string& text);

  [[nodiscard]] const mpq_class& value() const noexcept { return q_; }
  [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }
  [[nodiscard]] int sign() const noexcept { return sgn(q_); }
  [[nodiscard]] bool is_zero() const noexcept { return sgn(q_) == 0; }
  [[nodiscard]] double to_double() const { return q_.get_d(); }

  /// Always "p/q", including "0/1" and "3/1".
  [[nodiscard]] std::string str() const;

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend ExactScalar operator-(const ExactScalar& a) { return ExactScalar(mpq_class(-a.q_)); }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

[[nodiscard]] ExactScalar abs(const ExactScalar& x);
std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

/// n! as an exact integer; thread-safe, memoized.
[[nodiscard]] const mpz_class& factorial(int n);

}  // namespace spinnet
