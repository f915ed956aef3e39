#include "spinnet/core/exact_scalar.hpp"

#include <deque>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>

namespace spinnet {

ExactScalar::ExactScalar(const mpz_class& numerator, const mpz_class& denominator)
    : q_(numerator, denominator) {
  if (sgn(denominator) == 0) throw std::domain_error("ExactScalar: zero denominator");
  q_.canonicalize();
}

ExactScalar::ExactScalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

ExactScalar ExactScalar::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
  return ExactScalar(std::move(q));
}

std::string ExactScalar::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  q_ += o.q_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  q_ -= o.q_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  q_ *= o.q_;
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_zero()) throw std::domain_error("ExactScalar: division by zero");
  q_ /= o.q_;
  return *this;
}

ExactScalar abs(const ExactScalar& x) { return ExactScalar(mpq_class(::abs(x.value()))); }

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }

const mpz_class& factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative number");
  static std::deque<mpz_class> table{mpz_class(1)};
  static std::shared_mutex mutex;
  {
    std::shared_lock lock(mutex);
    if (static_cast<std::size_t>(n) < table.size()) return table[static_cast<std::size_t>(n)];
  }
  std::unique_lock lock(mutex);
  while (table.size() <= static_cast<std::size_t>(n)) {
    table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  }
  return table[static_cast<std::size_t>(n)];
}

}  // namespace spinnet
