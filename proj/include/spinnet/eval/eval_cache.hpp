#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "spinnet/core/exact_scalar.hpp"

namespace spinnet {

/// Memo table for the closed primitives (loop, theta, tetrahedron), keyed by
/// canonical label tuples. Lookups and inserts may race freely: values are
/// idempotent, so the last writer wins without changing any result.
class EvalCache {
 public:
  enum class Kind : std::uint8_t { Loop, Theta, Tet };
  using Labels = std::array<int, 6>;

  struct Key {
    Kind kind;
    Labels labels;
    friend bool operator==(const Key&, const Key&) = default;
  };

  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::size_t entries = 0;
  };

  /// Capacity is the maximum number of stored entries; once full, new values
  /// are computed but not stored.
  explicit EvalCache(std::size_t capacity = default_capacity());

  EvalCache(const EvalCache&) = delete;
  EvalCache& operator=(const EvalCache&) = delete;

  [[nodiscard]] std::optional<ExactScalar> find(const Key& key) const;
  void insert(const Key& key, const ExactScalar& value);
  void clear();

  [[nodiscard]] Stats stats() const;
  [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }

  /// SPINNET_CACHE_SIZE when set to a positive integer, else 1'000'000.
  static std::size_t default_capacity();

 private:
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, ExactScalar, KeyHash> table_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

/// Process-wide cache used by the overloads that take no explicit cache.
EvalCache& default_cache();

}  // namespace spinnet
