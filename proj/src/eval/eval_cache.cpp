#include "spinnet/eval/eval_cache.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

namespace spinnet {

std::size_t EvalCache::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.kind) + 0x9e3779b97f4a7c15ULL;
  for (int x : k.labels) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

EvalCache::EvalCache(std::size_t capacity) : capacity_(capacity) {}

std::size_t EvalCache::default_capacity() {
  if (const char* env = std::getenv("SPINNET_CACHE_SIZE")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

std::optional<ExactScalar> EvalCache::find(const Key& key) const {
  std::shared_lock lock(mutex_);
  const auto it = table_.find(key);
  if (it == table_.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return std::nullopt;
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  return it->second;
}

void EvalCache::insert(const Key& key, const ExactScalar& value) {
  std::unique_lock lock(mutex_);
  if (table_.size() >= capacity_ && table_.find(key) == table_.end()) return;
  table_.insert_or_assign(key, value);
}

void EvalCache::clear() {
  std::unique_lock lock(mutex_);
  table_.clear();
  hits_ = 0;
  misses_ = 0;
}

EvalCache::Stats EvalCache::stats() const {
  std::shared_lock lock(mutex_);
  return Stats{hits_.load(), misses_.load(), table_.size()};
}

EvalCache& default_cache() {
  static EvalCache cache;
  return cache;
}

}  // namespace spinnet
