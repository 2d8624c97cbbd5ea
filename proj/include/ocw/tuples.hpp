#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ocw/errors.hpp"

namespace ocw {

/// Product of `sizes`, saturating at SIZE_MAX.
inline std::size_t tuple_count(std::span<const std::size_t> sizes) {
  std::size_t total = 1;
  for (std::size_t s : sizes) {
    if (s == 0) return 0;
    if (total > std::numeric_limits<std::size_t>::max() / s) return std::numeric_limits<std::size_t>::max();
    total *= s;
  }
  return total;
}

/// Calls f(indices) for every index tuple in [0,sizes[0]) x ... x [0,sizes[k-1]),
/// last coordinate fastest. Throws CapExceeded before starting if the product
/// is larger than `cap`. f may return false to stop early.
template <class F>
void for_each_tuple(std::span<const std::size_t> sizes, std::size_t cap, F&& f) {
  const std::size_t total = tuple_count(sizes);
  if (total > cap) throw CapExceeded("tuple enumeration", total);
  if (total == 0) return;
  std::vector<std::size_t> idx(sizes.size(), 0);
  while (true) {
    if (!f(std::span<const std::size_t>(idx))) return;
    std::size_t k = sizes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (sizes.empty()) return;
  }
}

/// Deterministic sampler: std::mt19937_64 seeded directly, indices taken as
/// `engine() % n`. Both are fully specified by the standard, so sampled
/// reports are reproducible across platforms.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ocw
