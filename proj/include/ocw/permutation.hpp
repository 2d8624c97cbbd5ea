#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ocw {

/// Bijection of {0, ..., n-1} stored as its image array. Products are read
/// left to right: (p * q)(i) = q(p(i)), so groups act on the right.
class Permutation {
 public:
  using Point = std::uint32_t;

  Permutation() = default;
  /// Throws InputError unless `images` is a bijection of {0..n-1}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  /// Product of disjoint cycles, e.g. from_cycles(4, {{0, 1}, {2, 3}}).
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation pow(std::int64_t k) const;
  bool is_identity() const;

  /// Cycle notation, "()" for the identity.
  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

/// [a,b] = a^-1 b^-1 a b
Permutation commutator(const Permutation& a, const Permutation& b);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace ocw
