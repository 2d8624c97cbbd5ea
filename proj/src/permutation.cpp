#include "ocw/permutation.hpp"

#include "ocw/errors.hpp"

namespace ocw {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) throw InputError("image array is not a permutation of 0.." +
                                                        std::to_string(images_.size() - 1));
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  Permutation p;
  p.images_.resize(degree);
  for (Point i = 0; i < degree; ++i) p.images_[i] = i;
  return p;
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> images(degree);
  for (Point i = 0; i < degree; ++i) images[i] = i;
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree) throw InputError("cycle point out of range");
      images[c[i]] = c[(i + 1) % c.size()];
    }
  return Permutation(std::move(images));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.degree() != degree())
    throw InputError("cannot multiply permutations of degree " + std::to_string(degree()) + " and " +
                     std::to_string(rhs.degree()));
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = rhs.images_[images_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (Point i = 0; i < images_.size(); ++i) out.images_[images_[i]] = i;
  return out;
}

Permutation Permutation::pow(std::int64_t k) const {
  Permutation base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Permutation result = identity(degree());
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool Permutation::is_identity() const {
  for (Point i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::string out;
  std::vector<bool> done(images_.size(), false);
  for (Point i = 0; i < images_.size(); ++i) {
    if (done[i] || images_[i] == i) continue;
    out += '(';
    for (Point j = i; !done[j]; j = images_[j]) {
      if (j != i) out += ' ';
      out += std::to_string(j);
      done[j] = true;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  return a.inverse() * b.inverse() * a * b;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Permutation::Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ocw
