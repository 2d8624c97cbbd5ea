#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ocw {

/// Variables come from two alphabets: the X-variables of the word itself and
/// the auxiliary Y-variables introduced when building extended words.
enum class Alphabet : std::uint8_t { X, Y };

struct Variable {
  Alphabet alphabet = Alphabet::X;
  std::uint32_t index = 1;  // >= 1

  static Variable x(std::uint32_t k) { return {Alphabet::X, k}; }
  static Variable y(std::uint32_t k) { return {Alphabet::Y, k}; }

  bool is_x() const { return alphabet == Alphabet::X; }
  std::string name() const;

  auto operator<=>(const Variable&) const = default;
};

struct Letter {
  Variable var;
  std::int64_t exponent = 1;  // never zero once inside a GroupWord

  bool operator==(const Letter&) const = default;
};

/// Element of a free group, kept freely reduced: no zero exponents and no two
/// adjacent letters on the same variable.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters);

  static GroupWord of(Variable v, std::int64_t exponent = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& rhs) const;

  /// Distinct variables in order of first appearance.
  std::vector<Variable> variables() const;

  /// Applies `rename` to every letter and reduces again.
  GroupWord renamed(const std::function<Variable(Variable)>& rename) const;

  std::string render() const;

  bool operator==(const GroupWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

std::int64_t exponent_sum(const GroupWord& u, Variable v);

/// True iff the word lies outside the derived subgroup of the free group,
/// i.e. some variable has non-zero exponent sum.
bool is_non_commutator(const GroupWord& u);

/// [a,b] = a^-1 b^-1 a b
GroupWord commutator(const GroupWord& a, const GroupWord& b);

/// A commutator tree over pairwise distinct variables from either alphabet.
/// Immutable; subtrees are shared.
class ExtendedWord {
 public:
  static ExtendedWord leaf(Variable v);
  /// Throws InputError if the two sides share a variable.
  static ExtendedWord commutator(const ExtendedWord& left, const ExtendedWord& right);

  bool is_leaf() const;
  Variable variable() const;  // requires is_leaf()
  ExtendedWord left() const;  // requires !is_leaf()
  ExtendedWord right() const;

  /// Leaves in left-to-right order.
  const std::vector<Variable>& leaves() const;
  std::size_t leaf_count() const { return leaves().size(); }
  unsigned height() const;
  bool has_y() const;

  ExtendedWord renamed(const std::function<Variable(Variable)>& rename) const;
  GroupWord expand() const;
  std::string render() const;

  bool operator==(const ExtendedWord& other) const;

 private:
  struct Node;
  explicit ExtendedWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// An outer commutator word: an ExtendedWord whose leaves are all X-variables.
class OuterWord {
 public:
  /// Throws InputError if `word` has a Y-leaf.
  explicit OuterWord(ExtendedWord word);

  static OuterWord leaf(Variable v) { return OuterWord(ExtendedWord::leaf(v)); }
  static OuterWord commutator(const OuterWord& left, const OuterWord& right) {
    return OuterWord(ExtendedWord::commutator(left.word_, right.word_));
  }

  bool is_leaf() const { return word_.is_leaf(); }
  Variable variable() const { return word_.variable(); }
  OuterWord left() const { return OuterWord(word_.left()); }
  OuterWord right() const { return OuterWord(word_.right()); }

  const std::vector<Variable>& leaves() const { return word_.leaves(); }
  std::size_t leaf_count() const { return word_.leaf_count(); }
  unsigned height() const { return word_.height(); }

  /// Same tree with leaves renamed x1..xr in left-to-right order.
  OuterWord standardized() const;

  const ExtendedWord& extended() const { return word_; }
  std::string render() const { return word_.render(); }

  bool operator==(const OuterWord&) const = default;

 private:
  ExtendedWord word_;
};

OuterWord parse_outer(std::string_view text);
ExtendedWord parse_extended(std::string_view text);
GroupWord parse_group_word(std::string_view text);

inline unsigned height(const OuterWord& w) { return w.height(); }

/// Number of maximal subtrees all of whose leaves are Y-variables.
unsigned degree(const ExtendedWord& v);

/// Substitutes us[i] for the i-th leaf of w (left to right) and expands the
/// commutators. The u_i are first renamed onto pairwise disjoint X-variables:
/// u_1 takes x1.., u_2 continues after the last index used by u_1, and so on,
/// each in order of first appearance.
GroupWord compose(const OuterWord& w, std::span<const GroupWord> us);

/// Common words: gamma_k = [x1,...,xk] left-normed, delta_k the derived words.
OuterWord lower_central_word(unsigned k);
OuterWord derived_word(unsigned k);

}  // namespace ocw
