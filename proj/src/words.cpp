#include "ocw/words.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>

#include "ocw/errors.hpp"

namespace ocw {

std::string Variable::name() const {
  return (is_x() ? "x" : "y") + std::to_string(index);
}

// ---------------------------------------------------------------- GroupWord

GroupWord::GroupWord(std::vector<Letter> letters) {
  // stack-based free reduction
  for (const Letter& l : letters) {
    if (l.exponent == 0) continue;
    if (!letters_.empty() && letters_.back().var == l.var) {
      letters_.back().exponent += l.exponent;
      if (letters_.back().exponent == 0) letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

GroupWord GroupWord::of(Variable v, std::int64_t exponent) {
  return GroupWord({Letter{v, exponent}});
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l.exponent = -l.exponent;
  return GroupWord(std::move(out));
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return GroupWord(std::move(out));
}

std::vector<Variable> GroupWord::variables() const {
  std::vector<Variable> out;
  for (const Letter& l : letters_)
    if (std::find(out.begin(), out.end(), l.var) == out.end()) out.push_back(l.var);
  return out;
}

GroupWord GroupWord::renamed(const std::function<Variable(Variable)>& rename) const {
  std::vector<Letter> out = letters_;
  for (Letter& l : out) l.var = rename(l.var);
  return GroupWord(std::move(out));
}

std::string GroupWord::render() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const Letter& l : letters_) {
    if (!out.empty()) out += ' ';
    out += l.var.name();
    if (l.exponent != 1) out += '^' + std::to_string(l.exponent);
  }
  return out;
}

std::int64_t exponent_sum(const GroupWord& u, Variable v) {
  std::int64_t sum = 0;
  for (const Letter& l : u.letters())
    if (l.var == v) sum += l.exponent;
  return sum;
}

bool is_non_commutator(const GroupWord& u) {
  return std::ranges::any_of(u.variables(), [&](Variable v) { return exponent_sum(u, v) != 0; });
}

GroupWord commutator(const GroupWord& a, const GroupWord& b) {
  return a.inverse() * b.inverse() * a * b;
}

// ------------------------------------------------------------- ExtendedWord

struct ExtendedWord::Node {
  Variable var;
  std::shared_ptr<const Node> left, right;
  std::vector<Variable> leaves;
  unsigned height = 0;
};

ExtendedWord ExtendedWord::leaf(Variable v) {
  if (v.index == 0) throw InputError("variable index must be positive");
  auto n = std::make_shared<Node>();
  n->var = v;
  n->leaves = {v};
  return ExtendedWord(std::move(n));
}

ExtendedWord ExtendedWord::commutator(const ExtendedWord& left, const ExtendedWord& right) {
  auto n = std::make_shared<Node>();
  n->left = left.node_;
  n->right = right.node_;
  n->leaves = left.leaves();
  n->leaves.insert(n->leaves.end(), right.leaves().begin(), right.leaves().end());
  std::set<Variable> seen;
  for (Variable v : n->leaves)
    if (!seen.insert(v).second) throw InputError("repeated variable " + v.name());
  n->height = 1 + std::max(left.height(), right.height());
  return ExtendedWord(std::move(n));
}

bool ExtendedWord::is_leaf() const { return node_->left == nullptr; }
Variable ExtendedWord::variable() const { return node_->var; }
ExtendedWord ExtendedWord::left() const { return ExtendedWord(node_->left); }
ExtendedWord ExtendedWord::right() const { return ExtendedWord(node_->right); }
const std::vector<Variable>& ExtendedWord::leaves() const { return node_->leaves; }
unsigned ExtendedWord::height() const { return node_->height; }

bool ExtendedWord::has_y() const {
  return std::ranges::any_of(leaves(), [](Variable v) { return !v.is_x(); });
}

ExtendedWord ExtendedWord::renamed(const std::function<Variable(Variable)>& rename) const {
  if (is_leaf()) return leaf(rename(variable()));
  return commutator(left().renamed(rename), right().renamed(rename));
}

GroupWord ExtendedWord::expand() const {
  if (is_leaf()) return GroupWord::of(variable());
  return ocw::commutator(left().expand(), right().expand());
}

std::string ExtendedWord::render() const {
  if (is_leaf()) return variable().name();
  return "[" + left().render() + "," + right().render() + "]";
}

bool ExtendedWord::operator==(const ExtendedWord& other) const {
  if (node_ == other.node_) return true;
  if (is_leaf() != other.is_leaf()) return false;
  if (is_leaf()) return variable() == other.variable();
  return left() == other.left() && right() == other.right();
}

unsigned degree(const ExtendedWord& v) {
  if (!v.has_y()) return 0;
  if (std::ranges::none_of(v.leaves(), [](Variable x) { return x.is_x(); })) return 1;
  return degree(v.left()) + degree(v.right());
}

// ---------------------------------------------------------------- OuterWord

OuterWord::OuterWord(ExtendedWord word) : word_(std::move(word)) {
  if (word_.has_y()) throw InputError("outer commutator words use X-variables only");
}

OuterWord OuterWord::standardized() const {
  std::map<Variable, Variable> to;
  std::uint32_t next = 1;
  for (Variable v : leaves()) to[v] = Variable::x(next++);
  return OuterWord(word_.renamed([&](Variable v) { return to.at(v); }));
}

GroupWord compose(const OuterWord& w, std::span<const GroupWord> us) {
  if (us.size() != w.leaf_count())
    throw InputError("compose: expected " + std::to_string(w.leaf_count()) + " words, got " +
                     std::to_string(us.size()));
  std::map<Variable, GroupWord> substitution;
  std::uint32_t next = 1;
  for (std::size_t i = 0; i < us.size(); ++i) {
    std::map<Variable, Variable> fresh;
    for (Variable v : us[i].variables()) fresh[v] = Variable::x(next++);
    substitution[w.leaves()[i]] = us[i].renamed([&](Variable v) { return fresh.at(v); });
  }
  std::function<GroupWord(const ExtendedWord&)> expand = [&](const ExtendedWord& t) {
    if (t.is_leaf()) return substitution.at(t.variable());
    return commutator(expand(t.left()), expand(t.right()));
  };
  return expand(w.extended());
}

OuterWord lower_central_word(unsigned k) {
  if (k == 0) throw InputError("lower central words start at k = 1");
  OuterWord w = OuterWord::leaf(Variable::x(1));
  for (unsigned i = 2; i <= k; ++i) w = OuterWord::commutator(w, OuterWord::leaf(Variable::x(i)));
  return w;
}

OuterWord derived_word(unsigned k) {
  std::uint32_t next = 1;
  std::function<OuterWord(unsigned)> build = [&](unsigned d) {
    if (d == 0) return OuterWord::leaf(Variable::x(next++));
    OuterWord a = build(d - 1);
    OuterWord b = build(d - 1);
    return OuterWord::commutator(a, b);
  };
  return build(k);
}

// ------------------------------------------------------------------ parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExtendedWord tree(bool allow_y) {
    skip_space();
    if (peek() == '[') {
      ++pos_;
      ExtendedWord left = tree(allow_y);
      expect(',');
      ExtendedWord right = tree(allow_y);
      expect(']');
      std::size_t at = pos_;
      try {
        return ExtendedWord::commutator(left, right);
      } catch (const InputError& e) {
        throw InputError(std::string(e.what()) + " (ending at position " + std::to_string(at) + ")");
      }
    }
    std::size_t at = pos_;
    Variable v = variable();
    if (!allow_y && !v.is_x()) throw ParseError("Y-variable not allowed in an outer commutator word", at);
    return ExtendedWord::leaf(v);
  }

  GroupWord group_word() {
    std::vector<Letter> letters;
    skip_space();
    if (done()) return {};
    if (peek() == '1') {
      ++pos_;
      finish();
      return {};
    }
    letters.push_back(term());
    while (true) {
      skip_space();
      if (done()) break;
      if (peek() == '*') ++pos_;
      letters.push_back(term());
    }
    return GroupWord(std::move(letters));
  }

  void finish() {
    skip_space();
    if (!done()) throw ParseError("unexpected trailing input", pos_);
  }

 private:
  Letter term() {
    Letter l{variable(), 1};
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      bool negative = false;
      if (peek() == '-') {
        negative = true;
        ++pos_;
      }
      std::int64_t e = number();
      l.exponent = negative ? -e : e;
    }
    return l;
  }

  Variable variable() {
    skip_space();
    char c = peek();
    if (c != 'x' && c != 'y') throw ParseError("expected variable", pos_);
    ++pos_;
    std::size_t at = pos_;
    std::int64_t k = number();
    if (k == 0) throw ParseError("variable index must be positive", at);
    if (k > std::numeric_limits<std::uint32_t>::max()) throw ParseError("variable index too large", at);
    return {c == 'x' ? Alphabet::X : Alphabet::Y, static_cast<std::uint32_t>(k)};
  }

  std::int64_t number() {
    if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected digit", pos_);
    std::int64_t value = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10) throw ParseError("number too large", pos_);
      value = value * 10 + (text_[pos_++] - '0');
    }
    return value;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

OuterWord parse_outer(std::string_view text) {
  Parser p(text);
  ExtendedWord w = p.tree(false);
  p.finish();
  return OuterWord(std::move(w));
}

ExtendedWord parse_extended(std::string_view text) {
  Parser p(text);
  ExtendedWord w = p.tree(true);
  p.finish();
  return w;
}

GroupWord parse_group_word(std::string_view text) {
  Parser p(text);
  return p.group_word();
}

}  // namespace ocw
