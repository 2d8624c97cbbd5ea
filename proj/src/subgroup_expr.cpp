#include "ocw/subgroup_expr.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "ocw/errors.hpp"

namespace ocw {

struct SubgroupExpr::Node {
  Kind kind = Kind::Base;
  std::size_t index = 0;
  std::vector<SubgroupExpr> args;
  std::optional<OuterWord> word;
  std::string rendered;
};

SubgroupExpr SubgroupExpr::base(std::size_t index) {
  if (index == 0) throw InputError("base subgroup indices start at 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->index = index;
  n->rendered = "N" + std::to_string(index);
  return SubgroupExpr(std::move(n));
}

SubgroupExpr SubgroupExpr::comm(const SubgroupExpr& left, const SubgroupExpr& right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Comm;
  n->args = {left, right};
  n->rendered = "[" + left.render() + "," + right.render() + "]";
  return SubgroupExpr(std::move(n));
}

SubgroupExpr SubgroupExpr::prod(std::vector<SubgroupExpr> factors) {
  if (factors.empty()) throw InputError("product needs at least one factor");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prod;
  for (const SubgroupExpr& f : factors) {
    if (!n->rendered.empty()) n->rendered += '*';
    n->rendered += f.kind() == Kind::Prod ? "(" + f.render() + ")" : f.render();
  }
  n->args = std::move(factors);
  return SubgroupExpr(std::move(n));
}

SubgroupExpr SubgroupExpr::verbal(const OuterWord& word, std::vector<SubgroupExpr> args) {
  if (args.size() != word.leaf_count())
    throw InputError("verbal term " + word.render() + " needs " + std::to_string(word.leaf_count()) +
                     " arguments, got " + std::to_string(args.size()));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Verbal;
  n->word = word.standardized();
  n->rendered = n->word->render() + "(";
  for (std::size_t i = 0; i < args.size(); ++i) n->rendered += (i ? "," : "") + args[i].render();
  n->rendered += ")";
  n->args = std::move(args);
  return SubgroupExpr(std::move(n));
}

SubgroupExpr::Kind SubgroupExpr::kind() const { return node_->kind; }
std::size_t SubgroupExpr::index() const { return node_->index; }
const std::vector<SubgroupExpr>& SubgroupExpr::args() const { return node_->args; }
const OuterWord& SubgroupExpr::word() const { return *node_->word; }
std::string SubgroupExpr::render() const { return node_->rendered; }

std::set<std::size_t> SubgroupExpr::bases() const {
  if (kind() == Kind::Base) return {index()};
  std::set<std::size_t> out;
  for (const SubgroupExpr& a : args()) out.merge(a.bases());
  return out;
}

bool SubgroupExpr::has_prod() const {
  if (kind() == Kind::Prod) return true;
  return std::ranges::any_of(args(), [](const SubgroupExpr& a) { return a.has_prod(); });
}

bool SubgroupExpr::operator==(const SubgroupExpr& other) const {
  // rendering is injective on the term structure
  return node_ == other.node_ || render() == other.render();
}

SubgroupExpr verbal_tree(const OuterWord& w, std::span<const SubgroupExpr> args) {
  if (args.size() != w.leaf_count())
    throw InputError("verbal term " + w.render() + " needs " + std::to_string(w.leaf_count()) + " arguments");
  if (w.is_leaf()) return args[0];
  std::size_t split = w.left().leaf_count();
  return SubgroupExpr::comm(verbal_tree(w.left(), args.first(split)), verbal_tree(w.right(), args.subspan(split)));
}

std::vector<SubgroupExpr> base_tuple(std::size_t r) {
  std::vector<SubgroupExpr> out;
  for (std::size_t j = 1; j <= r; ++j) out.push_back(SubgroupExpr::base(j));
  return out;
}

SubgroupExpr simplify_expr(const SubgroupExpr& e) {
  using Kind = SubgroupExpr::Kind;
  switch (e.kind()) {
    case Kind::Base:
      return e;
    case Kind::Comm:
      return SubgroupExpr::comm(simplify_expr(e.left()), simplify_expr(e.right()));
    case Kind::Verbal: {
      std::vector<SubgroupExpr> args;
      for (const SubgroupExpr& a : e.args()) args.push_back(simplify_expr(a));
      return simplify_expr(verbal_tree(e.word(), args));
    }
    case Kind::Prod: {
      std::map<std::string, SubgroupExpr> factors;
      for (const SubgroupExpr& a : e.args()) {
        SubgroupExpr s = simplify_expr(a);
        if (s.kind() == Kind::Prod) {
          for (const SubgroupExpr& f : s.args()) factors.emplace(f.render(), f);
        } else {
          factors.emplace(s.render(), s);
        }
      }
      if (factors.size() == 1) return factors.begin()->second;
      std::vector<SubgroupExpr> sorted;
      for (auto& [key, f] : factors) sorted.push_back(f);
      return SubgroupExpr::prod(std::move(sorted));
    }
  }
  return e;
}

std::string canonical_key(const SubgroupExpr& e) { return simplify_expr(e).render(); }

// --------------------------------------------------------------------- JSON

nlohmann::json expr_to_json(const SubgroupExpr& e) {
  using Kind = SubgroupExpr::Kind;
  nlohmann::json j;
  switch (e.kind()) {
    case Kind::Base:
      j["kind"] = "base";
      j["index"] = e.index();
      break;
    case Kind::Comm:
      j["kind"] = "comm";
      j["left"] = expr_to_json(e.left());
      j["right"] = expr_to_json(e.right());
      break;
    case Kind::Prod:
    case Kind::Verbal: {
      j["kind"] = e.kind() == Kind::Prod ? "prod" : "verbal";
      if (e.kind() == Kind::Verbal) j["word"] = e.word().render();
      nlohmann::json args = nlohmann::json::array();
      for (const SubgroupExpr& a : e.args()) args.push_back(expr_to_json(a));
      j["args"] = std::move(args);
      break;
    }
  }
  return j;
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* name, const std::string& path) {
  if (!j.is_object() || !j.contains(name))
    throw InputError("schema error at " + (path.empty() ? "/" : path) + ": missing \"" + name + "\"");
  return j.at(name);
}

std::vector<SubgroupExpr> expr_list(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw InputError("schema error at " + path + ": expected array");
  std::vector<SubgroupExpr> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(expr_from_json(j[i], path + "/" + std::to_string(i)));
  return out;
}

}  // namespace

SubgroupExpr expr_from_json(const nlohmann::json& j, const std::string& path) {
  const nlohmann::json& kind = field(j, "kind", path);
  if (!kind.is_string()) throw InputError("schema error at " + path + "/kind: expected string");
  const std::string k = kind.get<std::string>();
  if (k == "base") {
    const nlohmann::json& idx = field(j, "index", path);
    if (!idx.is_number_integer() || idx.get<std::int64_t>() <= 0)
      throw InputError("schema error at " + path + "/index: expected positive integer");
    return SubgroupExpr::base(idx.get<std::size_t>());
  }
  if (k == "comm")
    return SubgroupExpr::comm(expr_from_json(field(j, "left", path), path + "/left"),
                              expr_from_json(field(j, "right", path), path + "/right"));
  if (k == "prod") return SubgroupExpr::prod(expr_list(field(j, "args", path), path + "/args"));
  if (k == "verbal") {
    const nlohmann::json& word = field(j, "word", path);
    if (!word.is_string()) throw InputError("schema error at " + path + "/word: expected string");
    try {
      return SubgroupExpr::verbal(parse_outer(word.get<std::string>()),
                                  expr_list(field(j, "args", path), path + "/args"));
    } catch (const ParseError& e) {
      throw InputError("schema error at " + path + "/word: " + e.what());
    }
  }
  throw InputError("schema error at " + path + "/kind: unknown kind \"" + k + "\"");
}

}  // namespace ocw
