#include "ocw/series.hpp"

#include <algorithm>
#include <map>

#include "ocw/errors.hpp"

namespace ocw {

std::size_t max_series_length(unsigned h) {
  if (h == 0) return 1;
  return (std::size_t{1} << h) + (std::size_t{1} << (h - 1)) - 1;
}

namespace {

struct Built {
  SubgroupExpr V0;
  std::vector<PlanStep> steps;
};

template <class T>
std::vector<T> concat(std::span<const T> a, std::span<const T> b) {
  std::vector<T> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string tuple_text(std::span<const SubgroupExpr> tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) out += (i ? "," : "") + tuple[i].render();
  return out + ")";
}

class Synthesizer {
 public:
  explicit Synthesizer(std::vector<std::string>* transcript) : log_(transcript) {}

  Built build(const OuterWord& w, std::span<const SubgroupExpr> tuple) {
    if (w.height() == 0) return base_leaf(w, tuple);
    if (w.height() == 1) return base_commutator(w, tuple);
    return recurse(w, tuple);
  }

 private:
  Built base_leaf(const OuterWord& w, std::span<const SubgroupExpr> tuple) {
    const SubgroupExpr& n = tuple[0];
    Built b{SubgroupExpr::comm(n, n), {}};
    b.steps.push_back(PlanStep{1, n, w.extended(), {n}, 1, 0});
    note(w.render() + " on " + tuple_text(tuple) + ": height 0, t = 1, V_0 = " + b.V0.render() +
         " <= V_1 = " + n.render());
    return b;
  }

  Built base_commutator(const OuterWord& w, std::span<const SubgroupExpr> tuple) {
    const SubgroupExpr& n1 = tuple[0];
    const SubgroupExpr& n2 = tuple[1];
    SubgroupExpr n12 = SubgroupExpr::comm(n1, n2);
    Built b{SubgroupExpr::comm(n12, n12), {}};
    b.steps.push_back(PlanStep{1, SubgroupExpr::comm(n1, n12), w.extended(), {n1, n12}, 2, 0});
    b.steps.push_back(PlanStep{2, n12, w.extended(), {n1, n2}, 1, 0});
    note(w.render() + " on " + tuple_text(tuple) + ": height 1, t = 2, V_0 = " + b.V0.render() +
         " <= V_1 = " + b.steps[0].V.render() + " <= V_2 = " + n12.render());
    return b;
  }

  Built recurse(const OuterWord& w, std::span<const SubgroupExpr> tuple) {
    const OuterWord alpha = w.left();
    const OuterWord beta = w.right();
    const std::size_t q = alpha.leaf_count();
    const auto tuple_a = tuple.first(q);
    const auto tuple_b = tuple.subspan(q);

    Built A = build(alpha, tuple_a);
    Built B = build(beta, tuple_b);
    const std::size_t ta = A.steps.size();
    const std::size_t tb = B.steps.size();

    const SubgroupExpr alphaN = verbal_tree(alpha, tuple_a);
    const SubgroupExpr betaN = verbal_tree(beta, tuple_b);
    const SubgroupExpr wN = SubgroupExpr::comm(alphaN, betaN);
    const SubgroupExpr V0 = SubgroupExpr::comm(wN, wN);
    const SubgroupExpr alpha_wN = SubgroupExpr::comm(alphaN, wN);
    const SubgroupExpr wN_beta = SubgroupExpr::comm(wN, betaN);

    note(w.render() + " on " + tuple_text(tuple) + ": alpha = " + alpha.render() + " (t_alpha = " +
         std::to_string(ta) + "), beta = " + beta.render() + " (t_beta = " + std::to_string(tb) +
         "), t = t_alpha + t_beta + 1 = " + std::to_string(ta + tb + 1));
    note("  three subgroup inclusion: [" + A.V0.render() + "," + betaN.render() + "] <= " + alpha_wN.render());

    Built out{V0, {}};
    std::size_t index = 1;

    // Left part, V_1 .. V_{tb+1}: Z_i V_0 with Z_i = [alpha(N), U_i],
    // U_1 = [w(N), beta(N)], U_i = [alpha(N), B_{i-1}] [w(N), beta(N)].
    {
      const Variable y = Variable::y(next_y_++);
      ExtendedWord v = ExtendedWord::commutator(
          alpha.extended(), ExtendedWord::commutator(ExtendedWord::leaf(y), beta.extended()));
      std::vector<SubgroupExpr> M(tuple_a.begin(), tuple_a.end());
      M.push_back(wN);
      M.insert(M.end(), tuple_b.begin(), tuple_b.end());
      SubgroupExpr Z = SubgroupExpr::comm(alphaN, wN_beta);
      SubgroupExpr V = SubgroupExpr::prod({Z, V0});
      note("  V_1 = " + V.render() + " from " + v.render() + ", linear in the " + y.name() + " slot");
      out.steps.push_back(PlanStep{index++, V, v, std::move(M), q + 1, degree(v)});
    }
    for (std::size_t i = 2; i <= tb + 1; ++i) {
      const PlanStep& child = B.steps[i - 2];
      std::map<Variable, Variable> fresh;
      for (Variable x : alpha.leaves()) fresh[x] = Variable::y(next_y_++);
      ExtendedWord alpha_y = alpha.extended().renamed([&](Variable x) { return fresh.at(x); });
      ExtendedWord u = ExtendedWord::commutator(alpha_y, child.v);
      ExtendedWord v = ExtendedWord::commutator(alpha.extended(), u);

      std::vector<SubgroupExpr> M = concat<SubgroupExpr>(tuple_a, tuple_a);
      M.insert(M.end(), child.M.begin(), child.M.end());

      SubgroupExpr V = i == tb + 1
                           ? alpha_wN
                           : SubgroupExpr::prod({SubgroupExpr::comm(
                                                     alphaN, SubgroupExpr::prod({SubgroupExpr::comm(alphaN, child.V),
                                                                                 wN_beta})),
                                                 V0});
      note("  V_" + std::to_string(index) + " = " + V.render() + " from " + v.render());
      out.steps.push_back(PlanStep{index++, V, v, std::move(M), 2 * q + child.linear_pos, degree(v)});
    }

    // Right part, V_{tb+2} .. V_t: [A_i, beta(N)] [alpha(N), w(N)].
    for (std::size_t i = 1; i <= ta; ++i) {
      const PlanStep& child = A.steps[i - 1];
      ExtendedWord v = ExtendedWord::commutator(child.v, beta.extended());
      std::vector<SubgroupExpr> M = concat<SubgroupExpr>(child.M, tuple_b);
      SubgroupExpr V = i == ta ? wN : SubgroupExpr::prod({SubgroupExpr::comm(child.V, betaN), alpha_wN});
      note("  V_" + std::to_string(index) + " = " + V.render() + " from " + v.render());
      out.steps.push_back(PlanStep{index++, V, v, std::move(M), child.linear_pos, degree(v)});
    }
    return out;
  }

  void note(std::string line) {
    if (log_) log_->push_back(std::move(line));
  }

  std::vector<std::string>* log_;
  std::uint32_t next_y_ = 1;
};

SeriesPlan run(const OuterWord& w, std::vector<std::string>* transcript) {
  const std::vector<SubgroupExpr> tuple = base_tuple(w.leaf_count());
  Synthesizer s(transcript);
  Built b = s.build(w, tuple);
  const std::size_t t = b.steps.size();
  return SeriesPlan{w, w.height(), t, std::move(b.V0), std::move(b.steps)};
}

}  // namespace

SeriesPlan synthesize(const OuterWord& w) { return run(w, nullptr); }

SeriesPlan synthesize(const OuterWord& w, std::vector<std::string>& transcript) { return run(w, &transcript); }

// --------------------------------------------------------------- validation

PlanValidation validate_plan_static(const SeriesPlan& plan) {
  PlanValidation report;
  auto fail = [&](std::size_t step, std::string clause, std::string message) {
    report.violations.push_back({step, std::move(clause), std::move(message)});
  };

  const std::size_t r = plan.word.leaf_count();
  const unsigned h = plan.word.height();
  if (plan.h != h) fail(0, "height", "declared height " + std::to_string(plan.h) + ", word has " + std::to_string(h));
  if (plan.t != plan.steps.size())
    fail(0, "length", "declared t = " + std::to_string(plan.t) + " but " + std::to_string(plan.steps.size()) + " steps");
  if (h == 0 ? plan.steps.size() != 1 : plan.steps.size() > max_series_length(h))
    fail(0, "t-bound", std::to_string(plan.steps.size()) + " steps exceeds the bound " +
                           std::to_string(max_series_length(h)) + " for height " + std::to_string(h));

  const std::vector<SubgroupExpr> tuple = base_tuple(r);
  const SubgroupExpr wN = simplify_expr(verbal_tree(plan.word, tuple));
  if (simplify_expr(plan.V0) != simplify_expr(SubgroupExpr::comm(wN, wN)))
    fail(0, "endpoints", "V_0 = " + plan.V0.render() + " is not [w(N),w(N)]");
  if (!plan.steps.empty() && simplify_expr(plan.steps.back().V) != wN)
    fail(plan.steps.size(), "endpoints", "V_t = " + plan.steps.back().V.render() + " is not w(N) = " + wN.render());

  std::map<Variable, std::size_t> position_of;
  for (std::size_t i = 0; i < r; ++i) position_of[plan.word.leaves()[i]] = i + 1;

  auto in_range = [&](const SubgroupExpr& e) {
    auto b = e.bases();
    return b.empty() || *b.rbegin() <= r;
  };

  const unsigned max_degree = h == 0 ? 0 : h - 1;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& s = plan.steps[i];
    const std::size_t n = i + 1;
    if (s.index != n) fail(n, "index", "step carries index " + std::to_string(s.index));
    if (!in_range(s.V)) fail(n, "bases", "V refers to a base outside N_1..N_" + std::to_string(r));
    const unsigned d = degree(s.v);
    if (s.degree != d) fail(n, "degree", "declared degree " + std::to_string(s.degree) + ", word has " + std::to_string(d));
    if (d > max_degree)
      fail(n, "degree", "degree " + std::to_string(d) + " exceeds " + std::to_string(max_degree));
    if (s.M.size() != s.v.leaf_count()) {
      fail(n, "arity", std::to_string(s.M.size()) + " tuple entries for " + std::to_string(s.v.leaf_count()) + " leaves");
      continue;
    }
    if (s.linear_pos < 1 || s.linear_pos > s.M.size())
      fail(n, "linear_pos", "position " + std::to_string(s.linear_pos) + " out of range");
    for (std::size_t p = 0; p < s.M.size(); ++p) {
      const SubgroupExpr m = simplify_expr(s.M[p]);
      if (m.has_prod() || !in_range(m))
        fail(n, "extension-shape", "M[" + std::to_string(p + 1) + "] = " + s.M[p].render() +
                                       " is not an outer commutator term over N_1..N_" + std::to_string(r));
      const Variable leaf = s.v.leaves()[p];
      if (!leaf.is_x()) continue;
      auto it = position_of.find(leaf);
      if (it == position_of.end()) {
        fail(n, "x-alignment", leaf.name() + " is not a variable of " + plan.word.render());
      } else if (!m.bases().contains(it->second)) {
        fail(n, "x-alignment", "M[" + std::to_string(p + 1) + "] = " + s.M[p].render() + " does not involve N" +
                                   std::to_string(it->second) + " for " + leaf.name());
      }
    }
  }
  return report;
}

// --------------------------------------------------------------------- JSON

nlohmann::json plan_to_json(const SeriesPlan& plan) {
  nlohmann::json doc;
  doc["word"] = plan.word.render();
  doc["height"] = plan.h;
  doc["t"] = plan.t;
  doc["v0"] = expr_to_json(plan.V0);
  nlohmann::json steps = nlohmann::json::array();
  for (const PlanStep& s : plan.steps) {
    nlohmann::json js;
    js["index"] = s.index;
    js["V"] = expr_to_json(s.V);
    js["v"] = s.v.render();
    nlohmann::json M = nlohmann::json::array();
    for (const SubgroupExpr& m : s.M) M.push_back(expr_to_json(m));
    js["M"] = std::move(M);
    js["linear_pos"] = s.linear_pos;
    js["degree"] = s.degree;
    steps.push_back(std::move(js));
  }
  doc["steps"] = std::move(steps);
  return doc;
}

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw InputError("schema error at " + (path.empty() ? "/" : path) + ": missing \"" + key + "\"");
  return j.at(key);
}

std::size_t require_count(const nlohmann::json& j, const char* key, const std::string& path) {
  const nlohmann::json& v = require(j, key, path);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw InputError("schema error at " + path + "/" + key + ": expected non-negative integer");
  return v.get<std::size_t>();
}

std::string require_string(const nlohmann::json& j, const char* key, const std::string& path) {
  const nlohmann::json& v = require(j, key, path);
  if (!v.is_string()) throw InputError("schema error at " + path + "/" + key + ": expected string");
  return v.get<std::string>();
}

}  // namespace

SeriesPlan plan_from_json(const nlohmann::json& doc) {
  try {
    OuterWord word = parse_outer(require_string(doc, "word", ""));
    const auto h = static_cast<unsigned>(require_count(doc, "height", ""));
    const std::size_t t = require_count(doc, "t", "");
    SubgroupExpr V0 = expr_from_json(require(doc, "v0", ""), "/v0");
    const nlohmann::json& steps = require(doc, "steps", "");
    if (!steps.is_array()) throw InputError("schema error at /steps: expected array");
    std::vector<PlanStep> out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string path = "/steps/" + std::to_string(i);
      const nlohmann::json& js = steps[i];
      const nlohmann::json& M = require(js, "M", path);
      if (!M.is_array()) throw InputError("schema error at " + path + "/M: expected array");
      std::vector<SubgroupExpr> tuple;
      for (std::size_t k = 0; k < M.size(); ++k) tuple.push_back(expr_from_json(M[k], path + "/M/" + std::to_string(k)));
      out.push_back(PlanStep{require_count(js, "index", path), expr_from_json(require(js, "V", path), path + "/V"),
                             parse_extended(require_string(js, "v", path)), std::move(tuple),
                             require_count(js, "linear_pos", path),
                             static_cast<unsigned>(require_count(js, "degree", path))});
    }
    return SeriesPlan{std::move(word), h, t, std::move(V0), std::move(out)};
  } catch (const ParseError& e) {
    throw InputError(std::string("schema error: ") + e.what());
  }
}

}  // namespace ocw
