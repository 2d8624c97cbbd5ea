// Acceptance suite: one PASS/FAIL line per criterion, artifacts under --artifacts.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ocw/catalog.hpp"
#include "ocw/errors.hpp"
#include "ocw/tuples.hpp"
#include "ocw/verifier.hpp"

namespace fs = std::filesystem;
using namespace ocw;

namespace {

const std::vector<std::string> kGroups{"symmetric:4",  "alternating:5", "dihedral:8",
                                       "dicyclic:2",   "heisenberg:3",  "direct_product:cyclic:2*symmetric:4"};

std::vector<OuterWord> matrix_words() {
  return {parse_outer("[x1,x2]"), lower_central_word(3), lower_central_word(4), derived_word(2)};
}

// Literal enumeration of every leaf tuple for the oracle side.
constexpr std::size_t kOracleCap = 20'000'000;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ------------------------------------------------------------ artifacts

struct MatrixCell {
  std::string group;
  std::string word;
  std::string tuple;
  PlanReport report;
  TheoremBRecord theorem_b;
  bool final_matches_oracle = false;
  bool v0_matches_oracle = false;
  bool oracle_by_tuples = false;
};

struct Artifacts {
  std::vector<CatalogEntry> entries;
  std::vector<MatrixCell> cells;
  std::string theorem_b_csv;
  std::vector<ConcisenessRecord> theorem_a;
  std::vector<std::pair<std::string, CountingBound>> counting;
  std::vector<std::pair<std::string, std::size_t>> counting_k;
};

Artifacts produce(const fs::path& dir, std::uint64_t seed, unsigned threads) {
  fs::create_directories(dir);
  Artifacts a;
  for (const std::string& g : kGroups) a.entries.push_back(build(g));

  VerifyOptions options;
  options.seed = seed;

  std::vector<SurveyCell> cells;
  for (const CatalogEntry& e : a.entries)
    for (const OuterWord& w : matrix_words())
      for (const auto& [name, labels] : standard_tuples(w.leaf_count())) cells.push_back({&e, w, name, labels});
  std::vector<SurveyResult> results = run_survey(cells, options, threads);
  a.theorem_b_csv = survey_csv(cells, results);

  nlohmann::json reports = nlohmann::json::array();
  nlohmann::json oracle = nlohmann::json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const SurveyCell& c = cells[i];
    MatrixCell m{c.entry->name, c.word.render(), c.tuple_name, std::move(results[i].report), results[i].theorem_b};

    std::vector<SubgroupHandle> bindings;
    for (const std::string& l : c.labels) bindings.push_back(c.entry->label(l));
    Environment env(c.entry->group, bindings, {false, false});
    const SeriesPlan plan = synthesize(c.word);
    const std::vector<ElemIds> sets = element_sets(bindings);
    std::vector<std::size_t> sizes;
    for (const ElemIds& s : sets) sizes.push_back(s.size());
    m.oracle_by_tuples = tuple_count(sizes) <= kOracleCap;
    const ElemIds values = m.oracle_by_tuples
                               ? value_set_by_tuples(*c.entry->group, c.word.extended(), sets, kOracleCap)
                               : value_set(*c.entry->group, c.word.extended(), sets).elements;
    const SubgroupHandle wN = generate_subgroup(c.entry->group, values);
    const SubgroupHandle V0 = commutator_subgroup(wN, wN);
    m.final_matches_oracle = eval_expr(plan.steps.back().V, env) == wN;
    m.v0_matches_oracle = eval_expr(plan.V0, env) == V0;

    nlohmann::json r = report_to_json(m.report);
    r["tuple"] = m.tuple;
    reports.push_back(std::move(r));
    oracle.push_back({{"group", m.group},
                      {"word", m.word},
                      {"tuple", m.tuple},
                      {"order_wN", wN.order()},
                      {"order_V0", V0.order()},
                      {"by_tuples", m.oracle_by_tuples},
                      {"final_matches", m.final_matches_oracle},
                      {"v0_matches", m.v0_matches_oracle}});
    a.cells.push_back(std::move(m));
  }
  write(dir / "matrix_reports.json", dump(reports));
  write(dir / "oracle_equivalence.json", dump(oracle));
  write(dir / "theorem_b.csv", a.theorem_b_csv);

  nlohmann::json ta = nlohmann::json::array();
  for (const std::string spec : {"symmetric:4", "dicyclic:2", "heisenberg:3"}) {
    const CatalogEntry e = build(spec);
    for (const OuterWord& w : {parse_outer("[x1,x2]"), lower_central_word(3)}) {
      const std::size_t r = w.leaf_count();
      std::vector<std::int64_t> mixed{2, 3, 2};
      mixed.resize(r);
      for (const std::vector<std::int64_t>& n : {std::vector<std::int64_t>(r, 2), std::vector<std::int64_t>(r, 3), mixed}) {
        a.theorem_a.push_back(theorem_a_record(e.group, w, n, options));
        ta.push_back(record_to_json(a.theorem_a.back()));
      }
    }
  }
  write(dir / "theorem_a.json", dump(ta));

  nlohmann::json cb = nlohmann::json::array();
  for (const std::string spec : {"dicyclic:2", "symmetric:4"}) {
    const CatalogEntry e = build(spec);
    const std::vector<ElemIds> sets(2, e.label("G").elements());
    const ElemIds s = value_set(*e.group, parse_outer("[x1,x2]").extended(), sets).elements;
    for (std::size_t k = 0; k <= 3; ++k) {
      const CountingBound b = counting_bound_check(*e.group, s, k);
      a.counting.emplace_back(spec, b);
      a.counting_k.emplace_back(spec, k);
      cb.push_back({{"group", spec}, {"k", k}, {"m", s.size()}, {"size", b.size}, {"bound", b.bound}, {"ok", b.ok()}});
    }
  }
  write(dir / "counting_bound.json", dump(cb));
  return a;
}

// ------------------------------------------------------------- criteria

Outcome base_case() {
  Outcome o;
  const SeriesPlan p = synthesize(parse_outer("[x1,x2]"));
  const OuterWord w = parse_outer("[x1,x2]");
  o.require(p.t == 2 && p.steps.size() == 2, "t != 2");
  if (!o.pass) return o;
  o.require(p.V0.render() == "[[N1,N2],[N1,N2]]", "V_0 = " + p.V0.render());
  o.require(p.steps[0].V.render() == "[N1,[N1,N2]]", "V_1 = " + p.steps[0].V.render());
  o.require(p.steps[1].V.render() == "[N1,N2]", "V_2 = " + p.steps[1].V.render());
  o.require(p.steps[0].v == w.extended() && p.steps[1].v == w.extended(), "v_i != w");
  o.require(p.steps[0].M.size() == 2 && p.steps[0].M[0].render() == "N1" && p.steps[0].M[1].render() == "[N1,N2]",
            "M_1 mismatch");
  o.require(p.steps[1].M.size() == 2 && p.steps[1].M[0].render() == "N1" && p.steps[1].M[1].render() == "N2",
            "M_2 mismatch");
  return o;
}

std::vector<OuterWord> shapes(std::uint32_t first, std::uint32_t n) {
  if (n == 1) return {OuterWord::leaf(Variable::x(first))};
  std::vector<OuterWord> out;
  for (std::uint32_t k = 1; k < n; ++k)
    for (const OuterWord& l : shapes(first, k))
      for (const OuterWord& r : shapes(first + k, n - k)) out.push_back(OuterWord::commutator(l, r));
  return out;
}

Outcome length_formula() {
  Outcome o;
  for (unsigned k = 1; k <= 3; ++k) {
    const std::size_t expected = (std::size_t{1} << k) + (std::size_t{1} << (k - 1)) - 1;
    const std::size_t t = synthesize(derived_word(k)).t;
    o.require(t == expected, "delta_" + std::to_string(k) + ": t = " + std::to_string(t));
  }
  std::size_t shapes_seen = 0;
  for (std::uint32_t n = 1; n <= 4; ++n)
    for (const OuterWord& w : shapes(1, n)) {
      ++shapes_seen;
      const SeriesPlan p = synthesize(w);
      const unsigned h = w.height();
      o.require(p.t == p.steps.size() && p.t <= max_series_length(h), w.render() + ": length bound");
      for (const PlanStep& s : p.steps)
        o.require(degree(s.v) <= (h == 0 ? 0u : h - 1), w.render() + ": degree of " + s.v.render());
      o.require(validate_plan_static(p).ok(), w.render() + ": static validation");
    }
  o.require(shapes_seen == 9, "expected 9 shapes");
  return o;
}

std::string cell_name(const MatrixCell& c) { return c.group + " " + c.word + " " + c.tuple; }

Outcome matrix(const Artifacts& a) {
  Outcome o;
  o.require(a.cells.size() == kGroups.size() * 4 * 3, "matrix size");
  for (const MatrixCell& c : a.cells) {
    const PlanReport& r = c.report;
    for (CheckStatus s : {r.endpoints, r.normality, r.chain, r.generation, r.linearity, r.t_bound, r.three_subgroup})
      o.require(s == CheckStatus::Pass, cell_name(c) + ": a check did not pass");
  }
  return o;
}

Outcome oracle_equivalence(const Artifacts& a) {
  Outcome o;
  for (const MatrixCell& c : a.cells) {
    o.require(c.oracle_by_tuples, cell_name(c) + ": tuple space too large for the oracle");
    o.require(c.final_matches_oracle, cell_name(c) + ": V_t != w(N)");
    o.require(c.v0_matches_oracle, cell_name(c) + ": V_0 != [w(N),w(N)]");
  }
  return o;
}

Outcome cross_check(const Artifacts& a) {
  Outcome o;
  std::size_t total = 0;
  for (const MatrixCell& c : a.cells) {
    total += c.report.cross_checks;
    o.require(c.report.cross_check_mismatches == 0, cell_name(c) + ": methods disagree");
    o.require(c.report.commutator_cross_check == CheckStatus::Pass, cell_name(c) + ": cross check not run");
  }
  o.require(total > 0, "no pairs compared");
  if (o.pass) o.detail = std::to_string(total) + " pairs";
  return o;
}

Outcome linearity(const Artifacts& a) {
  Outcome o;
  std::size_t steps = 0, sampled = 0;
  for (const MatrixCell& c : a.cells)
    for (const StepReport& s : c.report.steps) {
      ++steps;
      o.require(s.linear.has_value(), cell_name(c) + ": step " + std::to_string(s.index) + " not tested");
      if (!s.linear) continue;
      if (!s.linear->exhaustive) ++sampled;
      o.require(std::ranges::find(s.linear->positions, s.declared_linear_pos) != s.linear->positions.end(),
                cell_name(c) + ": step " + std::to_string(s.index) + " not linear at the declared position");
    }
  if (o.pass) o.detail = std::to_string(steps) + " steps, " + std::to_string(sampled) + " sampled";
  return o;
}

Outcome theorem_b(const Artifacts& a) {
  Outcome o;
  for (const MatrixCell& c : a.cells) {
    const TheoremBRecord& r = c.theorem_b;
    o.require(r.m <= r.order_wN, cell_name(c) + ": m > |w(N)|");
    o.require((r.m == 1) == (r.order_wN == 1), cell_name(c) + ": m = 1 iff |w(N)| = 1 fails");
  }
  o.require(std::ranges::count(a.theorem_b_csv, '\n') == static_cast<std::ptrdiff_t>(a.cells.size() + 1),
            "CSV row count");
  return o;
}

Outcome theorem_a(const Artifacts& a) {
  Outcome o;
  o.require(a.theorem_a.size() == 3 * 2 * 3, "record count");
  for (const ConcisenessRecord& r : a.theorem_a) {
    std::string n;
    for (std::int64_t e : r.exponents) n += (n.empty() ? "" : ",") + std::to_string(e);
    const std::string name = r.group + " " + r.word + " (" + n + ")";
    o.require(r.identity_ok, name + ": composition identity fails");
    o.require(std::ranges::all_of(r.normal_subset_ok, std::identity{}), name + ": S_i not normal");
    o.require(std::ranges::all_of(r.power_containment_ok, std::identity{}), name + ": power containment fails");
  }
  return o;
}

Outcome counting(const Artifacts& a) {
  Outcome o;
  for (std::size_t i = 0; i < a.counting.size(); ++i)
    o.require(a.counting[i].second.ok(), a.counting[i].first + " k=" + std::to_string(a.counting_k[i].second));
  o.require(a.counting.size() == 8, "expected 8 checks");
  return o;
}

Outcome determinism(const fs::path& first, const fs::path& second) {
  Outcome o;
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(first)) {
    ++files;
    const fs::path other = second / entry.path().filename();
    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(in), {});
    };
    o.require(fs::exists(other) && slurp(entry.path()) == slurp(other), entry.path().filename().string() + " differs");
  }
  o.require(files >= 5, "artifacts missing");
  if (o.pass) o.detail = std::to_string(files) + " files identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::string artifacts = "acceptance_artifacts";
  std::uint64_t seed = 0;
  app.add_option("--artifacts", artifacts, "Directory for JSON/CSV artifacts")->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const fs::path root(artifacts);
  fs::remove_all(root);

  bool all = true;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& f) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << id << "  " << std::left << std::setw(36) << name
              << std::right << std::fixed << std::setprecision(2) << std::setw(7) << secs << "s";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
  };

  Artifacts first;
  const auto start = std::chrono::steady_clock::now();
  try {
    first = produce(root / "run1", seed, std::max(2u, std::thread::hardware_concurrency()));
  } catch (const std::exception& e) {
    std::cout << "FAIL  artifacts could not be produced: " << e.what() << std::endl;
    return 1;
  }
  const double produce_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "artifacts written to " << (root / "run1").string() << " in " << std::fixed << std::setprecision(2)
            << produce_secs << "s" << std::endl;

  report(1, "base-case fidelity", base_case);
  report(2, "length formula", length_formula);
  report(3, "verification matrix", [&] { return matrix(first); });
  report(4, "oracle equivalence", [&] { return oracle_equivalence(first); });
  report(5, "commutator-subgroup cross-check", [&] { return cross_check(first); });
  report(6, "linearity certification", [&] { return linearity(first); });
  report(7, "verbal width invariants", [&] { return theorem_b(first); });
  report(8, "power composition identity", [&] { return theorem_a(first); });
  report(9, "counting bound", [&] { return counting(first); });
  report(10, "determinism", [&] {
    produce(root / "run2", seed, 1);
    return determinism(root / "run1", root / "run2");
  });

  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << std::endl;
  return all ? 0 : 1;
}
