#include "ocw/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ocw/catalog.hpp"
#include "ocw/errors.hpp"
#include "ocw/verifier.hpp"

namespace ocw {

namespace {

struct RunConfig {
  std::string word;
  std::vector<std::string> words;
  std::string group;
  std::vector<std::string> groups;
  std::string bind;
  std::string plan_file;
  std::size_t cap = kDefaultElementCap;
  std::size_t enum_cap = kDefaultEnumerationCap;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  std::string mode = "exhaustive";
  std::vector<std::int64_t> exponents;
  std::vector<std::string> tuples{"G", "derived", "mixed"};
  std::string out;
  std::string format;
  bool timing = false;
  unsigned threads = 0;

  VerifyOptions verify_options() const {
    VerifyOptions o;
    o.enumeration_cap = enum_cap;
    o.mode = mode == "sampled" ? EnumerationMode::Sampled : EnumerationMode::Exhaustive;
    o.seed = seed;
    o.samples = samples;
    o.include_timing = timing;
    return o;
  }
};

// Splits on commas outside brackets, so gens:[[1,0],[0,1]] stays whole.
std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

CatalogEntry load_group(const std::string& spec, std::size_t cap) {
  if (spec.empty()) throw InputError("--group is required");
  if (spec.starts_with('@')) return load_group_file(spec.substr(1), cap);
  if (spec.ends_with(".json")) return load_group_file(spec, cap);
  return build(spec, cap);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

SubgroupHandle subgroup_from_generators(const CatalogEntry& entry, const nlohmann::json& gens, const std::string& what) {
  if (!gens.is_array()) throw InputError(what + ": expected a list of generators");
  std::vector<Permutation> perms;
  for (const auto& g : gens) {
    if (!g.is_array()) throw InputError(what + ": each generator is an image array");
    std::vector<Permutation::Point> images;
    for (const auto& x : g) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0) throw InputError(what + ": images must be non-negative integers");
      images.push_back(x.get<Permutation::Point>());
    }
    if (images.size() != entry.group->degree())
      throw InputError(what + ": generator has degree " + std::to_string(images.size()) + ", group has degree " +
                       std::to_string(entry.group->degree()));
    perms.emplace_back(std::move(images));
    if (!entry.group->contains(perms.back())) throw InputError(what + ": generator is not in " + entry.name);
  }
  return generate_subgroup(entry.group, perms);
}

struct Bindings {
  std::vector<SubgroupHandle> subgroups;
  std::vector<std::string> labels;
};

// N<i>=<label>|@file|gens:[...]; unbound positions default to G.
Bindings parse_bindings(const CatalogEntry& entry, const std::string& text, std::size_t r) {
  std::map<std::size_t, std::pair<std::string, SubgroupHandle>> bound;
  for (const std::string& item : split_top_level(text)) {
    const auto eq = item.find('=');
    if (item.size() < 2 || item[0] != 'N' || eq == std::string::npos)
      throw InputError("bad binding '" + item + "', expected N<i>=<label>|@file|gens:[...]");
    std::size_t index = 0;
    const std::string digits = item.substr(1, eq - 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("bad binding position in '" + item + "'");
    index = std::stoul(digits);
    if (index == 0 || index > r)
      throw InputError("binding N" + digits + " out of range, the word has " + std::to_string(r) + " variables");
    if (bound.contains(index)) throw InputError("N" + digits + " bound twice");
    const std::string value = item.substr(eq + 1);
    if (value.starts_with('@')) {
      nlohmann::json doc = read_json_file(value.substr(1));
      if (doc.is_object() && doc.contains("generators")) doc = doc["generators"];
      bound.emplace(index, std::pair{value, subgroup_from_generators(entry, doc, "N" + digits)});
    } else if (value.starts_with("gens:")) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(value.substr(5));
      } catch (const nlohmann::json::parse_error&) {
        throw InputError("N" + digits + ": cannot parse generator list " + value.substr(5));
      }
      bound.emplace(index, std::pair{value, subgroup_from_generators(entry, doc, "N" + digits)});
    } else {
      bound.emplace(index, std::pair{value, entry.label(value)});
    }
  }
  Bindings out;
  for (std::size_t i = 1; i <= r; ++i) {
    auto it = bound.find(i);
    out.labels.push_back(it == bound.end() ? "G" : it->second.first);
    out.subgroups.push_back(it == bound.end() ? entry.label("G") : it->second.second);
  }
  return out;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw InputError("cannot write " + cfg.out);
  file << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ------------------------------------------------------------- commands

int cmd_parse(const RunConfig& cfg, std::ostream& out) {
  const OuterWord w = parse_outer(cfg.word);
  const OuterWord s = w.standardized();
  std::vector<std::string> vars;
  for (const Variable& v : w.leaves()) vars.push_back(v.name());
  if (cfg.format == "json") {
    emit(cfg, dump({{"word", w.render()}, {"canonical", s.render()}, {"height", w.height()}, {"variables", vars}}), out);
  } else {
    std::ostringstream text;
    text << "word:      " << w.render() << "\ncanonical: " << s.render() << "\nheight:    " << w.height()
         << "\nvariables:";
    for (const std::string& v : vars) text << ' ' << v;
    text << '\n';
    emit(cfg, text.str(), out);
  }
  return kExitPass;
}

int cmd_plan(const RunConfig& cfg, std::ostream& out) {
  const OuterWord w = parse_outer(cfg.word);
  std::vector<std::string> transcript;
  const SeriesPlan plan = synthesize(w, transcript);
  const PlanValidation validation = validate_plan_static(plan);
  if (cfg.format == "text") {
    std::ostringstream text;
    for (const std::string& line : transcript) text << line << '\n';
    text << "V_0 = " << plan.V0.render() << '\n';
    for (const PlanStep& s : plan.steps)
      text << "V_" << s.index << " = " << s.V.render() << "   v = " << s.v.render() << "   linear at " << s.linear_pos
           << '\n';
    text << "t = " << plan.t << ", static validation " << (validation.ok() ? "ok" : "FAILED") << '\n';
    for (const PlanViolation& v : validation.violations)
      text << "  step " << v.step << " [" << v.clause << "] " << v.message << '\n';
    emit(cfg, text.str(), out);
  } else {
    nlohmann::json j = plan_to_json(plan);
    j["transcript"] = transcript;
    nlohmann::json violations = nlohmann::json::array();
    for (const PlanViolation& v : validation.violations)
      violations.push_back({{"step", v.step}, {"clause", v.clause}, {"message", v.message}});
    j["validation"] = {{"ok", validation.ok()}, {"violations", violations}};
    emit(cfg, dump(j), out);
  }
  return validation.ok() ? kExitPass : kExitFail;
}

std::string report_text(const PlanReport& rep) {
  std::ostringstream text;
  text << rep.word << " on " << rep.group << " (order " << rep.group_order << ")";
  for (std::size_t i = 0; i < rep.bindings.size(); ++i) text << (i ? ", " : " with ") << 'N' << i + 1 << '=' << rep.bindings[i];
  text << "\n  h = " << rep.h << ", t = " << rep.t << ", |w(N)| = " << rep.order_wN << ", |V_0| = " << rep.order_V0 << '\n';
  const std::pair<const char*, CheckStatus> checks[] = {
      {"endpoints", rep.endpoints},   {"normality", rep.normality},
      {"chain", rep.chain},           {"generation", rep.generation},
      {"linearity", rep.linearity},   {"t_bound", rep.t_bound},
      {"three_subgroup", rep.three_subgroup}, {"commutator_cross_check", rep.commutator_cross_check}};
  for (const auto& [name, status] : checks) text << "  " << std::left << std::setw(24) << name << to_string(status) << '\n';
  for (const StepReport& s : rep.steps) {
    text << "  V_" << s.index << ": |V| = " << s.order << ", section " << s.section_order << ", linear at";
    if (s.linear)
      for (std::size_t p : s.linear->positions) text << ' ' << p;
    text << " (declared " << s.declared_linear_pos << ")\n";
  }
  text << (rep.pass() ? "PASS" : "FAIL") << '\n';
  return text.str();
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const CatalogEntry entry = load_group(cfg.group, cfg.cap);
  SeriesPlan plan = cfg.plan_file.empty() ? synthesize(parse_outer(cfg.word)) : plan_from_json(read_json_file(cfg.plan_file));
  if (!cfg.plan_file.empty() && !cfg.word.empty() && parse_outer(cfg.word) != plan.word)
    throw InputError("--word does not match the word of " + cfg.plan_file);
  Bindings b = parse_bindings(entry, cfg.bind, plan.word.leaf_count());
  Environment env(entry.group, std::move(b.subgroups), {true, true});
  const PlanReport rep = verify_series(env, plan, cfg.verify_options(), b.labels);
  emit(cfg, cfg.format == "text" ? report_text(rep) : dump(report_to_json(rep)), out);
  if (!rep.any_completed()) return kExitCap;
  return rep.pass() ? kExitPass : kExitFail;
}

int cmd_theorem_a(const RunConfig& cfg, std::ostream& out) {
  const CatalogEntry entry = load_group(cfg.group, cfg.cap);
  const OuterWord w = parse_outer(cfg.word);
  std::vector<std::int64_t> exponents = cfg.exponents;
  if (exponents.empty()) exponents.assign(w.leaf_count(), 2);
  const ConcisenessRecord rec = theorem_a_record(entry.group, w, exponents, cfg.verify_options());
  if (cfg.format == "text") {
    std::ostringstream text;
    text << rec.word << " on " << rec.group << ", composed word " << rec.composed_word << "\n  |w{S}| = " << rec.m
         << ", |w(S)| = " << rec.order_wS << ", composed values " << rec.composed_values << "\n  identity "
         << (rec.identity_ok ? "holds" : "FAILS") << '\n'
         << (rec.pass() ? "PASS" : "FAIL") << '\n';
    emit(cfg, text.str(), out);
  } else {
    emit(cfg, dump(record_to_json(rec)), out);
  }
  return rec.pass() ? kExitPass : kExitFail;
}

const std::vector<std::string>& default_survey_groups() {
  static const std::vector<std::string> groups{"symmetric:4", "alternating:5", "dihedral:8", "dicyclic:2",
                                               "heisenberg:3", "direct_product:cyclic:2*symmetric:4"};
  return groups;
}

std::vector<std::string> default_survey_words() {
  return {"[x1,x2]", lower_central_word(3).render(), lower_central_word(4).render(), derived_word(2).render()};
}

int cmd_survey(const RunConfig& cfg, std::ostream& out) {
  const std::vector<std::string> group_specs = cfg.groups.empty() ? default_survey_groups() : cfg.groups;
  const std::vector<std::string> word_texts = cfg.words.empty() ? default_survey_words() : cfg.words;
  std::vector<CatalogEntry> entries;
  for (const std::string& g : group_specs) entries.push_back(load_group(g, cfg.cap));
  std::vector<OuterWord> words;
  for (const std::string& w : word_texts) words.push_back(parse_outer(w));

  std::vector<SurveyCell> cells;
  for (const CatalogEntry& e : entries)
    for (const OuterWord& w : words)
      for (const auto& [name, labels] : standard_tuples(w.leaf_count()))
        if (std::ranges::find(cfg.tuples, name) != cfg.tuples.end()) cells.push_back({&e, w, name, labels});

  const std::vector<SurveyResult> results = run_survey(cells, cfg.verify_options(), cfg.threads);
  bool pass = true;
  for (const SurveyResult& r : results) pass = pass && r.report.pass() && r.theorem_b.invariants_hold();
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < cells.size(); ++i)
      rows.push_back({{"tuple", cells[i].tuple_name},
                      {"report", report_to_json(results[i].report)},
                      {"theorem_b", record_to_json(results[i].theorem_b)}});
    emit(cfg, dump(rows), out);
  } else {
    emit(cfg, survey_csv(cells, results), out);
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_catalog_list(const RunConfig& cfg, std::ostream& out) {
  std::ostringstream text;
  text << std::left << std::setw(40) << "name" << std::setw(8) << "order" << std::setw(8) << "degree" << "labels\n";
  for (const std::string& spec : catalog_examples()) {
    const CatalogEntry e = build(spec, cfg.cap);
    text << std::setw(40) << e.name << std::setw(8) << e.group->order() << std::setw(8) << e.group->degree();
    for (std::size_t i = 0; i < e.labels.size(); ++i)
      text << (i ? " " : "") << e.labels[i].first << '(' << e.labels[i].second.order() << ')';
    text << '\n';
  }
  text << "families:";
  for (const std::string& f : catalog_families()) text << ' ' << f;
  text << '\n';
  emit(cfg, text.str(), out);
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outer commutator words: series synthesis and verification on finite groups", "ocw"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cap", cfg.cap, "Largest group or subgroup built element by element")->capture_default_str();
    sub->add_option("--enum-cap", cfg.enum_cap, "Largest tuple space walked exhaustively")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "Tuples drawn per sampled check")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed of the sampler")->capture_default_str();
    sub->add_option("--mode", cfg.mode, "exhaustive or sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "Write the output here instead of stdout");
    sub->add_flag("--timing", cfg.timing, "Include wall-clock time in reports");
  };

  CLI::App* parse = app.add_subcommand("parse", "Echo the canonical form, height and variables of a word");
  parse->add_option("--word", cfg.word, "Outer commutator word, e.g. [[x1,x2],x3]")->required();
  parse->add_option("--out", cfg.out);
  parse->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* plan = app.add_subcommand("plan", "Synthesize the series of a word");
  plan->add_option("--word", cfg.word, "Outer commutator word")->required();
  plan->add_option("--out", cfg.out);
  plan->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* verify = app.add_subcommand("verify", "Verify a series on a concrete group");
  verify->add_option("--word", cfg.word, "Outer commutator word");
  verify->add_option("--plan", cfg.plan_file, "Verify this plan file instead of a synthesized one");
  verify->add_option("--group", cfg.group, "Catalog spec (symmetric:4) or group file (@g.json)")->required();
  verify->add_option("--bind", cfg.bind, "N<i>=<label>|@file|gens:[...], comma separated");
  add_common(verify);
  verify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* theorem_a = app.add_subcommand("theorem-a", "Check w(x1^n1,...){G} = w{S} with S_i the n_i-th powers");
  theorem_a->add_option("--word", cfg.word, "Outer commutator word")->required();
  theorem_a->add_option("--group", cfg.group)->required();
  theorem_a->add_option("--exponents", cfg.exponents, "Comma separated, one per variable (default all 2)")
      ->delimiter(',');
  add_common(theorem_a);
  theorem_a->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* survey = app.add_subcommand("survey", "Run the group x word x tuple matrix");
  survey->add_option("--group", cfg.groups, "Groups to include (repeatable)")->allow_extra_args(false);
  survey->add_option("--word", cfg.words, "Words to include (repeatable)")->allow_extra_args(false);
  survey->add_option("--tuples", cfg.tuples, "Subset of G,derived,mixed")
      ->delimiter(',')
      ->check(CLI::IsMember({"G", "derived", "mixed"}));
  survey->add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)");
  add_common(survey);
  survey->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

  CLI::App* catalog = app.add_subcommand("catalog", "Catalog of built-in groups");
  catalog->require_subcommand(1);
  CLI::App* list = catalog->add_subcommand("list", "List example groups with their labeled subgroups");
  list->add_option("--cap", cfg.cap)->capture_default_str();
  list->add_option("--out", cfg.out);

  std::vector<std::string> argv_storage{"ocw"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (e.get_name() == "CallForAllHelp" ? app.help("", CLI::AppFormatMode::All) : app.help());
      return kExitPass;
    }
    err << "ocw: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (parse->parsed()) {
      if (cfg.format.empty()) cfg.format = "text";
      return cmd_parse(cfg, out);
    }
    if (plan->parsed()) return cmd_plan(cfg, out);
    if (verify->parsed()) {
      if (cfg.word.empty() && cfg.plan_file.empty()) throw InputError("verify needs --word or --plan");
      return cmd_verify(cfg, out);
    }
    if (theorem_a->parsed()) return cmd_theorem_a(cfg, out);
    if (survey->parsed()) return cmd_survey(cfg, out);
    if (list->parsed()) return cmd_catalog_list(cfg, out);
  } catch (const ParseError& e) {
    err << "ocw: parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "ocw: " << e.what() << '\n';
    return kExitInput;
  } catch (const CapExceeded& e) {
    err << "ocw: " << e.what() << '\n';
    return kExitCap;
  }
  err << "ocw: no command\n";
  return kExitInput;
}

}  // namespace ocw
