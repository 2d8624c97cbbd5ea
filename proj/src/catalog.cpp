#include "ocw/catalog.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ocw/errors.hpp"

namespace ocw {

const SubgroupHandle& CatalogEntry::label(std::string_view name) const {
  for (const auto& [l, h] : labels)
    if (l == name) return h;
  throw InputError("group " + this->name + " has no subgroup labeled \"" + std::string(name) + "\"");
}

std::vector<SubgroupHandle> derived_series(const GroupPtr& g) {
  std::vector<SubgroupHandle> out{whole_group(g)};
  while (true) {
    SubgroupHandle next = commutator_subgroup(out.back(), out.back());
    bool stable = next == out.back();
    out.push_back(std::move(next));
    if (stable) break;
  }
  return out;
}

std::vector<SubgroupHandle> lower_central_series(const GroupPtr& g, std::size_t k) {
  std::vector<SubgroupHandle> out{whole_group(g)};
  const SubgroupHandle all = out.front();
  while (out.size() < k) out.push_back(commutator_subgroup(out.back(), all));
  return out;
}

namespace {

using Point = Permutation::Point;

Permutation cycle_of_length(std::size_t degree, std::size_t offset, std::size_t length) {
  std::vector<Point> c;
  for (std::size_t i = 0; i < length; ++i) c.push_back(static_cast<Point>(offset + i));
  return Permutation::from_cycles(degree, {c});
}

std::vector<std::size_t> parse_params(std::string_view text, const std::string& family) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument("bad");
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw InputError("bad parameter \"" + item + "\" for " + family);
    }
  }
  return out;
}

void expect_params(const std::vector<std::size_t>& p, std::size_t n, const std::string& family) {
  if (p.size() != n) throw InputError(family + " takes " + std::to_string(n) + " parameter(s)");
}

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Right regular representation of a group given by its multiplication on
/// indices 0..order-1: g acts as h -> h * g.
std::vector<Permutation> regular_generators(std::size_t order, const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                                            const std::vector<std::size_t>& gens) {
  if (order > kMaxRegularOrder)
    throw InputError("regular representations are limited to order " + std::to_string(kMaxRegularOrder));
  std::vector<Permutation> out;
  for (std::size_t g : gens) {
    std::vector<Point> images(order);
    for (std::size_t h = 0; h < order; ++h) images[h] = static_cast<Point>(mul(h, g));
    out.emplace_back(std::move(images));
  }
  return out;
}

struct Raw {
  std::size_t degree;
  std::vector<Permutation> gens;
  std::size_t expected_order;  // 0 = unchecked
};

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

Raw raw_group(std::string_view spec);

Raw raw_direct_product(std::string_view factors_text) {
  std::vector<Raw> factors;
  std::size_t start = 0;
  while (start <= factors_text.size()) {
    std::size_t star = factors_text.find('*', start);
    if (star == std::string_view::npos) star = factors_text.size();
    factors.push_back(raw_group(factors_text.substr(start, star - start)));
    start = star + 1;
  }
  if (factors.size() < 2) throw InputError("direct_product needs at least two factors separated by '*'");
  Raw out{0, {}, 1};
  for (const Raw& f : factors) out.degree += f.degree;
  std::size_t offset = 0;
  for (const Raw& f : factors) {
    for (const Permutation& p : f.gens) {
      std::vector<Point> images(out.degree);
      for (std::size_t i = 0; i < out.degree; ++i) images[i] = static_cast<Point>(i);
      for (std::size_t i = 0; i < f.degree; ++i) images[offset + i] = static_cast<Point>(offset + p[static_cast<Point>(i)]);
      out.gens.emplace_back(std::move(images));
    }
    out.expected_order = (out.expected_order && f.expected_order) ? out.expected_order * f.expected_order : 0;
    offset += f.degree;
  }
  return out;
}

Raw raw_group(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string family(spec.substr(0, colon));
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (family == "direct_product") return raw_direct_product(rest);

  const std::vector<std::size_t> p = parse_params(rest, family);
  if (family == "symmetric" || family == "alternating" || family == "cyclic") {
    expect_params(p, 1, family);
    const std::size_t n = p[0];
    if (n == 0) throw InputError(family + " needs n >= 1");
    if (family == "cyclic") return {n, {cycle_of_length(n, 0, n)}, n};
    if (family == "symmetric") {
      std::vector<Permutation> gens;
      if (n >= 2) gens = {Permutation::from_cycles(n, {{0, 1}}), cycle_of_length(n, 0, n)};
      return {n, gens, factorial(n)};
    }
    std::vector<Permutation> gens;
    if (n >= 3) {
      gens.push_back(Permutation::from_cycles(n, {{0, 1, 2}}));
      gens.push_back(n % 2 ? cycle_of_length(n, 0, n) : cycle_of_length(n, 1, n - 1));
    }
    return {n, gens, n >= 2 ? factorial(n) / 2 : 1};
  }
  if (family == "dihedral") {
    expect_params(p, 1, family);
    const std::size_t n = p[0];
    if (n < 3) throw InputError("dihedral needs n >= 3 (order 2n acting on n points)");
    std::vector<Point> reflection(n);
    for (std::size_t i = 0; i < n; ++i) reflection[i] = static_cast<Point>((n - i) % n);
    return {n, {cycle_of_length(n, 0, n), Permutation(reflection)}, 2 * n};
  }
  if (family == "dicyclic") {
    expect_params(p, 1, family);
    const std::size_t n = p[0];
    if (n == 0) throw InputError("dicyclic needs n >= 1");
    // a^k x^j  <->  k + 2n j ; x a = a^-1 x, x^2 = a^n
    const std::size_t m = 2 * n;
    auto mul = [m, n](std::size_t u, std::size_t v) {
      const std::size_t k = u % m, j = u / m, l = v % m, i = v / m;
      std::size_t e = j ? (k + m - l) % m : (k + l) % m;
      std::size_t x = j + i;
      if (x == 2) {
        e = (e + n) % m;
        x = 0;
      }
      return e + m * x;
    };
    return {2 * m, regular_generators(2 * m, mul, {1, m}), 2 * m};
  }
  if (family == "elementary_abelian") {
    expect_params(p, 2, family);
    const std::size_t prime = p[0], k = p[1];
    if (!is_prime(prime) || k == 0) throw InputError("elementary_abelian needs a prime p and k >= 1");
    std::size_t order = 1;
    for (std::size_t i = 0; i < k; ++i) {
      order *= prime;
      if (order > kMaxRegularOrder) throw InputError("elementary_abelian order exceeds " + std::to_string(kMaxRegularOrder));
    }
    auto mul = [prime, k](std::size_t u, std::size_t v) {
      std::size_t out = 0, scale = 1;
      for (std::size_t i = 0; i < k; ++i) {
        out += ((u / scale + v / scale) % prime) * scale;
        scale *= prime;
      }
      return out;
    };
    std::vector<std::size_t> gens;
    for (std::size_t i = 0, scale = 1; i < k; ++i, scale *= prime) gens.push_back(scale);
    return {order, regular_generators(order, mul, gens), order};
  }
  if (family == "heisenberg") {
    expect_params(p, 1, family);
    const std::size_t q = p[0];
    if (!is_prime(q)) throw InputError("heisenberg needs a prime p");
    // (a,b,c) <-> a + q b + q^2 c ; (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')
    auto mul = [q](std::size_t u, std::size_t v) {
      const std::size_t a = u % q, b = (u / q) % q, c = u / (q * q);
      const std::size_t a2 = v % q, b2 = (v / q) % q, c2 = v / (q * q);
      return (a + a2) % q + q * ((b + b2) % q) + q * q * ((c + c2 + a * b2) % q);
    };
    const std::size_t order = q * q * q;
    return {order, regular_generators(order, mul, {1, q}), order};
  }
  throw InputError("unknown group family \"" + family + "\"");
}

CatalogEntry make_entry(std::string name, GroupPtr g) {
  CatalogEntry e{std::move(name), g, {}};
  const SubgroupHandle all = whole_group(g);
  const std::vector<SubgroupHandle> derived = derived_series(g);
  auto derived_term = [&](std::size_t k) { return derived[std::min(k, derived.size() - 1)]; };
  e.labels.emplace_back("G", all);
  e.labels.emplace_back("trivial", trivial_subgroup(g));
  e.labels.emplace_back("center", center(g));
  e.labels.emplace_back("derived", derived_term(1));
  e.labels.emplace_back("derived2", derived_term(2));
  e.labels.emplace_back("derived3", derived_term(3));
  e.labels.emplace_back("gamma2", derived_term(1));
  e.labels.emplace_back("gamma3", commutator_subgroup(derived_term(1), all));
  return e;
}

}  // namespace

CatalogEntry build(std::string_view spec, std::size_t cap) {
  Raw raw = raw_group(spec);
  GroupPtr g = FiniteGroup::generate(std::string(spec), raw.degree, std::move(raw.gens), cap);
  if (raw.expected_order && g->order() != raw.expected_order)
    throw std::logic_error("catalog group " + std::string(spec) + " has order " + std::to_string(g->order()) +
                           ", expected " + std::to_string(raw.expected_order));
  return make_entry(std::string(spec), g);
}

const std::vector<std::string>& catalog_families() {
  static const std::vector<std::string> families{"symmetric", "alternating", "dihedral", "dicyclic", "cyclic",
                                                 "elementary_abelian", "heisenberg", "direct_product"};
  return families;
}

const std::vector<std::string>& catalog_examples() {
  static const std::vector<std::string> examples{
      "cyclic:1",   "cyclic:6",     "symmetric:3",          "symmetric:4",  "alternating:4",
      "alternating:5", "dihedral:4", "dihedral:8",          "dicyclic:2",   "dicyclic:3",
      "elementary_abelian:2,3",     "heisenberg:3",         "direct_product:cyclic:2*symmetric:4"};
  return examples;
}

// ---------------------------------------------------------------- files

namespace {

Permutation perm_from_json(const nlohmann::json& j, std::size_t degree, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an image array");
  std::vector<Point> images;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0) throw InputError(path + ": images must be non-negative integers");
    images.push_back(x.get<Point>());
  }
  if (images.size() != degree)
    throw InputError(path + ": expected " + std::to_string(degree) + " images, got " + std::to_string(images.size()));
  try {
    return Permutation(std::move(images));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<Permutation> perms_from_json(const nlohmann::json& j, std::size_t degree, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected a list of image arrays");
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(perm_from_json(j[i], degree, path + "/" + std::to_string(i)));
  return out;
}

}  // namespace

CatalogEntry group_from_json(const nlohmann::json& doc, std::size_t cap) {
  if (!doc.is_object()) throw InputError("group file: expected an object");
  for (const char* key : {"name", "degree", "generators"})
    if (!doc.contains(key)) throw InputError(std::string("group file: missing \"") + key + "\"");
  if (!doc["name"].is_string()) throw InputError("group file: \"name\" must be a string");
  if (!doc["degree"].is_number_integer() || doc["degree"].get<std::int64_t>() <= 0)
    throw InputError("group file: \"degree\" must be a positive integer");
  const auto name = doc["name"].get<std::string>();
  const auto degree = doc["degree"].get<std::size_t>();
  GroupPtr g = FiniteGroup::generate(name, degree, perms_from_json(doc["generators"], degree, "/generators"), cap);
  CatalogEntry e = make_entry(name, g);
  if (doc.contains("normal_subgroups")) {
    const auto& subs = doc["normal_subgroups"];
    if (!subs.is_object()) throw InputError("group file: \"normal_subgroups\" must be an object");
    for (const auto& [label, gens_json] : subs.items()) {
      const std::vector<Permutation> gens = perms_from_json(gens_json, degree, "/normal_subgroups/" + label);
      for (const Permutation& p : gens)
        if (!g->contains(p)) throw InputError("subgroup \"" + label + "\": generator " + p.to_string() + " is not in the group");
      SubgroupHandle h = generate_subgroup(g, gens);
      if (!is_normal(h)) throw InputError("subgroup \"" + label + "\" is not normal");
      std::erase_if(e.labels, [&](const auto& entry) { return entry.first == label; });
      e.labels.emplace_back(label, std::move(h));
    }
  }
  return e;
}

CatalogEntry load_group_file(const std::filesystem::path& path, std::size_t cap) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open group file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("group file " + path.string() + ": " + e.what());
  }
  return group_from_json(doc, cap);
}

}  // namespace ocw
