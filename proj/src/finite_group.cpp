#include "ocw/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "ocw/errors.hpp"

namespace ocw {

namespace {

// Multiplication tables are built only when order^2 entries stay below this.
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 24;

struct BreadthFirst {
  std::vector<Permutation> elements;  // BFS order, identity first
  std::vector<std::size_t> parent;    // BFS index of the predecessor
  std::vector<std::size_t> via;       // generator used to reach it
  std::unordered_map<Permutation, std::size_t, PermutationHash> index;
};

BreadthFirst breadth_first(std::span<const Permutation> gens, std::size_t cap, std::size_t degree) {
  BreadthFirst bfs;
  const std::size_t n = gens.empty() ? degree : gens.front().degree();
  for (const Permutation& g : gens)
    if (g.degree() != n) throw InputError("generators have different degrees");
  bfs.elements.push_back(Permutation::identity(n));
  bfs.parent.push_back(0);
  bfs.via.push_back(0);
  bfs.index.emplace(bfs.elements.front(), 0);
  for (std::size_t head = 0; head < bfs.elements.size(); ++head) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation next = bfs.elements[head] * gens[k];
      if (bfs.index.contains(next)) continue;
      if (bfs.elements.size() >= cap) throw CapExceeded("group closure", bfs.elements.size() + 1);
      bfs.index.emplace(next, bfs.elements.size());
      bfs.elements.push_back(std::move(next));
      bfs.parent.push_back(head);
      bfs.via.push_back(k);
    }
  }
  return bfs;
}

}  // namespace

ElementSet closure(std::span<const Permutation> gens, std::size_t cap, std::size_t degree) {
  ElementSet out = breadth_first(gens, cap, degree).elements;
  std::sort(out.begin(), out.end());
  return out;
}

// -------------------------------------------------------------- FiniteGroup

std::shared_ptr<const FiniteGroup> FiniteGroup::generate(std::string name, std::size_t degree,
                                                         std::vector<Permutation> generators, std::size_t cap) {
  for (const Permutation& g : generators)
    if (g.degree() != degree) throw InputError("generator degree differs from group degree " + std::to_string(degree));
  BreadthFirst bfs = breadth_first(generators, cap, degree);

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->name_ = std::move(name);
  g->degree_ = degree;

  const std::size_t n = bfs.elements.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bfs.elements[a] < bfs.elements[b]; });
  std::vector<ElemId> id_of_bfs(n);
  for (std::size_t i = 0; i < n; ++i) id_of_bfs[order[i]] = static_cast<ElemId>(i);

  g->elements_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g->elements_.push_back(bfs.elements[order[i]]);
  for (std::size_t i = 0; i < n; ++i) g->index_.emplace(g->elements_[i], static_cast<ElemId>(i));
  g->identity_ = id_of_bfs[0];

  for (const Permutation& gen : generators) g->generator_ids_.push_back(g->index_.at(gen));
  g->generators_ = std::move(generators);

  g->inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g->inverse_[i] = g->index_.at(g->elements_[i].inverse());

  if (n * n <= kMaxTableEntries) {
    // right[x][k] = x * gen_k, then fill a * b along the BFS tree of b
    const std::size_t k = g->generators_.size();
    ElemIds right(n * k);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t j = 0; j < k; ++j) right[x * k + j] = g->index_.at(g->elements_[x] * g->generators_[j]);
    g->table_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      ElemId* row = &g->table_[a * n];
      row[g->identity_] = static_cast<ElemId>(a);
      for (std::size_t bi = 1; bi < n; ++bi) {
        const ElemId b = id_of_bfs[bi];
        const ElemId p = id_of_bfs[bfs.parent[bi]];
        row[b] = right[static_cast<std::size_t>(row[p]) * k + bfs.via[bi]];
      }
    }
  }
  return g;
}

ElemId FiniteGroup::id_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw InputError("permutation " + p.to_string() + " is not an element of " + name_);
  return it->second;
}

bool FiniteGroup::contains(const Permutation& p) const { return index_.contains(p); }

ElemId FiniteGroup::mul_slow(ElemId a, ElemId b) const { return index_.at(elements_[a] * elements_[b]); }

ElemId FiniteGroup::pow(ElemId a, std::int64_t k) const {
  ElemId base = k < 0 ? inv(a) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  ElemId result = identity_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

// ----------------------------------------------------------- SubgroupHandle

SubgroupHandle::SubgroupHandle(GroupPtr parent, ElemIds elements, ElemIds generators)
    : parent_(std::move(parent)), elements_(std::move(elements)), generators_(std::move(generators)) {
  mask_.assign(parent_->order(), 0);
  for (ElemId e : elements_) mask_[e] = 1;
}

bool SubgroupHandle::is_subset_of(const SubgroupHandle& other) const {
  return std::ranges::all_of(elements_, [&](ElemId e) { return other.contains(e); });
}

ElementSet SubgroupHandle::permutations() const {
  ElementSet out;
  out.reserve(elements_.size());
  for (ElemId e : elements_) out.push_back(parent_->element(e));
  return out;
}

ElemIds canonical(ElemIds ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

SubgroupHandle whole_group(const GroupPtr& g) {
  ElemIds all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return SubgroupHandle(g, std::move(all), g->generator_ids());
}

SubgroupHandle trivial_subgroup(const GroupPtr& g) { return SubgroupHandle(g, {g->identity()}, {}); }

namespace {

// Grows a subgroup one generator at a time; candidates already inside are skipped.
class SubgroupBuilder {
 public:
  explicit SubgroupBuilder(const GroupPtr& g) : g_(g), mask_(g->order(), 0) {
    mask_[g->identity()] = 1;
    elements_.push_back(g->identity());
  }

  bool contains(ElemId x) const { return mask_[x] != 0; }

  void add(ElemId x) {
    if (contains(x)) return;
    gens_.push_back(x);
    // every element of <H, x> is a product of old elements and generators
    std::deque<ElemId> queue(elements_.begin(), elements_.end());
    while (!queue.empty()) {
      ElemId e = queue.front();
      queue.pop_front();
      for (ElemId s : gens_) {
        ElemId p = g_->mul(e, s);
        if (!mask_[p]) {
          mask_[p] = 1;
          elements_.push_back(p);
          queue.push_back(p);
        }
      }
    }
  }

  const ElemIds& gens() const { return gens_; }

  SubgroupHandle finish() && {
    return SubgroupHandle(g_, canonical(std::move(elements_)), std::move(gens_));
  }

 private:
  GroupPtr g_;
  std::vector<char> mask_;
  ElemIds elements_;
  ElemIds gens_;
};

}  // namespace

SubgroupHandle generate_subgroup(const GroupPtr& g, std::span<const ElemId> gens) {
  SubgroupBuilder b(g);
  for (ElemId x : gens) b.add(x);
  return std::move(b).finish();
}

SubgroupHandle generate_subgroup(const GroupPtr& g, std::span<const Permutation> gens) {
  ElemIds ids;
  for (const Permutation& p : gens) ids.push_back(g->id_of(p));
  return generate_subgroup(g, ids);
}

SubgroupHandle normal_closure(const GroupPtr& g, std::span<const ElemId> seeds) {
  SubgroupBuilder b(g);
  for (ElemId x : seeds) b.add(x);
  // conjugate generators by the group generators until nothing new appears
  for (std::size_t i = 0; i < b.gens().size(); ++i) {
    const ElemId h = b.gens()[i];
    for (ElemId s : g->generator_ids()) b.add(g->conj(h, s));
  }
  return std::move(b).finish();
}

bool is_normal_subset(const FiniteGroup& g, std::span<const ElemId> subset) {
  std::vector<char> mask(g.order(), 0);
  for (ElemId e : subset) mask[e] = 1;
  for (ElemId e : subset)
    for (ElemId s : g.generator_ids())
      if (!mask[g.conj(e, s)]) return false;
  return true;
}

bool is_normal(const SubgroupHandle& h) {
  const FiniteGroup& g = h.group();
  for (ElemId x : h.generators())
    for (ElemId s : g.generator_ids())
      if (!h.contains(g.conj(x, s))) return false;
  return true;
}

SubgroupHandle commutator_subgroup(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (a.parent() != b.parent()) throw InputError("commutator of subgroups of different groups");
  const FiniteGroup& g = a.group();
  std::vector<char> seen(g.order(), 0);
  ElemIds values;
  for (ElemId x : a.elements())
    for (ElemId y : b.elements()) {
      ElemId c = g.comm(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        values.push_back(c);
      }
    }
  return generate_subgroup(a.parent(), canonical(std::move(values)));
}

SubgroupHandle commutator_subgroup_normal(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (a.parent() != b.parent()) throw InputError("commutator of subgroups of different groups");
  if (!is_normal(a) || !is_normal(b)) throw InputError("normal-closure commutator needs normal subgroups");
  const FiniteGroup& g = a.group();
  ElemIds seeds;
  for (ElemId x : a.generators())
    for (ElemId y : b.generators()) seeds.push_back(g.comm(x, y));
  return normal_closure(a.parent(), canonical(std::move(seeds)));
}

SubgroupHandle product(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (a.parent() != b.parent()) throw InputError("product of subgroups of different groups");
  if (!is_normal(a) && !is_normal(b)) throw InputError("product AB needs A or B normal");
  const FiniteGroup& g = a.group();
  ElemIds out;
  out.reserve(a.order() * b.order());
  for (ElemId x : a.elements())
    for (ElemId y : b.elements()) out.push_back(g.mul(x, y));
  ElemIds gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return SubgroupHandle(a.parent(), canonical(std::move(out)), std::move(gens));
}

SubgroupHandle center(const GroupPtr& g) {
  ElemIds z;
  for (ElemId e = 0; e < g->order(); ++e) {
    bool central = std::ranges::all_of(g->generator_ids(), [&](ElemId s) { return g->mul(e, s) == g->mul(s, e); });
    if (central) z.push_back(e);
  }
  return generate_subgroup(g, z);
}

ElemIds power_subset(const SubgroupHandle& n, std::int64_t exponent) {
  if (exponent == 0) throw InputError("power exponent must be non-zero");
  ElemIds out;
  for (ElemId e : n.elements()) out.push_back(n.group().pow(e, exponent));
  return canonical(std::move(out));
}

ElemIds normal_product_set(const FiniteGroup& g, std::span<const ElemId> s, std::size_t k, std::size_t cap) {
  ElemIds basis{g.identity()};
  for (ElemId x : s) {
    basis.push_back(x);
    basis.push_back(g.inv(x));
  }
  basis = canonical(std::move(basis));
  std::vector<char> mask(g.order(), 0);
  mask[g.identity()] = 1;
  ElemIds current{g.identity()};
  for (std::size_t step = 0; step < k; ++step) {
    ElemIds next = current;
    for (ElemId a : current)
      for (ElemId b : basis) {
        ElemId p = g.mul(a, b);
        if (!mask[p]) {
          mask[p] = 1;
          next.push_back(p);
          if (next.size() > cap) throw CapExceeded("normal product set", next.size());
        }
      }
    if (next.size() == current.size()) break;
    current = std::move(next);
  }
  return canonical(std::move(current));
}

bool congruent(ElemId g, ElemId h, const SubgroupHandle& v) {
  const FiniteGroup& grp = v.group();
  return v.contains(grp.mul(g, grp.inv(h)));
}

// ----------------------------------------------------------------- Quotient

Quotient::Quotient(const SubgroupHandle& v) : group_(v.parent()) {
  if (!is_normal(v)) throw InputError("quotient by a non-normal subgroup");
  const FiniteGroup& g = *group_;
  constexpr Coset kUnset = ~Coset{0};
  coset_.assign(g.order(), kUnset);
  for (ElemId x = 0; x < g.order(); ++x) {
    if (coset_[x] != kUnset) continue;
    const auto c = static_cast<Coset>(reps_.size());
    reps_.push_back(x);
    for (ElemId y : v.elements()) coset_[g.mul(x, y)] = c;
  }
  const std::size_t n = reps_.size();
  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    inverse_[a] = coset_[g.inv(reps_[a])];
    for (std::size_t b = 0; b < n; ++b) table_[a * n + b] = coset_[g.mul(reps_[a], reps_[b])];
  }
}

std::vector<Quotient::Coset> Quotient::image(std::span<const ElemId> ids) const {
  std::vector<Coset> out;
  out.reserve(ids.size());
  for (ElemId e : ids) out.push_back(coset_[e]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ocw
