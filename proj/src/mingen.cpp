#include "virtgen/mingen.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "virtgen/errors.hpp"

namespace virtgen {

namespace {

bool lattice_ok(const FiniteGroup& G, const Caps& limits) { return G.order() <= limits.lattice; }

void require_search_cap(const FiniteGroup& G, const Caps& limits) {
  if (G.order() > limits.search) throw CapExceeded("irredundant search order", G.order(), limits.search);
  if (G.order() > limits.lattice) throw CapExceeded("lattice order", G.order(), limits.lattice);
}

// Depth-first search over ascending independent sequences, tracking <X> and
// <X \ {e}> as lattice indices.
class IrredundantWalker {
 public:
  IrredundantWalker(const FiniteGroup& G, const Caps& limits)
      : G_(G), L_(G.lattice(limits)), n_(G.order()) {}

  // Visits generating sets of size in [min_size, max_size] extending `seed`;
  // extension elements are ascending and distinct from the seed.
  bool run(std::vector<Elem> seed, std::size_t min_size, std::size_t max_size,
           const std::function<bool(const std::vector<Elem>&)>& visit) {
    min_size_ = min_size;
    max_size_ = max_size;
    visit_ = &visit;
    seed_ = seed;
    std::vector<std::size_t> without;
    std::size_t full = L_.trivial();
    std::vector<Elem> members;
    for (Elem s : seed) {
      if (L_[full].mask.test(s)) return true;  // dependent seed
      for (std::size_t i = 0; i < without.size(); ++i) {
        without[i] = L_.join(without[i], s);
        if (L_[without[i]].mask.test(members[i])) return true;
      }
      without.push_back(full);
      full = L_.join(full, s);
      members.push_back(s);
    }
    return dfs(members, without, full, 0);
  }

 private:
  bool dfs(std::vector<Elem>& members, std::vector<std::size_t>& without, std::size_t full,
           Elem from) {
    if (full == L_.whole()) {
      if (members.size() < min_size_) return true;
      std::vector<Elem> sorted = members;
      std::sort(sorted.begin(), sorted.end());
      return (*visit_)(sorted);
    }
    if (members.size() >= max_size_) return true;
    // A strictly increasing chain from <X> to G bounds how many more elements fit.
    const std::size_t room = L_.chain_above(full);
    if (members.size() + room < min_size_) return true;
    const Bitset& inside = L_[full].mask;
    for (Elem z = from; z < n_; ++z) {
      if (inside.test(z)) continue;
      if (std::find(seed_.begin(), seed_.end(), z) != seed_.end()) continue;
      std::vector<std::size_t> next(without.size());
      bool independent = true;
      for (std::size_t i = 0; i < without.size() && independent; ++i) {
        next[i] = L_.join(without[i], z);
        if (L_[next[i]].mask.test(members[i])) independent = false;
      }
      if (!independent) continue;
      next.push_back(full);
      members.push_back(z);
      const bool go = dfs(members, next, L_.join(full, z), z + 1);
      members.pop_back();
      if (!go) return false;
    }
    return true;
  }

  const FiniteGroup& G_;
  const SubgroupLattice& L_;
  std::size_t n_;
  std::size_t min_size_ = 0;
  std::size_t max_size_ = 0;
  std::vector<Elem> seed_;
  const std::function<bool(const std::vector<Elem>&)>* visit_ = nullptr;
};

}  // namespace

bool generates(const FiniteGroup& G, std::span<const Elem> members, const Caps& limits) {
  if (lattice_ok(G, limits)) return G.lattice(limits).generates(members);
  return closure(G, members).is_whole();
}

bool is_irredundant_generating(const FiniteGroup& G, std::span<const Elem> members,
                               const Caps& limits) {
  if (!generates(G, members, limits)) return false;
  std::vector<Elem> rest;
  for (std::size_t i = 0; i < members.size(); ++i) {
    rest.clear();
    for (std::size_t j = 0; j < members.size(); ++j)
      if (j != i) rest.push_back(members[j]);
    if (generates(G, rest, limits)) return false;
  }
  return true;
}

bool IrredundantSet::valid() const {
  if (!closure(parent, members).is_whole()) return false;
  std::vector<Elem> rest;
  for (std::size_t i = 0; i < members.size(); ++i) {
    rest.clear();
    for (std::size_t j = 0; j < members.size(); ++j)
      if (j != i) rest.push_back(members[j]);
    if (closure(parent, rest).is_whole()) return false;
  }
  return true;
}

std::string IrredundantSet::describe() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ", ";
    out += parent.name(members[i]);
  }
  return out + "}";
}

std::size_t rank_d(const FiniteGroup& G, const Caps& limits) {
  if (G.order() == 1) return 0;
  if (G.order() > limits.rank) throw CapExceeded("rank order", G.order(), limits.rank);
  if (lattice_ok(G, limits)) {
    // Shortest path trivial -> G where each step joins one cyclic subgroup.
    const SubgroupLattice& L = G.lattice(limits);
    const auto& cs = G.cyclic_structure();
    std::vector<std::size_t> dist(L.size(), static_cast<std::size_t>(-1));
    std::deque<std::size_t> queue{L.trivial()};
    dist[L.trivial()] = 0;
    while (!queue.empty()) {
      const std::size_t h = queue.front();
      queue.pop_front();
      if (h == L.whole()) return dist[h];
      for (Elem r : cs.representatives) {
        const std::size_t j = L.join(h, r);
        if (dist[j] == static_cast<std::size_t>(-1)) {
          dist[j] = dist[h] + 1;
          queue.push_back(j);
        }
      }
    }
    throw Error("rank_d: lattice walk did not reach G");
  }
  for (Elem g = 1; g < G.order(); ++g)
    if (G.element_order(g) == G.order()) return 1;
  // Pair search; most pairs generate in the groups that get here.
  std::size_t budget = 2000;
  for (Elem x = 1; x < G.order(); ++x)
    for (Elem y = x + 1; y < G.order(); ++y) {
      if (closure(G, {x, y}).is_whole()) return 2;
      if (--budget == 0) throw CapExceeded("rank pair search", 2001, 2000);
    }
  throw CapExceeded("rank pair search", 2001, 2000);
}

void enumerate_irredundant(const FiniteGroup& G, std::size_t size_bound,
                           const std::function<bool(const std::vector<Elem>&)>& visit,
                           const Caps& limits) {
  require_search_cap(G, limits);
  if (G.order() == 1) {
    visit({});
    return;
  }
  IrredundantWalker(G, limits).run({}, 0, size_bound, visit);
}

std::optional<IrredundantSet> irredundant_of_size(const FiniteGroup& G, std::size_t k,
                                                  const Caps& limits) {
  require_search_cap(G, limits);
  if (G.order() == 1) {
    if (k == 0) return IrredundantSet{G, {}};
    return std::nullopt;
  }
  std::optional<IrredundantSet> found;
  IrredundantWalker(G, limits).run({}, k, k, [&](const std::vector<Elem>& s) {
    found = IrredundantSet{G, s};
    return false;
  });
  return found;
}

TarskiTable tarski_table(const FiniteGroup& G, const Caps& limits) {
  require_search_cap(G, limits);
  TarskiTable t;
  t.group = G.label();
  if (G.order() == 1) {
    t.witnesses.emplace(0, IrredundantSet{G, {}});
    t.gap_free = true;
    return t;
  }
  const SubgroupLattice& L = G.lattice(limits);
  t.search_bound = L.chain_length() + 1;
  for (std::size_t k = 1; k <= t.search_bound; ++k)
    if (auto w = irredundant_of_size(G, k, limits)) t.witnesses.emplace(k, std::move(*w));
  if (t.witnesses.empty()) throw Error("tarski_table: no generating set found");
  t.d = t.witnesses.begin()->first;
  t.m = t.witnesses.rbegin()->first;
  t.gap_free = t.witnesses.size() == t.m - t.d + 1;
  return t;
}

std::string tarski_csv(const std::vector<TarskiTable>& tables, bool header) {
  std::ostringstream os;
  if (header) os << "group,d,m,size,witness\n";
  for (const auto& t : tables)
    for (const auto& [size, w] : t.witnesses) {
      os << t.group << ',' << t.d << ',' << t.m << ',' << size << ',';
      for (std::size_t i = 0; i < w.members.size(); ++i) os << (i ? " " : "") << w.members[i];
      os << '\n';
    }
  return os.str();
}

nlohmann::ordered_json to_json(const TarskiTable& t) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["report"] = "tarski";
  j["group"] = t.group;
  j["d"] = t.d;
  j["m"] = t.m;
  j["search_bound"] = t.search_bound;
  j["gap_free"] = t.gap_free;
  auto& arr = j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& [size, w] : t.witnesses) {
    nlohmann::ordered_json e;
    e["size"] = size;
    e["members"] = w.members;
    auto& names = e["names"] = nlohmann::ordered_json::array();
    for (Elem g : w.members) names.push_back(w.parent.name(g));
    arr.push_back(e);
  }
  return j;
}

IrredundantSet lift_minimal(const FiniteGroup& G, const SubgroupMask& N,
                            std::span<const Elem> coset_reps, const Caps& limits) {
  if (!is_normal(G, N.bits())) throw PreconditionError("lift_minimal: N is not normal");
  const auto ngens = [&] {
    std::vector<Elem> gens;
    Bitset mask(G.order());
    mask.set(0);
    N.bits().for_each([&](std::size_t x) {
      if (mask.test(x)) return;
      mask = closure_extend(G, mask, gens, static_cast<Elem>(x));
      gens.push_back(static_cast<Elem>(x));
    });
    return gens;
  }();

  // Irredundancy of the cosets in G/N, tested as <Y', N> in G.
  auto generates_mod_n = [&](const std::vector<Elem>& ys) {
    std::vector<Elem> all = ys;
    all.insert(all.end(), ngens.begin(), ngens.end());
    return generates(G, all, limits);
  };
  std::vector<Elem> Y(coset_reps.begin(), coset_reps.end());
  if (!generates_mod_n(Y)) throw PreconditionError("lift_minimal: cosets do not generate G/N");
  for (std::size_t i = 0; i < Y.size(); ++i) {
    std::vector<Elem> rest;
    for (std::size_t j = 0; j < Y.size(); ++j)
      if (j != i) rest.push_back(Y[j]);
    if (generates_mod_n(rest) || N.contains(Y[i]))
      throw PreconditionError("lift_minimal: cosets are not irredundant in G/N");
  }

  std::vector<Elem> Z = ngens;
  std::sort(Z.begin(), Z.end());
  std::vector<bool> keep(Z.size(), true);
  for (std::size_t i = 0; i < Z.size(); ++i) {
    std::vector<Elem> trial = Y;
    for (std::size_t j = 0; j < Z.size(); ++j)
      if (keep[j] && j != i) trial.push_back(Z[j]);
    if (generates(G, trial, limits)) keep[i] = false;
  }
  std::vector<Elem> members = Y;
  for (std::size_t j = 0; j < Z.size(); ++j)
    if (keep[j]) members.push_back(Z[j]);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return IrredundantSet{G, std::move(members)};
}

std::vector<Elem> gaschutz_search(const FiniteGroup& G, const SubgroupMask& N,
                                  std::span<const Elem> coset_reps, const Caps& limits) {
  if (!is_normal(G, N.bits())) throw PreconditionError("gaschutz_search: N is not normal");
  const std::size_t k = coset_reps.size();
  const auto nelems = N.elements();
  double space = 1;
  for (std::size_t i = 0; i < k; ++i) space *= static_cast<double>(nelems.size());
  if (space > static_cast<double>(limits.gaschutz))
    throw CapExceeded("gaschutz search space", static_cast<std::size_t>(std::min(space, 1e18)),
                      limits.gaschutz);
  {
    std::vector<Elem> all(coset_reps.begin(), coset_reps.end());
    all.insert(all.end(), nelems.begin(), nelems.end());
    if (!generates(G, all, limits))
      throw PreconditionError("gaschutz_search: cosets do not generate G/N");
  }
  if (lattice_ok(G, limits) && k < rank_d(G, limits))
    throw PreconditionError("gaschutz_search: fewer cosets than d(G)");

  std::vector<std::size_t> idx(k, 0);
  std::vector<Elem> trial(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) trial[i] = G.mul(coset_reps[i], nelems[idx[i]]);
    if (generates(G, trial, limits)) {
      std::vector<Elem> out(k);
      for (std::size_t i = 0; i < k; ++i) out[i] = nelems[idx[i]];
      return out;
    }
    std::size_t i = 0;
    while (i < k && ++idx[i] == nelems.size()) idx[i++] = 0;
    if (i == k) break;
  }
  if (k == 0 && G.order() == 1) return {};
  throw Error("gaschutz_search: no lift found");
}

// ---------------------------------------------------------------------------

IndependenceOracle::IndependenceOracle(const FiniteGroup& G, const Caps& limits)
    : G_(G), L_(nullptr), avoiding_(G.order()) {
  if (G.order() > limits.independence)
    throw CapExceeded("independence order", G.order(), limits.independence);
  L_ = &G.lattice(limits);
  const auto& reps = G.cyclic_structure().representatives;
  for (std::size_t k = 0; k < L_->size(); ++k) {
    if (k == L_->whole()) continue;
    // Elements lying in every proper join of K: K is maximal among subgroups avoiding them.
    Bitset forced(G.order());
    forced.set_all();
    for (Elem r : reps) {
      const std::size_t j = L_->join(k, r);
      if (j != k) forced &= (*L_)[j].mask;
    }
    forced.subtract((*L_)[k].mask);
    forced.for_each([&](std::size_t x) { avoiding_[x].push_back(k); });
  }
}

std::optional<std::vector<Elem>> IndependenceOracle::witness(Elem x, Elem y) const {
  if (x == y) throw PreconditionError("independence: loops are excluded");
  if (x == 0 || y == 0) return std::nullopt;
  const auto& L = *L_;
  for (std::size_t a : avoiding_[x]) {
    if (!L[a].mask.test(y)) continue;
    for (std::size_t b : avoiding_[y]) {
      if (!L[b].mask.test(x)) continue;
      const auto meet = L.find(L[a].mask & L[b].mask);
      if (!meet) throw Error("independence: intersection missing from lattice");
      Bitset c = L.maximal_cover(*meet) & L.element_cover(x);
      c &= L.element_cover(y);
      if (c.any()) continue;
      std::vector<Elem> extra = L[*meet].gens;
      std::sort(extra.begin(), extra.end());
      std::vector<bool> keep(extra.size(), true);
      for (std::size_t i = 0; i < extra.size(); ++i) {
        std::vector<Elem> trial{x, y};
        for (std::size_t j = 0; j < extra.size(); ++j)
          if (keep[j] && j != i) trial.push_back(extra[j]);
        if (L.generates(trial)) keep[i] = false;
      }
      std::vector<Elem> out{x, y};
      for (std::size_t j = 0; j < extra.size(); ++j)
        if (keep[j]) out.push_back(extra[j]);
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return std::nullopt;
}

std::optional<IrredundantSet> contains_in_irredundant(const FiniteGroup& G, Elem x, Elem y,
                                                      const Caps& limits) {
  if (x == y) throw PreconditionError("contains_in_irredundant: x == y");
  IndependenceOracle oracle(G, limits);
  if (auto w = oracle.witness(x, y)) return IrredundantSet{G, std::move(*w)};
  return std::nullopt;
}

std::optional<IrredundantSet> contains_in_irredundant_search(const FiniteGroup& G, Elem x, Elem y,
                                                             const Caps& limits) {
  if (x == y) throw PreconditionError("contains_in_irredundant: x == y");
  if (G.order() > limits.independence)
    throw CapExceeded("independence order", G.order(), limits.independence);
  const auto& cs = G.cyclic_structure();
  if (cs.powers[y].test(x) || cs.powers[x].test(y)) return std::nullopt;
  std::optional<IrredundantSet> found;
  IrredundantWalker(G, limits).run({x, y}, 0, G.order(), [&](const std::vector<Elem>& s) {
    found = IrredundantSet{G, s};
    return false;
  });
  return found;
}

}  // namespace virtgen
