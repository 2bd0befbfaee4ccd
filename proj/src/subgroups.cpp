#include "virtgen/subgroups.hpp"

#include <algorithm>
#include <numeric>

#include "virtgen/errors.hpp"

namespace virtgen {

bool SubgroupMask::is_subgroup() const {
  if (bits_.size() != parent_.order() || !bits_.test(0)) return false;
  const auto elems = elements();
  for (Elem a : elems) {
    if (!bits_.test(parent_.inv(a))) return false;
    for (Elem b : elems)
      if (!bits_.test(parent_.mul(a, b))) return false;
  }
  return true;
}

Bitset closure_extend(const FiniteGroup& G, const Bitset& subgroup,
                      std::span<const Elem> subgroup_gens, Elem extra) {
  Bitset mask = subgroup;
  if (mask.test(extra)) return mask;
  std::vector<Elem> elems = subgroup.to_vector<Elem>();  // starts with the identity
  const std::size_t m = elems.size();
  std::vector<Elem> gens(subgroup_gens.begin(), subgroup_gens.end());
  gens.push_back(extra);

  // The new group is a union of right cosets H r; walk coset representatives.
  auto add_coset = [&](Elem r) {
    for (std::size_t i = 0; i < m; ++i) {
      const Elem e = G.mul(elems[i], r);
      mask.set(e);
      elems.push_back(e);
    }
  };
  add_coset(extra);
  for (std::size_t pos = m; pos < elems.size(); pos += m) {
    const Elem r = elems[pos];
    for (Elem s : gens) {
      const Elem e = G.mul(r, s);
      if (!mask.test(e)) add_coset(e);
    }
  }
  return mask;
}

SubgroupMask closure(const FiniteGroup& G, std::span<const Elem> gens) {
  Bitset mask(G.order());
  mask.set(0);
  std::vector<Elem> used;
  for (Elem g : gens) {
    if (g >= G.order()) throw PreconditionError("closure: element id out of range");
    if (mask.test(g)) continue;
    mask = closure_extend(G, mask, used, g);
    used.push_back(g);
  }
  return SubgroupMask(G, std::move(mask));
}

CyclicStructure compute_cyclic_structure(const FiniteGroup& G) {
  const std::size_t n = G.order();
  if (n > 16384) throw CapExceeded("cyclic structure order", n, 16384);
  CyclicStructure cs;
  cs.element_order.assign(n, 0);
  cs.powers.assign(n, Bitset());
  cs.cyclic_index.assign(n, 0);
  std::vector<bool> done(n, false);
  for (Elem g = 0; g < n; ++g) {
    if (done[g]) continue;
    std::vector<Elem> pw{0};
    for (Elem x = g; x != 0; x = G.mul(x, g)) pw.push_back(x);
    const std::size_t k = pw.size();
    Bitset mask(n);
    for (Elem x : pw) mask.set(x);
    const auto id = static_cast<std::uint32_t>(cs.representatives.size());
    cs.representatives.push_back(g);
    // g^j generates the same subgroup exactly when gcd(j, k) = 1.
    for (std::size_t j = 1; j <= k; ++j) {
      if (std::gcd(j, k) != 1) continue;
      const Elem h = pw[j % k];
      done[h] = true;
      cs.element_order[h] = k;
      cs.powers[h] = mask;
      cs.cyclic_index[h] = id;
    }
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Lattice

SubgroupLattice::SubgroupLattice(const FiniteGroup& G, const Caps& limits) : order_(G.order()) {
  if (order_ > limits.lattice) throw CapExceeded("lattice order", order_, limits.lattice);
  const CyclicStructure& cs = G.cyclic_structure();
  ncyclic_ = cs.representatives.size();
  cyclic_of_ = cs.cyclic_index;

  for (Elem r : cs.representatives) {
    Subgroup s{cs.powers[r], r == 0 ? std::vector<Elem>{} : std::vector<Elem>{r},
               cs.element_order[r]};
    index_.emplace(s.mask, subgroups_.size());
    subgroups_.push_back(std::move(s));
  }

  for (std::size_t i = 0; i < subgroups_.size(); ++i) {
    join_.resize((i + 1) * ncyclic_);
    for (std::size_t c = 0; c < ncyclic_; ++c) {
      const Elem r = cs.representatives[c];
      if (subgroups_[i].mask.test(r)) {
        join_[i * ncyclic_ + c] = static_cast<std::uint32_t>(i);
        continue;
      }
      Bitset m = closure_extend(G, subgroups_[i].mask, subgroups_[i].gens, r);
      auto it = index_.find(m);
      std::size_t idx;
      if (it != index_.end()) {
        idx = it->second;
      } else {
        if (subgroups_.size() >= limits.subgroups)
          throw CapExceeded("subgroup count", subgroups_.size() + 1, limits.subgroups);
        idx = subgroups_.size();
        std::vector<Elem> gens = subgroups_[i].gens;
        gens.push_back(r);
        const std::size_t ord = m.count();
        index_.emplace(m, idx);
        subgroups_.push_back(Subgroup{std::move(m), std::move(gens), ord});
      }
      join_[i * ncyclic_ + c] = static_cast<std::uint32_t>(idx);
    }
  }

  Bitset all(order_);
  all.set_all();
  whole_ = index_.at(all);

  // Longest chains to the top, processing larger subgroups first.
  std::vector<std::size_t> by_size(subgroups_.size());
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
    return subgroups_[a].order > subgroups_[b].order;
  });
  chain_above_.assign(subgroups_.size(), 0);
  for (std::size_t i : by_size) {
    std::size_t best = 0;
    bool any = false;
    for (std::size_t c = 0; c < ncyclic_; ++c) {
      const std::size_t j = join_[i * ncyclic_ + c];
      if (j == i) continue;
      best = std::max(best, chain_above_[j]);
      any = true;
    }
    chain_above_[i] = any ? best + 1 : 0;
  }

  // H is maximal iff every join with an outside element is G.
  for (std::size_t i : by_size) {
    if (i == whole_) continue;
    bool maximal = true;
    for (std::size_t c = 0; c < ncyclic_ && maximal; ++c) {
      const std::size_t j = join_[i * ncyclic_ + c];
      if (j != i && j != whole_) maximal = false;
    }
    if (maximal) maximal_.push_back(i);
  }

  cover_.assign(subgroups_.size(), Bitset(maximal_.size()));
  for (std::size_t i = 0; i < subgroups_.size(); ++i)
    for (std::size_t m = 0; m < maximal_.size(); ++m)
      if (subgroups_[i].mask.is_subset_of(subgroups_[maximal_[m]].mask)) cover_[i].set(m);
  element_cover_.assign(order_, Bitset(maximal_.size()));
  for (std::size_t m = 0; m < maximal_.size(); ++m)
    subgroups_[maximal_[m]].mask.for_each([&](std::size_t g) { element_cover_[g].set(m); });
}

std::optional<std::size_t> SubgroupLattice::find(const Bitset& mask) const {
  auto it = index_.find(mask);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SubgroupLattice::join(std::size_t h, Elem z) const {
  return join_[h * ncyclic_ + cyclic_of_[z]];
}

bool SubgroupLattice::generates(std::span<const Elem> gens) const {
  if (maximal_.empty()) return true;
  Bitset acc(maximal_.size());
  acc.set_all();
  for (Elem g : gens) acc &= element_cover_[g];
  return acc.none();
}

std::vector<SubgroupMask> maximal_subgroups(const FiniteGroup& G, const Caps& limits) {
  const SubgroupLattice& L = G.lattice(limits);
  std::vector<SubgroupMask> out;
  for (std::size_t i : L.maximal()) out.emplace_back(G, L[i].mask);
  return out;
}

SubgroupMask frattini(const FiniteGroup& G, const Caps& limits) {
  const SubgroupLattice& L = G.lattice(limits);
  Bitset acc(G.order());
  acc.set_all();
  for (std::size_t i : L.maximal()) acc &= L[i].mask;
  return SubgroupMask(G, std::move(acc));
}

// ---------------------------------------------------------------------------
// Normal structure

bool is_normal(const FiniteGroup& G, const Bitset& N) {
  for (Elem g : G.generators()) {
    bool ok = true;
    N.for_each([&](std::size_t n) {
      if (ok && !N.test(G.conj(static_cast<Elem>(n), g))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

namespace {

// Normal closure inside H (given by generators) of the subgroup generated by `seed`.
std::pair<Bitset, std::vector<Elem>> normal_closure_in(const FiniteGroup& G,
                                                       const std::vector<Elem>& h_gens,
                                                       const std::vector<Elem>& seed) {
  Bitset mask(G.order());
  mask.set(0);
  std::vector<Elem> gens;
  auto add = [&](Elem x) {
    if (mask.test(x)) return false;
    mask = closure_extend(G, mask, gens, x);
    gens.push_back(x);
    return true;
  };
  for (Elem s : seed) add(s);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (Elem h : h_gens)
        if (add(G.conj(gens[i], h))) changed = true;
  }
  return {std::move(mask), std::move(gens)};
}

std::vector<Elem> generating_set_of(const FiniteGroup& G, const Bitset& H) {
  Bitset mask(G.order());
  mask.set(0);
  std::vector<Elem> gens;
  H.for_each([&](std::size_t x) {
    if (mask.test(x)) return;
    mask = closure_extend(G, mask, gens, static_cast<Elem>(x));
    gens.push_back(static_cast<Elem>(x));
  });
  return gens;
}

}  // namespace

SubgroupMask derived_subgroup(const FiniteGroup& G, const Bitset& H) {
  const auto gens = generating_set_of(G, H);
  std::vector<Elem> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(G.commutator(gens[i], gens[j]));
  return SubgroupMask(G, normal_closure_in(G, gens, comms).first);
}

bool is_soluble(const FiniteGroup& G) {
  std::vector<Elem> gens = G.generators();
  Bitset current(G.order());
  current.set_all();
  for (std::size_t step = 0; step <= G.order(); ++step) {
    if (current.count() == 1) return true;
    std::vector<Elem> comms;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(G.commutator(gens[i], gens[j]));
    auto [next, next_gens] = normal_closure_in(G, gens, comms);
    if (next == current) return false;
    current = std::move(next);
    gens = std::move(next_gens);
  }
  return false;
}

SubgroupMask center(const FiniteGroup& G) {
  Bitset z(G.order());
  for (Elem x = 0; x < G.order(); ++x) {
    bool central = true;
    for (Elem g : G.generators())
      if (G.mul(x, g) != G.mul(g, x)) {
        central = false;
        break;
      }
    if (central) z.set(x);
  }
  return SubgroupMask(G, std::move(z));
}

// ---------------------------------------------------------------------------
// Unique minimal subgroups

std::string to_string(MinimalClass c) {
  switch (c) {
    case MinimalClass::cyclic_p_power: return "cyclic-p-power";
    case MinimalClass::generalized_quaternion: return "generalized-quaternion";
    case MinimalClass::neither: return "neither";
  }
  return "neither";
}

namespace {

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

}  // namespace

std::optional<std::vector<Elem>> quaternion_isomorphism(const FiniteGroup& G) {
  const std::size_t n = G.order();
  if (n < 8 || !is_power_of_two(n)) return std::nullopt;
  const auto half = static_cast<std::uint32_t>(n / 4);  // Dic_(n/4) = Q_n
  const FiniteGroup Q = FiniteGroup::generate(std::make_shared<DicyclicRep>(half),
                                              {{1, 0}, {0, 1}}, "Q");
  std::vector<std::size_t> ord(n);
  for (Elem g = 0; g < n; ++g) ord[g] = G.element_order(g);

  const auto x_q = *Q.find({1, 0});
  const auto y_q = *Q.find({0, 1});
  for (Elem a = 0; a < n; ++a) {
    if (ord[a] != n / 2) continue;
    const Elem central = G.pow(a, static_cast<long long>(n / 4));
    for (Elem b = 0; b < n; ++b) {
      if (ord[b] != 4 || G.mul(b, b) != central) continue;
      if (G.conj(a, b) != G.inv(a)) continue;
      // Candidate: x -> a, y -> b. Build the map on every element and check it.
      std::vector<Elem> image(n, 0);
      std::vector<bool> hit(n, false);
      bool ok = true;
      for (Elem q = 0; q < n && ok; ++q) {
        const Word w = *Q.word(q);
        Elem g = G.pow(a, w[0]);
        if (w[1]) g = G.mul(g, b);
        if (hit[g]) ok = false;
        hit[g] = true;
        image[q] = g;
      }
      for (Elem p = 0; p < n && ok; ++p)
        for (Elem q = 0; q < n && ok; ++q)
          if (image[Q.mul(p, q)] != G.mul(image[p], image[q])) ok = false;
      if (ok && image[x_q] == a && image[y_q] == b) return image;
    }
  }
  return std::nullopt;
}

MinimalClassification classify_unique_minimal(const FiniteGroup& G) {
  MinimalClassification out;
  const std::size_t n = G.order();
  std::vector<std::size_t> prime_order_count(n + 1, 0);
  Elem sample = 0;
  bool cyclic = false;
  for (Elem g = 1; g < n; ++g) {
    const std::size_t k = G.element_order(g);
    if (k == n) cyclic = true;
    if (is_prime(k)) {
      ++prime_order_count[k];
      sample = g;
    }
  }
  for (std::size_t p = 2; p <= n; ++p)
    if (prime_order_count[p]) out.minimal_count += prime_order_count[p] / (p - 1);
  if (out.minimal_count != 1) return out;

  out.unique_minimal = closure(G, {sample});
  if (cyclic) {
    out.kind = MinimalClass::cyclic_p_power;  // unique minimal subgroup forces a p-group
  } else if (is_power_of_two(n) && n >= 8 && !G.is_abelian() && quaternion_isomorphism(G)) {
    out.kind = MinimalClass::generalized_quaternion;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quotients

Quotient quotient(const FiniteGroup& G, const SubgroupMask& N) {
  if (N.bits().size() != G.order() || !N.contains(0))
    throw PreconditionError("quotient: mask does not belong to this group");
  if (!is_normal(G, N.bits())) throw PreconditionError("quotient: subgroup is not normal");
  const std::size_t n = G.order();
  const auto nelems = N.elements();
  std::vector<Elem> projection(n, static_cast<Elem>(-1));
  std::vector<Elem> reps;
  for (Elem g = 0; g < n; ++g) {
    if (projection[g] != static_cast<Elem>(-1)) continue;
    const auto id = static_cast<Elem>(reps.size());
    reps.push_back(g);
    for (Elem x : nelems) projection[G.mul(g, x)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> table(m * m);
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b) table[std::size_t{a} * m + b] = projection[G.mul(reps[a], reps[b])];
  std::vector<std::string> names(m);
  for (Elem a = 0; a < m; ++a) names[a] = a == 0 ? "N" : G.name(reps[a]) + "N";
  std::vector<Elem> gens;
  for (Elem g : G.generators()) {
    const Elem p = projection[g];
    if (p != 0 && std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
  }
  FiniteGroup Q = FiniteGroup::from_table(std::move(table), m, G.label() + "/N", std::move(names),
                                          std::move(gens));
  return Quotient{std::move(Q), std::move(projection), std::move(reps)};
}

}  // namespace virtgen
