#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "virtgen/bitset.hpp"
#include "virtgen/group.hpp"

namespace virtgen {

/// A subgroup of a FiniteGroup as a bitset over element ids.
class SubgroupMask {
 public:
  SubgroupMask(FiniteGroup parent, Bitset bits) : parent_(std::move(parent)), bits_(std::move(bits)) {}

  const FiniteGroup& parent() const noexcept { return parent_; }
  const Bitset& bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return bits_.count(); }
  bool contains(Elem g) const noexcept { return bits_.test(g); }
  bool is_whole() const noexcept { return size() == parent_.order(); }
  bool is_trivial() const noexcept { return size() == 1; }
  std::vector<Elem> elements() const { return bits_.to_vector<Elem>(); }

  /// Full scan: contains the identity, closed under mul and inv.
  bool is_subgroup() const;

  friend bool operator==(const SubgroupMask& a, const SubgroupMask& b) {
    return a.parent_.identity_token() == b.parent_.identity_token() && a.bits_ == b.bits_;
  }

 private:
  FiniteGroup parent_;
  Bitset bits_;
};

/// Least subgroup containing `gens` (Dimino's algorithm).
SubgroupMask closure(const FiniteGroup& G, std::span<const Elem> gens);
inline SubgroupMask closure(const FiniteGroup& G, std::initializer_list<Elem> gens) {
  return closure(G, std::span<const Elem>(gens.begin(), gens.size()));
}

/// Extends a known subgroup (given by its mask and generators) by one element.
Bitset closure_extend(const FiniteGroup& G, const Bitset& subgroup,
                      std::span<const Elem> subgroup_gens, Elem extra);

/// Per-element cyclic subgroups.
struct CyclicStructure {
  std::vector<std::size_t> element_order;
  std::vector<Bitset> powers;                 // powers[g] = <g>
  std::vector<std::uint32_t> cyclic_index;    // id of <g> among `representatives`
  std::vector<Elem> representatives;          // least generator of each cyclic subgroup
};
CyclicStructure compute_cyclic_structure(const FiniteGroup& G);

struct Subgroup {
  Bitset mask;
  std::vector<Elem> gens;
  std::size_t order = 0;
};

/// All subgroups of G, found by cyclic extension, with the join table
/// join(H, <c>) for every subgroup H and cyclic subgroup <c>.
class SubgroupLattice {
 public:
  SubgroupLattice(const FiniteGroup& G, const Caps& limits);

  std::size_t size() const noexcept { return subgroups_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subgroups_[i]; }
  std::optional<std::size_t> find(const Bitset& mask) const;

  std::size_t trivial() const noexcept { return 0; }
  std::size_t whole() const noexcept { return whole_; }

  /// Index of <H, z>.
  std::size_t join(std::size_t h, Elem z) const;

  /// Longest strictly increasing chain from subgroup i up to G.
  std::size_t chain_above(std::size_t i) const { return chain_above_[i]; }
  std::size_t chain_length() const { return chain_above_[0]; }

  /// Maximal subgroups, by lattice index, in descending order of size.
  const std::vector<std::size_t>& maximal() const noexcept { return maximal_; }
  /// Bitset over maximal() positions: which maximal subgroups contain subgroup i.
  const Bitset& maximal_cover(std::size_t i) const { return cover_[i]; }
  /// Bitset over maximal() positions: which maximal subgroups contain element g.
  const Bitset& element_cover(Elem g) const { return element_cover_[g]; }
  /// True iff `gens` generate G, decided through maximal subgroup containment.
  bool generates(std::span<const Elem> gens) const;

 private:
  std::size_t order_;
  std::vector<Subgroup> subgroups_;
  std::unordered_map<Bitset, std::size_t, BitsetHash> index_;
  std::vector<std::uint32_t> cyclic_of_;      // element -> cyclic subgroup id
  std::vector<std::uint32_t> join_;           // [subgroup * ncyclic + cyclic]
  std::size_t ncyclic_ = 0;
  std::size_t whole_ = 0;
  std::vector<std::size_t> chain_above_;
  std::vector<std::size_t> maximal_;
  std::vector<Bitset> cover_;
  std::vector<Bitset> element_cover_;
};

/// Maximal proper subgroups; requires order <= Caps::lattice.
std::vector<SubgroupMask> maximal_subgroups(const FiniteGroup& G, const Caps& limits = caps());

/// Intersection of the maximal subgroups (G itself when G is trivial).
SubgroupMask frattini(const FiniteGroup& G, const Caps& limits = caps());

bool is_normal(const FiniteGroup& G, const Bitset& N);
SubgroupMask derived_subgroup(const FiniteGroup& G, const Bitset& H);
bool is_soluble(const FiniteGroup& G);
SubgroupMask center(const FiniteGroup& G);

enum class MinimalClass { cyclic_p_power, generalized_quaternion, neither };
std::string to_string(MinimalClass c);

struct MinimalClassification {
  MinimalClass kind = MinimalClass::neither;
  std::optional<SubgroupMask> unique_minimal;  // set whenever exactly one minimal subgroup exists
  std::size_t minimal_count = 0;
};
MinimalClassification classify_unique_minimal(const FiniteGroup& G);

/// Explicit isomorphism search against Q_(2^n) (n >= 3). Returns the images of the
/// Q_(2^n) elements in G, indexed like build of "Q:2^n", when one exists.
std::optional<std::vector<Elem>> quaternion_isomorphism(const FiniteGroup& G);

struct Quotient {
  FiniteGroup group;
  std::vector<Elem> projection;       // element of G -> coset id
  std::vector<Elem> representatives;  // coset id -> least element of the coset
};
/// G/N; throws PreconditionError if N is not normal.
Quotient quotient(const FiniteGroup& G, const SubgroupMask& N);

}  // namespace virtgen
