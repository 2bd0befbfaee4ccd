#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "virtgen/group.hpp"
#include "virtgen/subgroups.hpp"

namespace virtgen {

/// Generating set of G none of whose proper subsets generates G.
struct IrredundantSet {
  FiniteGroup parent;
  std::vector<Elem> members;  // ascending ids

  /// Direct closure check of both invariants.
  bool valid() const;
  std::string describe() const;
};

/// True iff `members` generate G (lattice covers when available, closure otherwise).
bool generates(const FiniteGroup& G, std::span<const Elem> members, const Caps& limits = caps());
bool is_irredundant_generating(const FiniteGroup& G, std::span<const Elem> members,
                               const Caps& limits = caps());

/// Least size of a generating set; 0 for the trivial group.
std::size_t rank_d(const FiniteGroup& G, const Caps& limits = caps());

/// Calls `visit` on every irredundant generating set of size <= size_bound, each set
/// once with ascending members. Returning false from `visit` stops the walk.
void enumerate_irredundant(const FiniteGroup& G, std::size_t size_bound,
                           const std::function<bool(const std::vector<Elem>&)>& visit,
                           const Caps& limits = caps());

/// Some irredundant generating set of exactly k elements, if one exists.
std::optional<IrredundantSet> irredundant_of_size(const FiniteGroup& G, std::size_t k,
                                                  const Caps& limits = caps());

struct TarskiTable {
  std::string group;
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t search_bound = 0;  // every size up to this bound was searched
  std::map<std::size_t, IrredundantSet> witnesses;
  bool gap_free = false;
};
TarskiTable tarski_table(const FiniteGroup& G, const Caps& limits = caps());
/// Rows `group,d,m,size,witness`, witness members separated by spaces.
std::string tarski_csv(const std::vector<TarskiTable>& tables, bool header = true);
nlohmann::ordered_json to_json(const TarskiTable& t);

/// Lifts an irredundant generating set of G/N, given by coset representatives in G,
/// to an irredundant generating set Y u Z of G with Z inside N.
IrredundantSet lift_minimal(const FiniteGroup& G, const SubgroupMask& N,
                            std::span<const Elem> coset_reps, const Caps& limits = caps());

/// Finds n_1..n_k in N with <y_1 n_1, .., y_k n_k> = G by exhaustive search.
std::vector<Elem> gaschutz_search(const FiniteGroup& G, const SubgroupMask& N,
                                  std::span<const Elem> coset_reps, const Caps& limits = caps());

/// Decides whether a pair lies in a common irredundant generating set.
///
/// x and y qualify iff there are subgroups A, B with y in A, x not in A, x in B,
/// y not in B and <x, y, A n B> = G. A and B may be taken maximal among the
/// subgroups avoiding x and y respectively, so only those are scanned.
class IndependenceOracle {
 public:
  explicit IndependenceOracle(const FiniteGroup& G, const Caps& limits = caps());
  const FiniteGroup& group() const noexcept { return G_; }
  std::optional<std::vector<Elem>> witness(Elem x, Elem y) const;
  bool adjacent(Elem x, Elem y) const { return witness(x, y).has_value(); }

 private:
  FiniteGroup G_;
  const SubgroupLattice* L_;
  std::vector<std::vector<std::size_t>> avoiding_;  // per element: maximal subgroups avoiding it
};

/// An irredundant generating set of G containing x and y, if any.
std::optional<IrredundantSet> contains_in_irredundant(const FiniteGroup& G, Elem x, Elem y,
                                                      const Caps& limits = caps());
/// Same question answered by plain backtracking over extensions of {x, y}.
std::optional<IrredundantSet> contains_in_irredundant_search(const FiniteGroup& G, Elem x, Elem y,
                                                             const Caps& limits = caps());

}  // namespace virtgen
