#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "virtgen/bitset.hpp"
#include "virtgen/caps.hpp"

namespace virtgen {

/// Element id inside a FiniteGroup; 0 is always the identity.
using Elem = std::uint32_t;

/// Concrete encoding of a group element (permutation images, matrix entries, ...).
using Word = std::vector<std::uint32_t>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : w) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Arithmetic on concrete element encodings. Implementations must be pure.
class Representation {
 public:
  virtual ~Representation() = default;
  virtual Word identity() const = 0;
  virtual Word multiply(const Word& a, const Word& b) const = 0;
  virtual Word inverse(const Word& a) const = 0;
  virtual std::string describe(const Word& a) const;
};

class SubgroupLattice;
struct CyclicStructure;

/// Immutable finite group with elements indexed 0..order-1 (0 = identity).
///
/// Groups up to Caps::table elements carry a full multiplication table.
/// Larger groups keep their element words in a hash index and multiply
/// through their Representation on demand. Copies share state.
class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup();

  /// Enumerates the group generated by `generators` inside `rep`.
  static FiniteGroup generate(std::shared_ptr<const Representation> rep,
                              const std::vector<Word>& generators, std::string label,
                              const Caps& limits = caps());

  /// Group with an explicitly enumerated element list; elements[0] must be the
  /// identity and the list must be closed under multiplication.
  static FiniteGroup from_elements(std::shared_ptr<const Representation> rep,
                                   std::vector<Word> elements, std::vector<Elem> generators,
                                   std::string label, const Caps& limits = caps());

  /// Group from a row-major Cayley table (table[a*n+b] = a*b), identity at 0.
  static FiniteGroup from_table(std::vector<Elem> table, std::size_t order, std::string label,
                                std::vector<std::string> names = {},
                                std::vector<Elem> generators = {});

  std::size_t order() const noexcept;
  const std::string& label() const noexcept;
  bool has_table() const noexcept;

  Elem identity() const noexcept { return 0; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem g, long long k) const;
  Elem conj(Elem g, Elem by) const;            // by^-1 g by
  Elem commutator(Elem a, Elem b) const;       // a^-1 b^-1 a b
  std::size_t element_order(Elem g) const;
  bool is_abelian() const;

  /// Generators recorded at construction (never contains the identity).
  const std::vector<Elem>& generators() const noexcept;

  std::string name(Elem g) const;
  std::optional<Word> word(Elem g) const;
  std::optional<Elem> find(const Word& w) const;
  const Representation* representation() const noexcept;

  Bitset empty_mask() const { return Bitset(order()); }

  /// Lazily computed structural caches; safe for concurrent readers.
  const CyclicStructure& cyclic_structure() const;
  const SubgroupLattice& lattice(const Caps& limits = caps()) const;

  /// Identity of the underlying shared state (equal for copies).
  const void* identity_token() const noexcept { return state_.get(); }

 private:
  struct State;
  explicit FiniteGroup(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  static void finish(State& s, const Caps& limits);
  std::shared_ptr<const State> state_;
};

/// Checks the group axioms: associativity (exhaustive for order <= 64, otherwise
/// 10^4 random triples), two-sided identity, inverses, closure of the table.
/// Returns a diagnostic on failure.
std::optional<std::string> check_axioms(const FiniteGroup& G, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Concrete representations

class PermutationRep final : public Representation {
 public:
  explicit PermutationRep(std::size_t degree) : degree_(degree) {}
  std::size_t degree() const noexcept { return degree_; }
  Word identity() const override;
  /// Left-to-right: apply a, then b.
  Word multiply(const Word& a, const Word& b) const override;
  Word inverse(const Word& a) const override;
  /// Cycle notation with 1-based points, e.g. "(1,2,3)(4,5)".
  std::string describe(const Word& a) const override;

  /// Parses "(1 2 3)(4 5)" / "(1,2,3)"; "()" is the identity.
  Word parse_cycles(const std::string& text) const;

 private:
  std::size_t degree_;
};

/// Z/n written multiplicatively as g^k.
class CyclicRep final : public Representation {
 public:
  explicit CyclicRep(std::uint32_t n) : n_(n) {}
  Word identity() const override { return {0}; }
  Word multiply(const Word& a, const Word& b) const override;
  Word inverse(const Word& a) const override;
  std::string describe(const Word& a) const override;

 private:
  std::uint32_t n_;
};

/// Dihedral group of order 2n: words {k, e} = r^k s^e with s r s = r^-1.
class DihedralRep final : public Representation {
 public:
  explicit DihedralRep(std::uint32_t n) : n_(n) {}
  Word identity() const override { return {0, 0}; }
  Word multiply(const Word& a, const Word& b) const override;
  Word inverse(const Word& a) const override;
  std::string describe(const Word& a) const override;

 private:
  std::uint32_t n_;
};

/// Dicyclic group of order 4n: words {k, e} = x^k y^e, x^(2n) = 1, y^2 = x^n,
/// y^-1 x y = x^-1. Generalized quaternion Q_(2^m) is the case n = 2^(m-2).
class DicyclicRep final : public Representation {
 public:
  explicit DicyclicRep(std::uint32_t n) : n_(n) {}
  Word identity() const override { return {0, 0}; }
  Word multiply(const Word& a, const Word& b) const override;
  Word inverse(const Word& a) const override;
  std::string describe(const Word& a) const override;

 private:
  std::uint32_t n_;
};

/// (Z/p)^k semidirect an elementary abelian 2-group F_2^r, where the basis
/// vector y_j of F_2^r negates coordinate c iff bit j of coordinate_masks[c] is
/// set. Words are {z_1, .., z_k, h} with z_c in [0, p) and h a bitmask.
class SignSemidirectRep final : public Representation {
 public:
  SignSemidirectRep(std::uint32_t p, std::vector<std::uint32_t> coordinate_masks);
  std::uint32_t modulus() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return masks_.size(); }
  Word identity() const override;
  Word multiply(const Word& a, const Word& b) const override;
  Word inverse(const Word& a) const override;
  std::string describe(const Word& a) const override;

 private:
  std::uint32_t act(std::uint32_t z, std::size_t coordinate, std::uint32_t h) const;
  std::uint32_t p_;
  std::vector<std::uint32_t> masks_;
};

/// Pairs of element ids of two existing groups, multiplied componentwise.
class IndexProductRep final : public Representation {
 public:
  IndexProductRep(FiniteGroup a, FiniteGroup b) : a_(std::move(a)), b_(std::move(b)) {}
  Word identity() const override { return {0, 0}; }
  Word multiply(const Word& x, const Word& y) const override;
  Word inverse(const Word& x) const override;
  std::string describe(const Word& x) const override;

 private:
  FiniteGroup a_;
  FiniteGroup b_;
};

/// Direct product with lexicographic element ids: (i, j) -> i*|b| + j.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                           const Caps& limits = caps());

}  // namespace virtgen
