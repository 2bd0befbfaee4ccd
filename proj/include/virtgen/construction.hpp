#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace virtgen {

/// F_2 vector of length 2t; bit j-1 is the coefficient of y_j (or the entry x_j of an
/// omega tuple).
using HVec = std::uint32_t;
using Triple = std::array<long long, 3>;

enum class Variant { printed, corrected };
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

/// Element n*h of the semidirect product: one integer triple per omega, plus h.
struct GSym {
  std::vector<Triple> n;  // indexed like Construction::omegas()
  HVec h = 0;
  friend bool operator==(const GSym&, const GSym&) = default;
};

/// The index set Omega for a given t, its primes, and the group law.
class Construction {
 public:
  explicit Construction(unsigned t);

  unsigned t() const noexcept { return t_; }
  /// Omega in lexicographic order, x_1 most significant.
  const std::vector<HVec>& omegas() const noexcept { return omegas_; }
  /// p_omega: the first 3^t odd primes, in the order of omegas().
  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return omegas_.size(); }
  /// Mask of the block <y_(2i-1), y_(2i)>, i in 1..t.
  HVec block_mask(unsigned i) const { return HVec{3} << (2 * (i - 1)); }
  /// True iff h negates the third coordinate of N_omega.
  static bool acts(HVec h, HVec omega) { return __builtin_parity(h & omega) != 0; }

  GSym identity() const;
  GSym mul(const GSym& a, const GSym& b) const;
  GSym inv(const GSym& a) const;
  GSym square(const GSym& a) const { return mul(a, a); }
  GSym commutator(const GSym& a, const GSym& b) const;  // a^-1 b^-1 a b
  /// Element with the same triple at every omega.
  GSym constant(const Triple& z, HVec h) const;

  std::string describe(const GSym& g) const;

 private:
  void check(const GSym& g) const;
  unsigned t_;
  std::vector<HVec> omegas_;
  std::vector<std::uint64_t> primes_;
};

struct GAlgebra {
  GSym mul, inv, square, commutator;
};
GAlgebra g_algebra(const Construction& C, const GSym& a, const GSym& b);

/// sigma_1..sigma_2t; v = (1,0,1) with y_(2i-1), w with y_(2i).
std::vector<GSym> sigma(const Construction& C, Variant variant);
Triple w_constant(Variant variant);

/// Some omega in Omega with <h1,omega> = <h2,omega> = 0, by brute force (t <= 8).
bool system_solvable(HVec h1, HVec h2, unsigned t);
/// Exists i with C_i invertible over F_2 and D_i = 0.
bool matrix_criterion(HVec h1, HVec h2, unsigned t);

struct ConditionResult {
  std::optional<unsigned> block;  // i with h in <y_(2i-1), y_(2i)> \ {1}
  bool pass = false;
  std::vector<std::string> reasons;
};
ConditionResult block_conditions(const Construction& C, const GSym& g);

struct OpennessWitness {
  bool pass = false;
  bool criterion = false;            // matrix_criterion(h1, h2)
  std::vector<long long> determinants;  // per omega
};
/// Rows g1^2, g2^2, [g1, g2] projected to each N_omega; pass iff the criterion
/// holds and every determinant is nonzero.
OpennessWitness openness_witness(const Construction& C, const GSym& g1, const GSym& g2);

long long det3(const Triple& a, const Triple& b, const Triple& c);

/// Builds (Z/p)^3 x| <h1, h2> for the given omega and checks that the images of
/// g1, g2 generate a subgroup containing all of (Z/p)^3.
bool finite_quotient_contains_n(const Construction& C, const GSym& g1, const GSym& g2,
                                std::size_t omega_index, std::uint64_t p);
/// Smallest `count` odd primes dividing no nonzero witness determinant at omega.
std::vector<std::uint64_t> admissible_primes(const Construction& C, const GSym& g1, const GSym& g2,
                                             std::size_t omega_index, std::size_t count = 3);

struct GeneratorPairCheck {
  HVec omega = 0;
  unsigned block = 0;
  long long determinant = 0;
  bool symbolic = false;
  std::vector<std::pair<std::uint64_t, bool>> quotient;  // p -> closure contains N
  bool second_coordinate_trapped = false;  // every closure element has z2 = 0 (mod p)
};
struct GeneratorPairReport {
  unsigned t = 0;
  Variant variant = Variant::corrected;
  std::vector<GeneratorPairCheck> checks;
  bool symbolic_pass = false;
  bool quotient_pass = false;
  bool formulas_match = false;  // squares and commutator of the printed pair have the expected values
  std::size_t block_index_in_h = 0;       // |H : <y_(2i-1), y_(2i)>|
  bool pass() const { return symbolic_pass && quotient_pass; }
};
GeneratorPairReport verify_generator_pairs(unsigned t, Variant variant);

/// Element adjacent to both g1 and g2 inside their common block.
GSym common_neighbor(const Construction& C, const GSym& g1, const GSym& g2);

struct CensusBlock {
  unsigned block = 0;
  std::size_t samples = 0;
  std::size_t same_block_pairs = 0;
  std::size_t common_neighbors = 0;   // constructed and verified
  std::size_t direct_edges = 0;       // pairs with a passing witness themselves
  std::size_t quotient_checks = 0;    // finite-quotient confirmations performed
};
struct CensusReport {
  unsigned t = 0;
  std::uint64_t seed = 0;
  std::vector<CensusBlock> blocks;
  std::size_t cross_block_pairs = 0;
  std::size_t cross_block_criterion_hits = 0;  // should stay 0
  std::size_t components = 0;
  bool pass = false;
  std::vector<std::string> failures;
};
/// Random samples per block, coordinates in [-5, 5], all meeting the conditions.
CensusReport component_census(unsigned t, std::size_t samples, std::uint64_t seed);
/// Census over given vertices; throws PreconditionError on a sample failing the conditions.
CensusReport component_census(const Construction& C, const std::vector<GSym>& vertices,
                              std::uint64_t seed = 0);
std::vector<GSym> sample_block(const Construction& C, unsigned block, std::size_t samples,
                               std::uint64_t seed);

nlohmann::ordered_json to_json(const CensusReport& r);
nlohmann::ordered_json to_json(const GeneratorPairReport& r);

}  // namespace virtgen
