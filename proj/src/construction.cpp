#include "virtgen/construction.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "virtgen/errors.hpp"
#include "virtgen/group.hpp"

namespace virtgen {

std::string to_string(Variant v) { return v == Variant::printed ? "paper" : "corrected"; }

Variant parse_variant(const std::string& s) {
  if (s == "paper" || s == "paper-literal" || s == "printed") return Variant::printed;
  if (s == "corrected") return Variant::corrected;
  throw ParseError("unknown variant '" + s + "' (expected paper or corrected)");
}

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long long det2(long long a, long long b, long long c, long long d) { return a * d - b * c; }

// Uniform integer in [lo, hi] from a 64-bit engine, independent of the library's
// distribution implementation.
long long bounded(std::mt19937_64& rng, long long lo, long long hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = (~std::uint64_t{0} / range) * range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<long long>(x % range);
}

}  // namespace

Construction::Construction(unsigned t) : t_(t) {
  if (t < 1 || t > 8) throw PreconditionError("construction needs 1 <= t <= 8");
  const unsigned bits = 2 * t;
  for (HVec key = 0; key < (HVec{1} << bits); ++key) {
    HVec omega = 0;
    for (unsigned j = 1; j <= bits; ++j)
      if ((key >> (bits - j)) & 1u) omega |= HVec{1} << (j - 1);
    bool ok = true;
    for (unsigned i = 0; i < t && ok; ++i)
      if (((omega >> (2 * i)) & 3u) == 0) ok = false;
    if (ok) omegas_.push_back(omega);
  }
  for (std::uint64_t p = 3; primes_.size() < omegas_.size(); p += 2)
    if (is_prime(p)) primes_.push_back(p);
}

void Construction::check(const GSym& g) const {
  if (g.n.size() != omegas_.size() || (g.h >> (2 * t_)) != 0)
    throw PreconditionError("element does not belong to the construction with t=" +
                            std::to_string(t_));
}

GSym Construction::identity() const { return GSym{std::vector<Triple>(size(), Triple{0, 0, 0}), 0}; }

GSym Construction::mul(const GSym& a, const GSym& b) const {
  check(a);
  check(b);
  GSym r;
  r.n.resize(size());
  for (std::size_t k = 0; k < size(); ++k) {
    const long long s = acts(a.h, omegas_[k]) ? -1 : 1;
    r.n[k] = {a.n[k][0] + b.n[k][0], a.n[k][1] + b.n[k][1], a.n[k][2] + s * b.n[k][2]};
  }
  r.h = a.h ^ b.h;
  return r;
}

GSym Construction::inv(const GSym& a) const {
  check(a);
  GSym r;
  r.n.resize(size());
  for (std::size_t k = 0; k < size(); ++k) {
    const long long s = acts(a.h, omegas_[k]) ? -1 : 1;
    r.n[k] = {-a.n[k][0], -a.n[k][1], -s * a.n[k][2]};
  }
  r.h = a.h;
  return r;
}

GSym Construction::commutator(const GSym& a, const GSym& b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

GSym Construction::constant(const Triple& z, HVec h) const {
  return GSym{std::vector<Triple>(size(), z), h};
}

std::string Construction::describe(const GSym& g) const {
  std::ostringstream os;
  os << "h=";
  for (unsigned j = 0; j < 2 * t_; ++j) os << ((g.h >> j) & 1u);
  os << " n=[";
  for (std::size_t k = 0; k < g.n.size(); ++k) {
    if (k) os << ' ';
    os << '(' << g.n[k][0] << ',' << g.n[k][1] << ',' << g.n[k][2] << ')';
  }
  os << ']';
  return os.str();
}

GAlgebra g_algebra(const Construction& C, const GSym& a, const GSym& b) {
  return GAlgebra{C.mul(a, b), C.inv(a), C.square(a), C.commutator(a, b)};
}

Triple w_constant(Variant variant) {
  return variant == Variant::printed ? Triple{1, 0, -1} : Triple{0, 1, -1};
}

std::vector<GSym> sigma(const Construction& C, Variant variant) {
  std::vector<GSym> out;
  for (unsigned i = 1; i <= C.t(); ++i) {
    out.push_back(C.constant({1, 0, 1}, HVec{1} << (2 * i - 2)));
    out.push_back(C.constant(w_constant(variant), HVec{1} << (2 * i - 1)));
  }
  return out;
}

bool system_solvable(HVec h1, HVec h2, unsigned t) {
  if (t > 8) throw PreconditionError("system_solvable: t > 8");
  const unsigned bits = 2 * t;
  for (HVec omega = 0; omega < (HVec{1} << bits); ++omega) {
    bool in_omega = true;
    for (unsigned i = 0; i < t && in_omega; ++i)
      if (((omega >> (2 * i)) & 3u) == 0) in_omega = false;
    if (!in_omega) continue;
    if (!Construction::acts(h1, omega) && !Construction::acts(h2, omega)) return true;
  }
  return false;
}

bool matrix_criterion(HVec h1, HVec h2, unsigned t) {
  for (unsigned i = 0; i < t; ++i) {
    const HVec block = HVec{3} << (2 * i);
    const unsigned a1 = (h1 >> (2 * i)) & 1u, a2 = (h1 >> (2 * i + 1)) & 1u;
    const unsigned b1 = (h2 >> (2 * i)) & 1u, b2 = (h2 >> (2 * i + 1)) & 1u;
    const bool invertible = ((a1 & b2) ^ (a2 & b1)) != 0;
    const bool d_zero = ((h1 | h2) & ~block) == 0;
    if (invertible && d_zero) return true;
  }
  return false;
}

ConditionResult block_conditions(const Construction& C, const GSym& g) {
  ConditionResult r;
  for (unsigned i = 1; i <= C.t(); ++i)
    if (g.h != 0 && (g.h & ~C.block_mask(i)) == 0) r.block = i;
  if (g.h == 0) r.reasons.push_back("condition 1: h is trivial");
  for (std::size_t k = 0; k < C.size(); ++k) {
    const auto& z = g.n[k];
    if (z[0] == 0 && z[1] == 0)
      r.reasons.push_back("condition 2: (z1, z2) = (0, 0) at omega #" + std::to_string(k));
    if (!Construction::acts(g.h, C.omegas()[k]) && z[2] == 0)
      r.reasons.push_back("condition 3: h centralizes N_omega and z3 = 0 at omega #" +
                          std::to_string(k));
  }
  r.pass = r.reasons.empty();
  return r;
}

long long det3(const Triple& a, const Triple& b, const Triple& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

OpennessWitness openness_witness(const Construction& C, const GSym& g1, const GSym& g2) {
  OpennessWitness w;
  w.criterion = matrix_criterion(g1.h, g2.h, C.t());
  const GSym s1 = C.square(g1), s2 = C.square(g2), c = C.commutator(g1, g2);
  bool all_nonzero = true;
  for (std::size_t k = 0; k < C.size(); ++k) {
    const long long d = det3(s1.n[k], s2.n[k], c.n[k]);
    w.determinants.push_back(d);
    if (d == 0) all_nonzero = false;
  }
  w.pass = w.criterion && all_nonzero;
  return w;
}

namespace {

Word quotient_word(const Triple& z, HVec h, std::uint64_t p) {
  const auto m = static_cast<long long>(p);
  Word w(4);
  for (int c = 0; c < 3; ++c) w[c] = static_cast<std::uint32_t>(((z[c] % m) + m) % m);
  w[3] = h;
  return w;
}

// Closure of the two images in (Z/p)^3 x| F_2^(2t); returns (contains N, every z2 == 0).
std::pair<bool, bool> quotient_closure(HVec omega, const Triple& z1, HVec h1, const Triple& z2,
                                       HVec h2, std::uint64_t p) {
  // Right-multiplication orbit of the identity: the generated subgroup.
  const SignSemidirectRep rep(static_cast<std::uint32_t>(p), {0, 0, omega});
  const Word gens[2] = {quotient_word(z1, h1, p), quotient_word(z2, h2, p)};
  std::unordered_set<Word, WordHash> seen{rep.identity()};
  std::vector<Word> queue{rep.identity()};
  std::size_t in_n = 0;
  bool trapped = true;
  for (std::size_t pos = 0; pos < queue.size(); ++pos) {
    const Word cur = queue[pos];
    if (cur[3] == 0) ++in_n;
    if (cur[1] != 0) trapped = false;
    for (const Word& g : gens) {
      Word next = rep.multiply(cur, g);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {in_n == p * p * p, trapped};
}

}  // namespace

bool finite_quotient_contains_n(const Construction& C, const GSym& g1, const GSym& g2,
                                std::size_t omega_index, std::uint64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw PreconditionError("quotient prime must be odd");
  return quotient_closure(C.omegas()[omega_index], g1.n[omega_index], g1.h, g2.n[omega_index], g2.h,
                          p)
      .first;
}

std::vector<std::uint64_t> admissible_primes(const Construction& C, const GSym& g1, const GSym& g2,
                                             std::size_t omega_index, std::size_t count) {
  const GSym s1 = C.square(g1), s2 = C.square(g2), c = C.commutator(g1, g2);
  const long long d = det3(s1.n[omega_index], s2.n[omega_index], c.n[omega_index]);
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; out.size() < count; p += 2)
    if (is_prime(p) && (d == 0 || d % static_cast<long long>(p) != 0)) out.push_back(p);
  return out;
}

GeneratorPairReport verify_generator_pairs(unsigned t, Variant variant) {
  if (t < 1 || t > 3) throw PreconditionError("verify_generator_pairs needs 1 <= t <= 3");
  const Construction C(t);
  GeneratorPairReport r;
  r.t = t;
  r.variant = variant;
  r.block_index_in_h = std::size_t{1} << (2 * t - 2);
  r.symbolic_pass = true;
  r.quotient_pass = true;
  r.formulas_match = true;
  const Triple v{1, 0, 1};
  const Triple w = w_constant(variant);
  for (std::size_t k = 0; k < C.size(); ++k) {
    const HVec omega = C.omegas()[k];
    for (unsigned i = 1; i <= t; ++i) {
      const HVec ya = HVec{1} << (2 * i - 2), yb = HVec{1} << (2 * i - 1);
      const GSym rho1 = C.constant(v, ya), rho2 = C.constant(w, yb);
      const Triple s1 = C.square(rho1).n[k], s2 = C.square(rho2).n[k];
      const Triple c = C.commutator(rho1, rho2).n[k];
      GeneratorPairCheck chk;
      chk.omega = omega;
      chk.block = i;
      chk.determinant = det3(s1, s2, c);
      chk.symbolic = matrix_criterion(ya, yb, t) && chk.determinant != 0;
      if (!chk.symbolic) r.symbolic_pass = false;
      chk.second_coordinate_trapped = true;
      for (std::uint64_t p : {3u, 5u, 7u}) {
        const auto [full, trapped] = quotient_closure(omega, v, ya, w, yb, p);
        chk.quotient.emplace_back(p, full);
        if (!full) r.quotient_pass = false;
        if (!trapped) chk.second_coordinate_trapped = false;
      }
      // Displayed values: squares (2,0,0^x*2), (2,0,-0^x*2) with the first two slots
      // of the second square being 2w; commutator (0,0,4) or (0,0,-2).
      const long long xa = (omega >> (2 * i - 2)) & 1u, xb = (omega >> (2 * i - 1)) & 1u;
      const Triple want_s1{2, 0, xa ? 0 : 2};
      const Triple want_s2{2 * w[0], 2 * w[1], xb ? 0 : -2};
      const Triple want_c{0, 0, (xa && xb) ? 4 : -2};
      if (s1 != want_s1 || s2 != want_s2 || c != want_c) r.formulas_match = false;
      r.checks.push_back(chk);
    }
  }
  return r;
}

GSym common_neighbor(const Construction& C, const GSym& g1, const GSym& g2) {
  const ConditionResult c1 = block_conditions(C, g1), c2 = block_conditions(C, g2);
  if (!c1.pass || !c2.pass) throw PreconditionError("common_neighbor: an input fails the conditions");
  if (!c1.block || !c2.block || *c1.block != *c2.block)
    throw PreconditionError("common_neighbor: inputs lie in different blocks");
  const unsigned i = *c1.block;
  const HVec mask = C.block_mask(i);
  HVec ht = 0;
  for (HVec cand = 1; cand <= mask; ++cand) {
    if ((cand & ~mask) != 0 || cand == g1.h || cand == g2.h) continue;
    ht = cand;
    break;
  }
  if (ht == 0) throw Error("common_neighbor: no free element of the block");

  GSym g;
  g.h = ht;
  g.n.resize(C.size());
  for (std::size_t k = 0; k < C.size(); ++k) {
    const auto& a = g1.n[k];
    const auto& b = g2.n[k];
    // (1,0), (0,1), then (p, q) with p, q >= 1 by p + q, then p.
    long long z1 = 1, z2 = 0;
    auto good = [&](long long x, long long y) {
      return det2(x, y, a[0], a[1]) != 0 && det2(x, y, b[0], b[1]) != 0;
    };
    bool found = good(1, 0);
    if (!found && good(0, 1)) {
      z1 = 0;
      z2 = 1;
      found = true;
    }
    for (long long s = 2; !found; ++s)
      for (long long p = 1; p < s && !found; ++p)
        if (good(p, s - p)) {
          z1 = p;
          z2 = s - p;
          found = true;
        }
    const bool eta = Construction::acts(ht, C.omegas()[k]);
    long long z3 = 0;
    auto forbidden = [&](long long x) { return eta ? (x == a[2] || x == b[2]) : x == 0; };
    while (forbidden(z3)) ++z3;
    g.n[k] = {z1, z2, z3};
  }

  const ConditionResult cg = block_conditions(C, g);
  if (!cg.pass || cg.block != c1.block) throw Error("common_neighbor: constructed element fails the conditions");
  if (!openness_witness(C, g1, g).pass || !openness_witness(C, g2, g).pass)
    throw Error("common_neighbor: witness fails for " + C.describe(g));
  return g;
}

std::vector<GSym> sample_block(const Construction& C, unsigned block, std::size_t samples,
                               std::uint64_t seed) {
  if (block < 1 || block > C.t()) throw PreconditionError("block out of range");
  std::mt19937_64 rng(seed * 1000003u + block);
  std::vector<GSym> out;
  out.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    GSym g;
    g.h = static_cast<HVec>(bounded(rng, 1, 3)) << (2 * (block - 1));
    g.n.resize(C.size());
    for (std::size_t k = 0; k < C.size(); ++k) {
      long long z1, z2, z3;
      do {
        z1 = bounded(rng, -5, 5);
        z2 = bounded(rng, -5, 5);
      } while (z1 == 0 && z2 == 0);
      const bool centralizes = !Construction::acts(g.h, C.omegas()[k]);
      do {
        z3 = bounded(rng, -5, 5);
      } while (centralizes && z3 == 0);
      g.n[k] = {z1, z2, z3};
    }
    out.push_back(std::move(g));
  }
  return out;
}

CensusReport component_census(const Construction& C, const std::vector<GSym>& vertices,
                              std::uint64_t seed) {
  CensusReport r;
  r.t = C.t();
  r.seed = seed;
  const std::size_t n = vertices.size();
  std::vector<unsigned> block(n);
  for (std::size_t v = 0; v < n; ++v) {
    const ConditionResult c = block_conditions(C, vertices[v]);
    if (!c.pass || !c.block)
      throw PreconditionError("census sample " + std::to_string(v) + " rejected: " +
                              (c.reasons.empty() ? std::string("h spans several blocks") : c.reasons[0]));
    block[v] = *c.block;
  }
  r.blocks.resize(C.t());
  for (unsigned i = 1; i <= C.t(); ++i) r.blocks[i - 1].block = i;
  for (std::size_t v = 0; v < n; ++v) ++r.blocks[block[v] - 1].samples;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const GSym& a = vertices[u];
      const GSym& b = vertices[v];
      if (block[u] != block[v]) {
        ++r.cross_block_pairs;
        if (matrix_criterion(a.h, b.h, C.t())) {
          ++r.cross_block_criterion_hits;
          r.failures.push_back("cross-block pair " + std::to_string(u) + "," + std::to_string(v) +
                               " satisfies the matrix criterion");
        }
        continue;
      }
      CensusBlock& cb = r.blocks[block[u] - 1];
      ++cb.same_block_pairs;
      if (openness_witness(C, a, b).pass) ++cb.direct_edges;
      try {
        const GSym g = common_neighbor(C, a, b);
        ++cb.common_neighbors;
        parent[find(v)] = find(u);
        if (cb.quotient_checks < 3) {
          for (std::size_t k = 0; k < C.size(); ++k)
            for (const GSym* side : {&a, &b})
              for (std::uint64_t p : admissible_primes(C, *side, g, k))
                if (!finite_quotient_contains_n(C, *side, g, k, p))
                  r.failures.push_back("finite quotient p=" + std::to_string(p) +
                                       " does not confirm a witness");
          ++cb.quotient_checks;
        }
      } catch (const Error& e) {
        r.failures.push_back(std::string("same-block pair ") + std::to_string(u) + "," +
                             std::to_string(v) + ": " + e.what());
      }
    }

  std::vector<bool> root(n, false);
  for (std::size_t v = 0; v < n; ++v) root[find(v)] = true;
  r.components = static_cast<std::size_t>(std::count(root.begin(), root.end(), true));
  std::size_t occupied = 0;
  for (const auto& b : r.blocks)
    if (b.samples) ++occupied;
  r.pass = r.failures.empty() && r.cross_block_criterion_hits == 0 && r.components == occupied;
  return r;
}

CensusReport component_census(unsigned t, std::size_t samples, std::uint64_t seed) {
  if (t < 1 || t > 4) throw PreconditionError("component_census needs 1 <= t <= 4");
  const Construction C(t);
  std::vector<GSym> vertices;
  for (unsigned i = 1; i <= t; ++i) {
    auto part = sample_block(C, i, samples, seed);
    vertices.insert(vertices.end(), part.begin(), part.end());
  }
  CensusReport r = component_census(C, vertices, seed);
  if (r.components != t) r.pass = false;
  return r;
}

nlohmann::ordered_json to_json(const CensusReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["report"] = "census";
  j["t"] = r.t;
  j["seed"] = r.seed;
  auto& blocks = j["blocks"] = nlohmann::ordered_json::array();
  for (const auto& b : r.blocks) {
    nlohmann::ordered_json e;
    e["block"] = b.block;
    e["samples"] = b.samples;
    e["same_block_pairs"] = b.same_block_pairs;
    e["common_neighbors_verified"] = b.common_neighbors;
    e["direct_edges"] = b.direct_edges;
    e["finite_quotient_checks"] = b.quotient_checks;
    blocks.push_back(e);
  }
  j["cross_block_pairs"] = r.cross_block_pairs;
  j["cross_block_adjacent"] = r.cross_block_criterion_hits;
  j["components"] = r.components;
  j["failures"] = r.failures;
  j["pass"] = r.pass;
  return j;
}

nlohmann::ordered_json to_json(const GeneratorPairReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["report"] = "generator_pairs";
  j["t"] = r.t;
  j["variant"] = to_string(r.variant);
  j["symbolic_pass"] = r.symbolic_pass;
  j["quotient_pass"] = r.quotient_pass;
  j["formulas_match"] = r.formulas_match;
  j["block_index_in_h"] = r.block_index_in_h;
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["omega"] = c.omega;
    e["block"] = c.block;
    e["determinant"] = c.determinant;
    e["symbolic"] = c.symbolic;
    auto& q = e["quotient"] = nlohmann::ordered_json::object();
    for (const auto& [p, ok] : c.quotient) q[std::to_string(p)] = ok;
    e["second_coordinate_trapped"] = c.second_coordinate_trapped;
    checks.push_back(e);
  }
  j["pass"] = r.pass();
  return j;
}

}  // namespace virtgen
