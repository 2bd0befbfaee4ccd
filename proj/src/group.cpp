#include "virtgen/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <random>
#include <sstream>
#include <unordered_map>

#include "virtgen/errors.hpp"
#include "virtgen/subgroups.hpp"

namespace virtgen {

// ---------------------------------------------------------------------------
// Caps

namespace {

void override_from_env(const char* name, std::size_t& field) {
  if (const char* v = std::getenv(name)) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && parsed > 0) field = static_cast<std::size_t>(parsed);
  }
}

}  // namespace

Caps Caps::from_environment() {
  Caps c;
  override_from_env("VIRTGEN_CAP_ORDER", c.order);
  override_from_env("VIRTGEN_CAP_TABLE", c.table);
  override_from_env("VIRTGEN_CAP_LATTICE", c.lattice);
  override_from_env("VIRTGEN_CAP_SUBGROUPS", c.subgroups);
  override_from_env("VIRTGEN_CAP_GRAPH", c.graph);
  override_from_env("VIRTGEN_CAP_INDEPENDENCE", c.independence);
  override_from_env("VIRTGEN_CAP_SEARCH", c.search);
  override_from_env("VIRTGEN_CAP_RANK", c.rank);
  override_from_env("VIRTGEN_CAP_GASCHUTZ", c.gaschutz);
  return c;
}

const Caps& caps() {
  static const Caps c = Caps::from_environment();
  return c;
}

// ---------------------------------------------------------------------------
// FiniteGroup

std::string Representation::describe(const Word& a) const {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << '>';
  return os.str();
}

struct FiniteGroup::State {
  std::size_t order = 1;
  std::string label = "1";
  std::vector<Elem> table{0};
  std::vector<Elem> inverse{0};
  std::vector<Elem> generators;
  std::vector<std::string> names;
  std::shared_ptr<const Representation> rep;
  std::vector<Word> words;
  std::unordered_map<Word, Elem, WordHash> index;

  mutable std::once_flag cyclic_once;
  mutable std::unique_ptr<CyclicStructure> cyclic;
  mutable std::mutex lattice_mutex;
  mutable std::shared_ptr<const SubgroupLattice> lattice;
  mutable std::size_t lattice_cap = 0;
};

FiniteGroup::FiniteGroup() : state_(std::make_shared<State>()) {}

std::size_t FiniteGroup::order() const noexcept { return state_->order; }
const std::string& FiniteGroup::label() const noexcept { return state_->label; }
bool FiniteGroup::has_table() const noexcept { return !state_->table.empty(); }
const std::vector<Elem>& FiniteGroup::generators() const noexcept { return state_->generators; }
const Representation* FiniteGroup::representation() const noexcept { return state_->rep.get(); }

Elem FiniteGroup::mul(Elem a, Elem b) const {
  const State& s = *state_;
  if (!s.table.empty()) return s.table[std::size_t{a} * s.order + b];
  return s.index.at(s.rep->multiply(s.words[a], s.words[b]));
}

Elem FiniteGroup::inv(Elem a) const { return state_->inverse[a]; }

Elem FiniteGroup::pow(Elem g, long long k) const {
  if (k < 0) {
    g = inv(g);
    k = -k;
  }
  Elem result = 0;
  Elem base = g;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Elem FiniteGroup::conj(Elem g, Elem by) const { return mul(mul(inv(by), g), by); }

Elem FiniteGroup::commutator(Elem a, Elem b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

std::size_t FiniteGroup::element_order(Elem g) const {
  std::size_t k = 1;
  for (Elem x = g; x != 0; x = mul(x, g)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  const auto& gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (mul(gens[i], gens[j]) != mul(gens[j], gens[i])) return false;
  return true;
}

std::string FiniteGroup::name(Elem g) const {
  const State& s = *state_;
  if (!s.names.empty()) return s.names[g];
  if (s.rep) return s.rep->describe(s.words[g]);
  return g == 0 ? std::string("1") : "e" + std::to_string(g);
}

std::optional<Word> FiniteGroup::word(Elem g) const {
  if (!state_->rep) return std::nullopt;
  return state_->words[g];
}

std::optional<Elem> FiniteGroup::find(const Word& w) const {
  auto it = state_->index.find(w);
  if (it == state_->index.end()) return std::nullopt;
  return it->second;
}

const CyclicStructure& FiniteGroup::cyclic_structure() const {
  std::call_once(state_->cyclic_once, [this] {
    state_->cyclic = std::make_unique<CyclicStructure>(compute_cyclic_structure(*this));
  });
  return *state_->cyclic;
}

const SubgroupLattice& FiniteGroup::lattice(const Caps& limits) const {
  std::lock_guard lock(state_->lattice_mutex);
  if (!state_->lattice) {
    state_->lattice = std::make_shared<const SubgroupLattice>(*this, limits);
  }
  return *state_->lattice;
}

void FiniteGroup::finish(State& s, const Caps& limits) {
  // Inverses through the representation when available.
  s.inverse.assign(s.order, 0);
  if (s.rep) {
    for (Elem g = 0; g < s.order; ++g) s.inverse[g] = s.index.at(s.rep->inverse(s.words[g]));
  } else {
    for (Elem a = 0; a < s.order; ++a)
      for (Elem b = 0; b < s.order; ++b)
        if (s.table[std::size_t{a} * s.order + b] == 0) {
          s.inverse[a] = b;
          break;
        }
  }
  (void)limits;
}

FiniteGroup FiniteGroup::generate(std::shared_ptr<const Representation> rep,
                                  const std::vector<Word>& generators, std::string label,
                                  const Caps& limits) {
  auto s = std::make_shared<State>();
  s->label = std::move(label);
  s->rep = rep;
  s->words.push_back(rep->identity());
  s->index.emplace(s->words[0], 0);

  std::vector<Word> gens;
  for (const auto& g : generators)
    if (g != s->words[0] && std::find(gens.begin(), gens.end(), g) == gens.end())
      gens.push_back(g);
  const std::size_t ng = gens.size();

  std::vector<Elem> right;  // right[e*ng + j] = e * gens[j]
  std::vector<Elem> parent{0};
  std::vector<std::uint32_t> via{0};
  for (std::size_t pos = 0; pos < s->words.size(); ++pos) {
    for (std::size_t j = 0; j < ng; ++j) {
      Word w = rep->multiply(s->words[pos], gens[j]);
      auto [it, inserted] = s->index.try_emplace(std::move(w), static_cast<Elem>(s->words.size()));
      if (inserted) {
        if (s->words.size() >= limits.order)
          throw CapExceeded("group order", s->words.size() + 1, limits.order);
        s->words.push_back(it->first);
        parent.push_back(static_cast<Elem>(pos));
        via.push_back(static_cast<std::uint32_t>(j));
      }
      right.push_back(it->second);
    }
  }
  s->order = s->words.size();
  for (const auto& g : gens) s->generators.push_back(s->index.at(g));

  const std::size_t n = s->order;
  if (n <= limits.table) {
    s->table.assign(n * n, 0);
    for (Elem a = 0; a < n; ++a) s->table[std::size_t{a} * n] = a;
    for (Elem e = 1; e < n; ++e) {
      const Elem p = parent[e];
      const std::uint32_t j = via[e];
      for (Elem a = 0; a < n; ++a)
        s->table[std::size_t{a} * n + e] = right[std::size_t{s->table[std::size_t{a} * n + p]} * ng + j];
    }
  } else {
    s->table.clear();
  }
  finish(*s, limits);
  return FiniteGroup(std::move(s));
}

FiniteGroup FiniteGroup::from_elements(std::shared_ptr<const Representation> rep,
                                       std::vector<Word> elements, std::vector<Elem> generators,
                                       std::string label, const Caps& limits) {
  if (elements.empty() || elements[0] != rep->identity())
    throw PreconditionError("from_elements: element 0 must be the identity");
  if (elements.size() > limits.order)
    throw CapExceeded("group order", elements.size(), limits.order);
  auto s = std::make_shared<State>();
  s->label = std::move(label);
  s->rep = rep;
  s->order = elements.size();
  s->words = std::move(elements);
  for (Elem i = 0; i < s->order; ++i)
    if (!s->index.emplace(s->words[i], i).second)
      throw PreconditionError("from_elements: duplicate element");
  s->generators = std::move(generators);
  const std::size_t n = s->order;
  if (n <= limits.table) {
    s->table.assign(n * n, 0);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        auto it = s->index.find(rep->multiply(s->words[a], s->words[b]));
        if (it == s->index.end()) throw PreconditionError("from_elements: set is not closed");
        s->table[std::size_t{a} * n + b] = it->second;
      }
  } else {
    s->table.clear();
  }
  finish(*s, limits);
  return FiniteGroup(std::move(s));
}

FiniteGroup FiniteGroup::from_table(std::vector<Elem> table, std::size_t order, std::string label,
                                    std::vector<std::string> names, std::vector<Elem> generators) {
  if (order == 0 || table.size() != order * order)
    throw PreconditionError("from_table: table size does not match order");
  for (auto v : table)
    if (v >= order) throw PreconditionError("from_table: entry out of range");
  for (Elem a = 0; a < order; ++a)
    if (table[a] != a || table[std::size_t{a} * order] != a)
      throw PreconditionError("from_table: element 0 is not the identity");
  if (!names.empty() && names.size() != order)
    throw PreconditionError("from_table: names size does not match order");
  auto s = std::make_shared<State>();
  s->label = std::move(label);
  s->order = order;
  s->table = std::move(table);
  s->names = std::move(names);
  finish(*s, caps());
  FiniteGroup G(s);
  if (generators.empty()) {
    // Greedy generating set in ascending id order.
    Bitset mask(order);
    mask.set(0);
    std::vector<Elem> gens;
    for (Elem g = 1; g < order; ++g) {
      if (mask.test(g)) continue;
      gens.push_back(g);
      mask = closure(G, gens).bits();
    }
    generators = std::move(gens);
  }
  s->generators = std::move(generators);
  return G;
}

std::optional<std::string> check_axioms(const FiniteGroup& G, std::uint64_t seed) {
  const std::size_t n = G.order();
  for (Elem g = 0; g < n; ++g) {
    if (G.mul(0, g) != g || G.mul(g, 0) != g)
      return "identity law fails at element " + std::to_string(g);
    if (G.mul(g, G.inv(g)) != 0 || G.mul(G.inv(g), g) != 0)
      return "inverse law fails at element " + std::to_string(g);
  }
  auto assoc = [&](Elem a, Elem b, Elem c) -> std::optional<std::string> {
    const Elem ab = G.mul(a, b), bc = G.mul(b, c);
    if (ab >= n || bc >= n) return std::string("product out of range");
    if (G.mul(ab, c) != G.mul(a, bc))
      return "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
             std::to_string(c) + ")";
    return std::nullopt;
  };
  if (n <= 64) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (auto err = assoc(a, b, c)) return err;
  } else {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 10000; ++i) {
      const auto a = static_cast<Elem>(rng() % n), b = static_cast<Elem>(rng() % n),
                 c = static_cast<Elem>(rng() % n);
      if (auto err = assoc(a, b, c)) return err;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Representations

Word PermutationRep::identity() const {
  Word w(degree_);
  for (std::uint32_t i = 0; i < degree_; ++i) w[i] = i;
  return w;
}

Word PermutationRep::multiply(const Word& a, const Word& b) const {
  Word w(degree_);
  for (std::size_t i = 0; i < degree_; ++i) w[i] = b[a[i]];
  return w;
}

Word PermutationRep::inverse(const Word& a) const {
  Word w(degree_);
  for (std::uint32_t i = 0; i < degree_; ++i) w[a[i]] = i;
  return w;
}

std::string PermutationRep::describe(const Word& a) const {
  std::string out;
  std::vector<bool> seen(degree_, false);
  for (std::uint32_t i = 0; i < degree_; ++i) {
    if (seen[i] || a[i] == i) continue;
    out += '(';
    std::uint32_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      out += (first ? "" : ",") + std::to_string(j + 1);
      first = false;
      j = a[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Word PermutationRep::parse_cycles(const std::string& text) const {
  Word w = identity();
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation");
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in permutation: " + text);
    ++i;
    std::vector<std::uint32_t> cycle;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (start == i) throw ParseError("malformed cycle in permutation: " + text);
      const unsigned long point = std::stoul(text.substr(start, i - start));
      if (point < 1 || point > degree_)
        throw ParseError("point " + std::to_string(point) + " outside 1.." +
                         std::to_string(degree_));
      cycle.push_back(static_cast<std::uint32_t>(point - 1));
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      for (std::size_t l = k + 1; l < cycle.size(); ++l)
        if (cycle[k] == cycle[l]) throw ParseError("repeated point in cycle: " + text);
    // Cycles compose left to right like everything else.
    Word c = identity();
    for (std::size_t k = 0; k < cycle.size(); ++k) c[cycle[k]] = cycle[(k + 1) % cycle.size()];
    w = multiply(w, c);
    skip_ws();
  }
  return w;
}

Word CyclicRep::multiply(const Word& a, const Word& b) const {
  return {static_cast<std::uint32_t>((std::uint64_t{a[0]} + b[0]) % n_)};
}
Word CyclicRep::inverse(const Word& a) const { return {(n_ - a[0]) % n_}; }
std::string CyclicRep::describe(const Word& a) const {
  if (a[0] == 0) return "1";
  if (a[0] == 1) return "g";
  return "g^" + std::to_string(a[0]);
}

Word DihedralRep::multiply(const Word& a, const Word& b) const {
  // r^k s^e r^l s^f = r^(k + (-1)^e l) s^(e+f)
  const std::uint64_t l = a[1] ? (n_ - b[0]) % n_ : b[0];
  return {static_cast<std::uint32_t>((a[0] + l) % n_), (a[1] + b[1]) & 1u};
}
Word DihedralRep::inverse(const Word& a) const {
  if (a[1]) return a;
  return {(n_ - a[0]) % n_, 0};
}
std::string DihedralRep::describe(const Word& a) const {
  std::string out;
  if (a[0] == 1) out = "r";
  else if (a[0] > 1) out = "r^" + std::to_string(a[0]);
  if (a[1]) out += "s";
  return out.empty() ? "1" : out;
}

Word DicyclicRep::multiply(const Word& a, const Word& b) const {
  // x^k y^e x^l y^f = x^(k + (-1)^e l) y^e y^f, y^2 = x^n
  const std::uint32_t m = 2 * n_;
  const std::uint64_t l = a[1] ? (m - b[0]) % m : b[0];
  std::uint64_t k = (a[0] + l) % m;
  std::uint32_t e = a[1] + b[1];
  if (e == 2) {
    k = (k + n_) % m;
    e = 0;
  }
  return {static_cast<std::uint32_t>(k), e};
}
Word DicyclicRep::inverse(const Word& a) const {
  const std::uint32_t m = 2 * n_;
  if (a[1]) return {(a[0] + n_) % m, 1};  // (x^k y)^2 = x^n
  return {(m - a[0]) % m, 0};
}
std::string DicyclicRep::describe(const Word& a) const {
  std::string out;
  if (a[0] == 1) out = "x";
  else if (a[0] > 1) out = "x^" + std::to_string(a[0]);
  if (a[1]) out += "y";
  return out.empty() ? "1" : out;
}

SignSemidirectRep::SignSemidirectRep(std::uint32_t p, std::vector<std::uint32_t> coordinate_masks)
    : p_(p), masks_(std::move(coordinate_masks)) {
  if (p < 2) throw PreconditionError("SignSemidirectRep: modulus must be >= 2");
}

Word SignSemidirectRep::identity() const { return Word(masks_.size() + 1, 0); }

std::uint32_t SignSemidirectRep::act(std::uint32_t z, std::size_t c, std::uint32_t h) const {
  if (std::popcount(h & masks_[c]) & 1) return (p_ - z) % p_;
  return z;
}

Word SignSemidirectRep::multiply(const Word& a, const Word& b) const {
  const std::size_t k = masks_.size();
  Word w(k + 1);
  for (std::size_t c = 0; c < k; ++c) w[c] = (a[c] + act(b[c], c, a[k])) % p_;
  w[k] = a[k] ^ b[k];
  return w;
}

Word SignSemidirectRep::inverse(const Word& a) const {
  const std::size_t k = masks_.size();
  Word w(k + 1);
  for (std::size_t c = 0; c < k; ++c) w[c] = (p_ - act(a[c], c, a[k])) % p_;
  w[k] = a[k];
  return w;
}

std::string SignSemidirectRep::describe(const Word& a) const {
  std::ostringstream os;
  const std::size_t k = masks_.size();
  os << '(';
  for (std::size_t c = 0; c < k; ++c) os << (c ? "," : "") << a[c];
  os << ")h" << a[k];
  return os.str();
}

Word IndexProductRep::multiply(const Word& x, const Word& y) const {
  return {a_.mul(x[0], y[0]), b_.mul(x[1], y[1])};
}
Word IndexProductRep::inverse(const Word& x) const { return {a_.inv(x[0]), b_.inv(x[1])}; }
std::string IndexProductRep::describe(const Word& x) const {
  return "(" + a_.name(x[0]) + ", " + b_.name(x[1]) + ")";
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, const Caps& limits) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > limits.order) throw CapExceeded("group order", n, limits.order);
  std::vector<Elem> gens;
  for (Elem g : a.generators()) gens.push_back(static_cast<Elem>(g * nb));
  for (Elem h : b.generators()) gens.push_back(h);
  const std::string label = a.label() + "*" + b.label();
  if (n <= limits.table) {
    std::vector<Elem> table(n * n);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        table[std::size_t{x} * n + y] =
            static_cast<Elem>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
    std::vector<std::string> names(n);
    for (Elem x = 0; x < n; ++x) names[x] = "(" + a.name(x / nb) + ", " + b.name(x % nb) + ")";
    return FiniteGroup::from_table(std::move(table), n, label, std::move(names), std::move(gens));
  }
  std::vector<Word> words;
  words.reserve(n);
  for (Elem i = 0; i < na; ++i)
    for (Elem j = 0; j < nb; ++j) words.push_back({i, j});
  return FiniteGroup::from_elements(std::make_shared<IndexProductRep>(a, b), std::move(words),
                                    std::move(gens), label, limits);
}

}  // namespace virtgen
