#include "virtgen/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "virtgen/construction.hpp"
#include "virtgen/errors.hpp"
#include "virtgen/graphs.hpp"
#include "virtgen/group_spec.hpp"
#include "virtgen/mingen.hpp"
#include "virtgen/seq_product.hpp"
#include "virtgen/subgroups.hpp"

namespace virtgen {

const std::vector<std::string>& corpus_specs() {
  static const std::vector<std::string> specs = [] {
    std::vector<std::string> s;
    for (int n = 1; n <= 32; ++n) s.push_back("C:" + std::to_string(n));
    for (int n = 1; n <= 12; ++n) s.push_back("D:" + std::to_string(n));
    for (int e = 3; e <= 5; ++e) s.push_back("Q:2^" + std::to_string(e));
    for (int n = 1; n <= 6; ++n) s.push_back("Dic:" + std::to_string(n));
    for (int n = 1; n <= 5; ++n) s.push_back("S:" + std::to_string(n));
    for (int n = 1; n <= 5; ++n) s.push_back("A:" + std::to_string(n));
    s.push_back("SL2:4");
    s.push_back("SL2:8");
    s.push_back("C:2*C:2*C:2");
    s.push_back("C:3*Q:8");
    return s;
  }();
  return specs;
}

const std::vector<FiniteGroup>& corpus() {
  static const std::vector<FiniteGroup> groups = [] {
    std::vector<FiniteGroup> g;
    for (const auto& s : corpus_specs()) g.push_back(build_group(s));
    return g;
  }();
  return groups;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"trichotomy", "diameter", "independence", "tarski",
                                              "soluble",    "criterion", "census",      "pairs",
                                              "seqprod",    "engine"};
  return names;
}

namespace {

using Checker = std::function<bool(std::ostringstream&)>;

struct Failures {
  std::vector<std::string> items;
  void add(const std::string& s) { items.push_back(s); }
  bool ok() const { return items.empty(); }
  void write(std::ostringstream& os) const {
    if (items.empty()) return;
    os << "; failures: ";
    for (std::size_t i = 0; i < items.size() && i < 5; ++i) os << (i ? " | " : "") << items[i];
    if (items.size() > 5) os << " | (+" << items.size() - 5 << " more)";
  }
};

bool criterion_trichotomy(std::ostringstream& os) {
  Failures f;
  std::size_t with_odd = 0, quaternion = 0, cyclic = 0;
  for (const auto& G : corpus()) {
    const Verdict v = check_isolated_classification(G);
    if (!v.pass) f.add(G.label() + ": " + v.notes.front());
    const auto cls = classify_unique_minimal(G);
    if (cls.kind == MinimalClass::generalized_quaternion) ++quaternion;
    if (cls.kind == MinimalClass::cyclic_p_power) ++cyclic;
    const auto r = graph_report(G, GraphKind::virt_independence);
    for (Elem g : r.isolated)
      if (g != 0 && G.element_order(g) != G.order()) {
        ++with_odd;
        break;
      }
  }
  for (const char* q : {"Q:2^3", "Q:2^4", "Q:2^5"})
    if (classify_unique_minimal(build_group(q)).kind != MinimalClass::generalized_quaternion)
      f.add(std::string(q) + " not recognized as generalized quaternion");
  os << corpus().size() << " groups, " << with_odd
     << " with a non-trivial non-generator isolated vertex; corpus holds " << cyclic
     << " cyclic p-power and " << quaternion << " generalized quaternion groups";
  f.write(os);
  return f.ok();
}

bool criterion_diameter(std::ostringstream& os) {
  Failures f;
  std::size_t nonempty = 0, max_diam = 0;
  for (const auto& G : corpus()) {
    const auto r = graph_report(G, GraphKind::virt_independence);
    if (r.delta_empty()) continue;
    ++nonempty;
    if (!r.connected()) {
      f.add(G.label() + " disconnected");
      continue;
    }
    max_diam = std::max(max_diam, *r.diameter);
    if (*r.diameter > 3) f.add(G.label() + " diameter " + std::to_string(*r.diameter));
  }
  // Dic:3 with a of order 4, b of order 3, b^a = b^-1.
  const FiniteGroup D = build_group("Dic:3");
  const Elem a = *D.find({0, 1});
  const Elem b = *D.find({2, 0});
  if (D.element_order(a) != 4 || D.element_order(b) != 3 || D.conj(b, a) != D.inv(b))
    f.add("Dic:3 presentation elements not found");
  const auto r = graph_report(D, GraphKind::virt_independence);
  if (!r.diameter || *r.diameter != 3) f.add("Dic:3 diameter is not 3");
  const Elem a2b = D.mul(D.pow(a, 2), b);
  std::set<Elem> expected;
  for (int i = 1; i < 4; i += 2)
    for (int j = 0; j < 3; ++j) expected.insert(D.mul(D.pow(a, i), D.pow(b, j)));
  std::set<Elem> got;
  for (Elem y = 0; y < D.order(); ++y)
    if (adj_virt_independent(D, a2b, y)) got.insert(y);
  if (got != expected) f.add("neighbours of a^2 b differ from {a^i b^j : i odd}");
  os << nonempty << " groups with nonempty graph, max diameter " << max_diam
     << "; Dic:3 diameter " << (r.diameter ? std::to_string(*r.diameter) : "-")
     << ", |N(a^2 b)| = " << got.size();
  f.write(os);
  return f.ok();
}

bool criterion_independence(std::ostringstream& os) {
  Failures f;
  std::size_t checked = 0;
  for (const auto& G : corpus()) {
    if (G.order() > 128) continue;
    ++checked;
    const auto r = graph_report(G, GraphKind::independence);
    Bitset expected = frattini(G).bits();
    for (Elem g = 0; g < G.order(); ++g)
      if (G.element_order(g) == G.order()) expected.set(g);
    Bitset got(G.order());
    for (Elem g : r.isolated) got.set(g);
    if (!(got == expected)) f.add(G.label() + " isolated set differs");
    if (!r.delta_empty() && !r.connected()) f.add(G.label() + " disconnected");
  }
  os << checked << " groups of order <= 128";
  f.write(os);
  return f.ok();
}

bool criterion_tarski(std::ostringstream& os) {
  Failures f;
  std::size_t checked = 0;
  for (const auto& G : corpus()) {
    if (G.order() > 256) continue;
    ++checked;
    const auto t = tarski_table(G);
    if (!t.gap_free) f.add(G.label() + " has a gap");
    for (const auto& [k, w] : t.witnesses)
      if (w.members.size() != k || !w.valid()) f.add(G.label() + " invalid witness of size " + std::to_string(k));
  }
  auto sizes = [](const std::string& spec) {
    std::vector<std::size_t> out;
    for (const auto& [k, w] : tarski_table(build_group(spec)).witnesses) out.push_back(k);
    return out;
  };
  const auto s4 = sizes("S:4"), q8 = sizes("Q:8"), c2 = sizes("C:2*C:2*C:2");
  if (s4 != std::vector<std::size_t>{2, 3}) f.add("S:4 sizes differ from {2,3}");
  if (q8 != std::vector<std::size_t>{2}) f.add("Q:8 sizes differ from {2}");
  if (c2 != std::vector<std::size_t>{3}) f.add("C:2^3 sizes differ from {3}");
  os << checked << " groups of order <= 256; S:4 {2,3}, Q:8 {2}, C:2^3 {3} re-derived";
  f.write(os);
  return f.ok();
}

bool criterion_soluble(std::ostringstream& os) {
  Failures f;
  std::size_t soluble = 0, empty = 0, max_diam = 0;
  for (const auto& G : corpus()) {
    if (!is_soluble(G)) continue;
    ++soluble;
    const auto r = graph_report(G, GraphKind::generating);
    if (r.delta_empty()) {
      ++empty;  // not 2-generated: no edges at all
      continue;
    }
    if (!r.connected()) {
      f.add(G.label() + " disconnected");
      continue;
    }
    max_diam = std::max(max_diam, *r.diameter);
    if (*r.diameter > 3) f.add(G.label() + " diameter " + std::to_string(*r.diameter));
  }
  os << soluble << " soluble groups (" << empty << " without edges), max diameter " << max_diam;
  f.write(os);
  return f.ok();
}

bool criterion_matrix(std::ostringstream& os) {
  std::size_t pairs = 0, mismatches = 0;
  for (unsigned t = 1; t <= 4; ++t)
    for (HVec a = 0; a < (HVec{1} << (2 * t)); ++a)
      for (HVec b = 0; b < (HVec{1} << (2 * t)); ++b) {
        ++pairs;
        if (matrix_criterion(a, b, t) == system_solvable(a, b, t)) ++mismatches;
      }
  os << pairs << " h-pairs for t <= 4, " << mismatches << " mismatches";
  return mismatches == 0;
}

bool criterion_census(std::ostringstream& os) {
  Failures f;
  for (unsigned t = 1; t <= 3; ++t)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const CensusReport r = component_census(t, 100, seed);
      std::size_t same = 0, cn = 0;
      for (const auto& b : r.blocks) {
        same += b.same_block_pairs;
        cn += b.common_neighbors;
      }
      if (!r.pass || r.components != t || same != cn || r.cross_block_criterion_hits != 0)
        f.add("t=" + std::to_string(t) + " seed=" + std::to_string(seed) + ": " +
              std::to_string(r.components) + " components" +
              (r.failures.empty() ? "" : ", " + r.failures.front()));
      if (seed == 1) os << "t=" << t << ": " << r.components << " components; ";
    }
  os << "seeds 1-3, 100 samples per block";
  f.write(os);
  return f.ok();
}

bool criterion_pairs(std::ostringstream& os) {
  Failures f;
  for (unsigned t = 1; t <= 3; ++t) {
    const auto c = verify_generator_pairs(t, Variant::corrected);
    if (!c.symbolic_pass) f.add("corrected t=" + std::to_string(t) + " symbolic check fails");
    if (!c.quotient_pass) f.add("corrected t=" + std::to_string(t) + " quotient check fails");
    const auto p = verify_generator_pairs(t, Variant::printed);
    if (p.symbolic_pass) f.add("printed t=" + std::to_string(t) + " symbolic check passes");
    bool any_quotient = false, all_trapped = true;
    for (const auto& chk : p.checks) {
      for (const auto& [prime, ok] : chk.quotient) any_quotient = any_quotient || ok;
      all_trapped = all_trapped && chk.second_coordinate_trapped;
    }
    if (any_quotient) f.add("printed t=" + std::to_string(t) + " some quotient contains N");
    if (!all_trapped) f.add("printed t=" + std::to_string(t) + " second coordinate not trapped");
  }
  os << "corrected passes symbolically and mod 3, 5, 7; printed constants fail both with z2 = 0";
  f.write(os);
  return f.ok();
}

bool criterion_seqprod(std::ostringstream& os) {
  Failures f;
  // Stitching on group-mode coordinates.
  CoordinateFamily F;
  for (const char* spec : {"S:3", "SL2:4", "S:3", "SL2:4"})
    F.graphs.push_back(CoordinateGraph::from_group(build_group(spec), GraphKind::generating));
  std::vector<std::vector<std::size_t>> paths;
  const std::size_t want[] = {1, 2, 0, 2};
  SeqElement x(F.horizon()), y(F.horizon());
  for (std::size_t n = 0; n < F.horizon(); ++n) {
    const auto& g = F.graphs[n];
    x[n] = *g.first_vertex();
    y[n] = *g.vertex_at_distance(x[n], want[n]);
    paths.push_back(*g.shortest_path(x[n], y[n]));
  }
  std::size_t stitched = 0;
  for (std::size_t m : {2, 3, 4, 5, 6, 7, 9}) {
    try {
      const auto walk = stitch(F, paths, m);
      bool ok = walk.size() == m + 1 && walk.front() == x && walk.back() == y;
      for (std::size_t i = 0; i + 1 < walk.size() && ok; ++i) ok = seq_adjacent(F, walk[i], walk[i + 1], 0);
      if (!ok) f.add("stitched walk of length " + std::to_string(m) + " invalid");
      ++stitched;
    } catch (const Error& e) {
      f.add("stitch to " + std::to_string(m) + ": " + e.what());
    }
  }
  // Separation certificates on doubling paths.
  const auto report = separation_demo(doubling_path_family(12), {1.5, 2.0, 3.0}, 4);
  os << stitched << " product walks validated on S:3 / SL2:4 coordinates; separation n <= 12, B = 4:";
  for (const auto& p : report.pairs) {
    os << " (" << p.tau1 << "," << p.tau2 << ") max gap " << p.max_gap
       << (p.first_coordinate ? " separated at n=" + std::to_string(*p.first_coordinate) : " not separated");
    if (!p.first_coordinate)
      f.add("taus " + std::to_string(p.tau1).substr(0, 4) + "/" + std::to_string(p.tau2).substr(0, 4) +
            " never exceed the threshold within the horizon");
  }
  f.write(os);
  return f.ok();
}

// Subgroups by repeated closure, independent of the lattice code.
std::vector<Bitset> naive_subgroups(const FiniteGroup& G) {
  std::vector<std::pair<Bitset, std::vector<Elem>>> subs;
  std::set<std::vector<std::uint64_t>> seen;
  auto add = [&](const std::vector<Elem>& gens) {
    SubgroupMask m = closure(G, gens);
    const auto w = m.bits().words();
    if (seen.insert(std::vector<std::uint64_t>(w.begin(), w.end())).second) subs.emplace_back(m.bits(), gens);
  };
  add({});
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (Elem g = 0; g < G.order(); ++g) {
      if (subs[i].first.test(g)) continue;
      auto gens = subs[i].second;
      gens.push_back(g);
      add(gens);
    }
  std::vector<Bitset> out;
  for (auto& s : subs) out.push_back(std::move(s.first));
  return out;
}

bool criterion_engine(std::ostringstream& os) {
  Failures f;
  std::mt19937_64 rng(7);
  std::size_t frattini_checked = 0, symmetry_checked = 0, cross_checked = 0;
  for (const auto& G : corpus()) {
    const std::size_t n = G.order();
    if (auto bad = check_axioms(G)) f.add(G.label() + ": " + *bad);
    for (Elem g = 0; g < n; ++g) {
      const std::size_t k = closure(G, {g}).size();
      if (k != G.element_order(g) || n % k != 0) f.add(G.label() + " cyclic closure of " + G.name(g));
    }
    for (int trial = 0; trial < 50 && n > 1; ++trial) {
      std::vector<Elem> s;
      const int len = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < len; ++i) s.push_back(static_cast<Elem>(rng() % n));
      if (n % closure(G, s).size() != 0) f.add(G.label() + " closure size does not divide |G|");
    }
    if (n <= 64) {
      ++frattini_checked;
      const auto subs = naive_subgroups(G);
      Bitset nongen(n);
      for (Elem g = 0; g < n; ++g) {
        bool ok = true;
        for (const auto& H : subs) {
          if (H.count() == n) continue;
          std::vector<Elem> gens = H.to_vector<Elem>();
          gens.push_back(g);
          if (closure(G, gens).is_whole()) {
            ok = false;
            break;
          }
        }
        if (ok) nongen.set(g);
      }
      if (!(nongen == frattini(G).bits())) f.add(G.label() + " Frattini differs from the non-generators");
    }
    if (n <= 48) {
      ++symmetry_checked;
      IndependenceOracle ind(G);
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
          if (x == y) continue;
          if (adj_generating(G, x, y) != adj_generating(G, y, x) ||
              adj_virt_independent(G, x, y) != adj_virt_independent(G, y, x) ||
              ind.adjacent(x, y) != ind.adjacent(y, x))
            f.add(G.label() + " asymmetric oracle at " + G.name(x) + ", " + G.name(y));
        }
      if (n <= 24) {
        ++cross_checked;
        for (Elem x = 1; x < n; ++x)
          for (Elem y = x + 1; y < n; ++y)
            if (ind.adjacent(x, y) != contains_in_irredundant_search(G, x, y).has_value())
              f.add(G.label() + " independence routes disagree at " + G.name(x) + ", " + G.name(y));
      }
    }
  }
  os << "axioms and Lagrange on " << corpus().size() << " groups; Frattini non-generators on "
     << frattini_checked << "; symmetry on " << symmetry_checked << "; independence routes on "
     << cross_checked;
  f.write(os);
  return f.ok();
}

struct Entry {
  int id;
  const char* name;
  const char* title;
  bool (*fn)(std::ostringstream&);
};

const Entry kEntries[] = {
    {1, "trichotomy", "isolated-vertex trichotomy", criterion_trichotomy},
    {2, "diameter", "virt-independence diameter <= 3", criterion_diameter},
    {3, "independence", "independence graph isolated set and connectivity", criterion_independence},
    {4, "tarski", "gap-free minimal generating set sizes", criterion_tarski},
    {5, "soluble", "soluble generating graph diameter <= 3", criterion_soluble},
    {6, "criterion", "matrix criterion equals unsolvability", criterion_matrix},
    {7, "census", "construction has exactly t components", criterion_census},
    {8, "pairs", "generator pair constants", criterion_pairs},
    {9, "seqprod", "product stitching and separation", criterion_seqprod},
    {10, "engine", "engine soundness", criterion_engine},
};

}  // namespace

CriterionResult run_criterion(int id) {
  for (const auto& e : kEntries) {
    if (e.id != id) continue;
    CriterionResult r;
    r.id = id;
    r.name = e.title;
    std::ostringstream os;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.pass = e.fn(os);
    } catch (const std::exception& ex) {
      r.pass = false;
      os << "error: " << ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.detail = os.str();
    return r;
  }
  throw PreconditionError("unknown criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_suite(const std::string& name) {
  std::vector<CriterionResult> out;
  if (name == "all") {
    for (const auto& e : kEntries) out.push_back(run_criterion(e.id));
    return out;
  }
  for (const auto& e : kEntries)
    if (name == e.name || name == std::to_string(e.id)) {
      out.push_back(run_criterion(e.id));
      return out;
    }
  throw ParseError("unknown suite '" + name + "'");
}

CriterionResult separation_horizon_info(std::size_t max_exponent) {
  CriterionResult r;
  r.name = "separation at horizon " + std::to_string(max_exponent);
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = separation_demo(doubling_path_family(max_exponent), {1.5, 2.0, 3.0}, 4);
  std::ostringstream os;
  os << "n <= " << max_exponent << ", B = 4:";
  for (const auto& p : report.pairs)
    os << " (" << p.tau1 << "," << p.tau2 << ") "
       << (p.first_coordinate ? "first at n=" + std::to_string(*p.first_coordinate) : "none");
  r.pass = report.all_separated;
  r.detail = os.str();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

nlohmann::ordered_json to_json(const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["report"] = "verify";
  auto& arr = j["criteria"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["id"] = r.id;
    e["name"] = r.name;
    e["pass"] = r.pass;
    e["detail"] = r.detail;
    arr.push_back(e);
    all = all && r.pass;
  }
  j["pass"] = all;
  return j;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << r.id << "  " << r.name << ": "
     << r.detail << " [" << std::fixed << std::setprecision(1) << r.seconds << "s]";
  return os.str();
}

}  // namespace virtgen
