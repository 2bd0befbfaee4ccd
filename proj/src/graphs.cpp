#include "virtgen/graphs.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "virtgen/errors.hpp"
#include "virtgen/mingen.hpp"

namespace virtgen {

std::string to_string(GraphKind k) {
  switch (k) {
    case GraphKind::generating: return "generating";
    case GraphKind::independence: return "independence";
    case GraphKind::virt_independence: return "virt-independence";
  }
  return "generating";
}

GraphKind parse_graph_kind(const std::string& s) {
  if (s == "generating") return GraphKind::generating;
  if (s == "independence") return GraphKind::independence;
  if (s == "virt-independence" || s == "virt_independence") return GraphKind::virt_independence;
  throw ParseError("unknown graph kind '" + s +
                   "' (expected generating, independence or virt-independence)");
}

bool adj_generating(const FiniteGroup& G, Elem x, Elem y, const Caps& limits) {
  if (x == y) throw PreconditionError("generating graph: loops are excluded");
  if (G.order() <= limits.lattice) {
    const auto& L = G.lattice(limits);
    return !L.element_cover(x).intersects(L.element_cover(y));
  }
  return closure(G, {x, y}).is_whole();
}

bool adj_virt_independent(const FiniteGroup& G, Elem x, Elem y) {
  if (x == y) return false;
  const auto& cs = G.cyclic_structure();
  return !cs.powers[y].test(x) && !cs.powers[x].test(y);
}

bool adj_independent(const FiniteGroup& G, Elem x, Elem y, const Caps& limits) {
  if (x == y) throw PreconditionError("independence graph: loops are excluded");
  return contains_in_irredundant(G, x, y, limits).has_value();
}

std::size_t Graph::edge_count() const {
  std::size_t c = 0;
  for (const auto& r : rows) c += r.count();
  return c / 2;
}

std::vector<std::size_t> Graph::distances(std::size_t source) const {
  const std::size_t n = size();
  std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
  Bitset seen(n), frontier(n);
  seen.set(source);
  frontier.set(source);
  dist[source] = 0;
  for (std::size_t d = 1; frontier.any(); ++d) {
    Bitset next(n);
    frontier.for_each([&](std::size_t u) { next |= rows[u]; });
    next.subtract(seen);
    next.for_each([&](std::size_t v) { dist[v] = d; });
    seen |= next;
    frontier = std::move(next);
  }
  return dist;
}

Graph build_graph(const FiniteGroup& G, GraphKind kind, const Caps& limits) {
  const std::size_t n = G.order();
  if (n > limits.graph) throw CapExceeded("graph order", n, limits.graph);
  Graph g;
  g.rows.assign(n, Bitset(n));
  auto add = [&](Elem x, Elem y) {
    g.rows[x].set(y);
    g.rows[y].set(x);
  };
  switch (kind) {
    case GraphKind::generating: {
      if (n <= limits.lattice) {
        const auto& L = G.lattice(limits);
        for (Elem x = 0; x < n; ++x)
          for (Elem y = x + 1; y < n; ++y)
            if (!L.element_cover(x).intersects(L.element_cover(y))) add(x, y);
      } else {
        for (Elem x = 0; x < n; ++x)
          for (Elem y = x + 1; y < n; ++y)
            if (closure(G, {x, y}).is_whole()) add(x, y);
      }
      break;
    }
    case GraphKind::virt_independence: {
      const auto& cs = G.cyclic_structure();
      for (Elem x = 0; x < n; ++x)
        for (Elem y = x + 1; y < n; ++y)
          if (!cs.powers[y].test(x) && !cs.powers[x].test(y)) add(x, y);
      break;
    }
    case GraphKind::independence: {
      IndependenceOracle oracle(G, limits);
      for (Elem x = 1; x < n; ++x)
        for (Elem y = x + 1; y < n; ++y)
          if (oracle.adjacent(x, y)) add(x, y);
      break;
    }
  }
  return g;
}

GraphReport analyze_graph(const Graph& g, GraphKind kind, const std::string& label) {
  GraphReport r;
  r.kind = kind;
  r.group = label;
  const std::size_t n = g.size();
  r.vertex_count = n;
  r.edge_count = g.edge_count();

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (g.rows[u].none()) {
      r.isolated.push_back(static_cast<Elem>(u));
      continue;
    }
    g.rows[u].for_each([&](std::size_t v) {
      if (v > u) parent[find(v)] = find(u);
    });
  }
  std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t u = 0; u < n; ++u) {
    if (g.rows[u].none()) continue;
    const std::size_t root = find(u);
    if (slot[root] == std::numeric_limits<std::size_t>::max()) {
      slot[root] = r.components.size();
      r.components.emplace_back();
    }
    r.components[slot[root]].push_back(static_cast<Elem>(u));
  }
  for (const auto& comp : r.components) {
    std::size_t diam = 0;
    for (Elem s : comp) {
      const auto dist = g.distances(s);
      for (Elem v : comp) diam = std::max(diam, dist[v]);
    }
    r.component_diameters.push_back(diam);
  }
  if (r.components.size() == 1) r.diameter = r.component_diameters[0];
  return r;
}

GraphReport graph_report(const FiniteGroup& G, GraphKind kind, const Caps& limits) {
  return analyze_graph(build_graph(G, kind, limits), kind, G.label());
}

nlohmann::ordered_json to_json(const GraphReport& r, const FiniteGroup* names) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["report"] = "graph";
  j["group"] = r.group;
  j["kind"] = to_string(r.kind);
  j["vertex_count"] = r.vertex_count;
  j["edge_count"] = r.edge_count;
  j["isolated"] = r.isolated;
  if (names) {
    auto& labels = j["isolated_names"] = nlohmann::ordered_json::array();
    for (Elem v : r.isolated) labels.push_back(names->name(v));
  }
  j["component_count"] = r.components.size();
  j["components"] = r.components;
  j["component_diameters"] = r.component_diameters;
  if (r.diameter) {
    j["diameter"] = *r.diameter;
  } else if (r.components.empty()) {
    j["diameter"] = nullptr;
  } else {
    j["diameter"] = "disconnected";
  }
  return j;
}

std::string to_dot(const Graph& g, const FiniteGroup& G, GraphKind kind) {
  std::ostringstream os;
  os << "graph \"" << to_string(kind) << "\" {\n";
  for (std::size_t u = 0; u < g.size(); ++u) {
    std::string label = G.name(static_cast<Elem>(u));
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    os << "  " << u << " [label=\"" << escaped << "\"];\n";
  }
  for (std::size_t u = 0; u < g.size(); ++u)
    g.rows[u].for_each([&](std::size_t v) {
      if (v > u) os << "  " << u << " -- " << v << ";\n";
    });
  os << "}\n";
  return os.str();
}

std::string to_csv(const Graph& g) {
  std::ostringstream os;
  os << "u,v\n";
  for (std::size_t u = 0; u < g.size(); ++u)
    g.rows[u].for_each([&](std::size_t v) {
      if (v > u) os << u << ',' << v << '\n';
    });
  return os.str();
}

// ---------------------------------------------------------------------------

Verdict check_isolated_classification(const FiniteGroup& G, const Caps& limits) {
  Verdict v;
  const std::size_t n = G.order();
  const auto& cs = G.cyclic_structure();
  auto is_generator = [&](Elem g) { return cs.element_order[g] == n; };

  const GraphReport virt = graph_report(G, GraphKind::virt_independence, limits);
  const auto cls = classify_unique_minimal(G);
  std::vector<Elem> odd;  // non-trivial, non-generating isolated vertices
  for (Elem g : virt.isolated)
    if (g != 0 && !is_generator(g)) odd.push_back(g);

  if (!odd.empty()) {
    if (cls.kind == MinimalClass::cyclic_p_power) {
      if (virt.isolated.size() != n) v.fail("cyclic p-group with a non-isolated vertex");
    } else if (cls.kind == MinimalClass::generalized_quaternion) {
      const auto z = cls.unique_minimal->elements();
      const Elem involution = z.at(1);
      if (!(virt.isolated.size() == 2 && virt.isolated[1] == involution))
        v.fail("generalized quaternion group whose isolated set is not {1, z}");
      if (!center(G).contains(involution)) v.fail("unique involution is not central");
    } else {
      v.fail("isolated vertex " + G.name(odd.front()) +
             " in a group that is neither a cyclic p-group nor generalized quaternion");
    }
  }
  // Converse direction.
  if (cls.kind == MinimalClass::cyclic_p_power && virt.isolated.size() != n)
    v.fail("cyclic p-group with a non-isolated vertex");
  if (cls.kind == MinimalClass::generalized_quaternion && virt.isolated.size() != 2)
    v.fail("generalized quaternion group with isolated set of size " +
           std::to_string(virt.isolated.size()));
  v.notes.push_back("virt-independence isolated: " + std::to_string(virt.isolated.size()) +
                    ", class " + to_string(cls.kind));

  if (n <= limits.independence) {
    const GraphReport ind = graph_report(G, GraphKind::independence, limits);
    Bitset expected = frattini(G, limits).bits();
    for (Elem g = 0; g < n; ++g)
      if (is_generator(g)) expected.set(g);
    Bitset got(n);
    for (Elem g : ind.isolated) got.set(g);
    if (!(got == expected)) {
      Bitset diff = got;
      diff.subtract(expected);
      Bitset diff2 = expected;
      diff2.subtract(got);
      const auto a = diff.find_first();
      const auto b = diff2.find_first();
      if (a < n) v.fail("isolated in the independence graph but neither Frattini nor generator: " +
                        G.name(static_cast<Elem>(a)));
      if (b < n) v.fail("expected isolated in the independence graph: " +
                        G.name(static_cast<Elem>(b)));
    }
    v.notes.push_back("independence isolated: " + std::to_string(ind.isolated.size()));
  } else {
    v.notes.push_back("independence part skipped above the independence cap");
  }
  return v;
}

Verdict check_quotient_lifting(const FiniteGroup& G, const SubgroupMask& N, const Caps& limits) {
  Verdict v;
  const Quotient Q = quotient(G, N);
  const std::size_t m = Q.group.order();
  std::vector<std::vector<Elem>> coset(m);
  for (Elem g = 0; g < G.order(); ++g) coset[Q.projection[g]].push_back(g);

  const auto& cs = G.cyclic_structure();
  std::size_t checked = 0;
  for (Elem a = 0; a < m && v.pass; ++a)
    for (Elem b = a + 1; b < m && v.pass; ++b) {
      if (!adj_virt_independent(Q.group, a, b)) continue;
      for (Elem x : coset[a])
        for (Elem y : coset[b]) {
          ++checked;
          if (cs.powers[y].test(x) || cs.powers[x].test(y)) {
            v.fail("virt-independence lift fails for " + G.name(x) + ", " + G.name(y));
            break;
          }
        }
    }
  v.notes.push_back("virt-independence lifted pairs: " + std::to_string(checked));

  if (G.order() <= limits.independence && v.pass) {
    const GraphReport rq = graph_report(Q.group, GraphKind::independence, limits);
    const GraphReport rg = graph_report(G, GraphKind::independence, limits);
    std::vector<std::size_t> comp_g(G.order(), std::numeric_limits<std::size_t>::max());
    for (std::size_t c = 0; c < rg.components.size(); ++c)
      for (Elem x : rg.components[c]) comp_g[x] = c;
    for (const auto& comp : rq.components) {
      std::size_t want = std::numeric_limits<std::size_t>::max();
      for (Elem a : comp)
        for (Elem x : coset[a]) {
          if (comp_g[x] == std::numeric_limits<std::size_t>::max()) {
            v.fail("lift " + G.name(x) + " of a non-isolated coset is isolated");
            return v;
          }
          if (want == std::numeric_limits<std::size_t>::max()) want = comp_g[x];
          if (comp_g[x] != want) {
            v.fail("component lift fails at " + G.name(x));
            return v;
          }
        }
    }
    v.notes.push_back("independence components of G/N: " + std::to_string(rq.components.size()));
  }
  return v;
}

}  // namespace virtgen
