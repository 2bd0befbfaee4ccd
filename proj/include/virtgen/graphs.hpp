#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "virtgen/bitset.hpp"
#include "virtgen/group.hpp"
#include "virtgen/subgroups.hpp"

namespace virtgen {

enum class GraphKind { generating, independence, virt_independence };
std::string to_string(GraphKind k);
/// Accepts "generating", "independence", "virt-independence".
GraphKind parse_graph_kind(const std::string& s);

/// <x, y> = G. Loops are rejected.
bool adj_generating(const FiniteGroup& G, Elem x, Elem y, const Caps& limits = caps());
/// x != y, x not in <y>, y not in <x>.
bool adj_virt_independent(const FiniteGroup& G, Elem x, Elem y);
/// x and y lie in a common irredundant generating set of G. Loops are rejected.
bool adj_independent(const FiniteGroup& G, Elem x, Elem y, const Caps& limits = caps());

/// Simple undirected graph on 0..n-1 as adjacency rows.
struct Graph {
  std::vector<Bitset> rows;

  std::size_t size() const noexcept { return rows.size(); }
  bool adjacent(std::size_t u, std::size_t v) const { return rows[u].test(v); }
  std::size_t edge_count() const;
  /// BFS distances from `source` (SIZE_MAX when unreachable).
  std::vector<std::size_t> distances(std::size_t source) const;
};

Graph build_graph(const FiniteGroup& G, GraphKind kind, const Caps& limits = caps());

struct GraphReport {
  GraphKind kind = GraphKind::generating;
  std::string group;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::vector<Elem> isolated;
  std::vector<std::vector<Elem>> components;    // over the non-isolated vertices
  std::vector<std::size_t> component_diameters;
  std::optional<std::size_t> diameter;          // set iff exactly one component

  bool connected() const noexcept { return components.size() == 1; }
  bool delta_empty() const noexcept { return components.empty(); }
};

GraphReport analyze_graph(const Graph& g, GraphKind kind, const std::string& label);
GraphReport graph_report(const FiniteGroup& G, GraphKind kind, const Caps& limits = caps());

nlohmann::ordered_json to_json(const GraphReport& r, const FiniteGroup* names = nullptr);
std::string to_dot(const Graph& g, const FiniteGroup& G, GraphKind kind);
/// One "u,v" line per edge with u < v.
std::string to_csv(const Graph& g);

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;  // witnesses on failure, facts on success

  void fail(std::string why) {
    pass = false;
    notes.push_back(std::move(why));
  }
};

/// Isolated vertices of the virt-independence and independence graphs against
/// the unique-minimal classification and Frat(G) u {single generators}.
Verdict check_isolated_classification(const FiniteGroup& G, const Caps& limits = caps());

/// Adjacency in the virt-independence graph of G/N lifts to every pair of coset
/// elements; same-component pairs of the independence graph of G/N lift to
/// same-component pairs of G.
Verdict check_quotient_lifting(const FiniteGroup& G, const SubgroupMask& N,
                               const Caps& limits = caps());

}  // namespace virtgen
