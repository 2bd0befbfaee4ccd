#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "virtgen/graphs.hpp"

namespace virtgen {

/// One coordinate of the truncated product: the graph of a finite group under an
/// adjacency kind, an explicit graph, or an implicit path with `length` edges.
class CoordinateGraph {
 public:
  static CoordinateGraph from_group(FiniteGroup G, GraphKind kind, const Caps& limits = caps());
  static CoordinateGraph from_graph(Graph g, std::string label);
  static CoordinateGraph path(std::size_t length);

  const std::string& label() const noexcept { return label_; }
  std::size_t vertex_count() const noexcept;
  bool adjacent(std::size_t u, std::size_t v) const;
  bool isolated(std::size_t v) const;
  /// Graph distance; nullopt when unreachable.
  std::optional<std::size_t> distance(std::size_t u, std::size_t v) const;
  /// Largest finite distance between non-isolated vertices.
  std::size_t diameter() const;
  /// Least vertex at exactly distance d from u, if any.
  std::optional<std::size_t> vertex_at_distance(std::size_t u, std::size_t d) const;
  /// Least non-isolated vertex.
  std::optional<std::size_t> first_vertex() const;
  std::vector<std::size_t> neighbors(std::size_t v) const;
  /// Some shortest path from u to v (vertex list), if v is reachable.
  std::optional<std::vector<std::size_t>> shortest_path(std::size_t u, std::size_t v) const;

  bool group_mode() const noexcept { return group_ != nullptr; }
  const FiniteGroup* group() const noexcept { return group_.get(); }
  GraphKind kind() const noexcept { return kind_; }
  bool is_path() const noexcept { return !graph_; }

 private:
  std::string label_;
  std::shared_ptr<const FiniteGroup> group_;
  GraphKind kind_ = GraphKind::generating;
  std::shared_ptr<const Graph> graph_;  // null for implicit paths
  std::size_t path_length_ = 0;
  mutable std::unordered_map<std::size_t, std::vector<std::size_t>> bfs_cache_;
};

struct CoordinateFamily {
  std::vector<CoordinateGraph> graphs;
  std::size_t horizon() const noexcept { return graphs.size(); }
};

/// Lines `group:<spec>:<kind>` or `path:<len>`; blank lines and '#' comments skipped.
CoordinateFamily parse_family(const std::string& text, const Caps& limits = caps());
CoordinateFamily load_family(const std::string& path, const Caps& limits = caps());
/// Coordinates path:2^n for n = 0..max_exponent.
CoordinateFamily doubling_path_family(std::size_t max_exponent);

using SeqElement = std::vector<std::size_t>;

/// Edge at every coordinate n with m <= n < horizon.
bool seq_adjacent(const CoordinateFamily& F, const SeqElement& x, const SeqElement& y,
                  std::size_t m);

/// Walk of exactly L edges with the endpoints of `path`.
std::vector<std::size_t> pad_walk(const CoordinateGraph& g, const std::vector<std::size_t>& path,
                                  std::size_t L);

/// Pads every coordinate path to length m and zips; checks each product edge.
std::vector<SeqElement> stitch(const CoordinateFamily& F,
                               const std::vector<std::vector<std::size_t>>& paths, std::size_t m);

struct ComponentBound {
  std::optional<std::size_t> bound;       // nullopt: some coordinate is disconnected
  bool divergent = false;                 // bound exceeds the threshold (or is infinite)
  std::vector<std::size_t> support;       // coordinates where both entries are non-isolated
  std::vector<std::size_t> distances;     // per support coordinate (SIZE_MAX when unreachable)
};
ComponentBound component_criterion(const CoordinateFamily& F, const SeqElement& x,
                                   const SeqElement& y, std::size_t threshold);

struct SeparationPair {
  double tau1 = 0;
  double tau2 = 0;
  std::optional<std::size_t> first_coordinate;  // first n with distance gap above threshold
  std::size_t max_gap = 0;
};
struct SeparationReport {
  std::vector<double> taus;
  std::size_t threshold = 0;
  std::size_t horizon = 0;
  std::vector<SeqElement> y;  // y_tau per tau
  std::vector<SeparationPair> pairs;
  bool all_separated = false;
};
/// x is the least non-isolated vertex per coordinate; y_tau sits at distance
/// 1 + floor(n / tau) from it at coordinate n.
SeparationReport separation_demo(const CoordinateFamily& F, std::vector<double> taus,
                                 std::size_t threshold);
nlohmann::ordered_json to_json(const SeparationReport& r);

}  // namespace virtgen
