#include "virtgen/seq_product.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "virtgen/errors.hpp"
#include "virtgen/group_spec.hpp"
#include "virtgen/io.hpp"

namespace virtgen {

namespace {
constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace

CoordinateGraph CoordinateGraph::from_group(FiniteGroup G, GraphKind kind, const Caps& limits) {
  CoordinateGraph c;
  c.label_ = G.label() + ":" + to_string(kind);
  c.graph_ = std::make_shared<const Graph>(build_graph(G, kind, limits));
  c.group_ = std::make_shared<const FiniteGroup>(std::move(G));
  c.kind_ = kind;
  return c;
}

CoordinateGraph CoordinateGraph::from_graph(Graph g, std::string label) {
  if (g.size() == 0) throw PreconditionError("coordinate graph must be nonempty");
  CoordinateGraph c;
  c.label_ = std::move(label);
  c.graph_ = std::make_shared<const Graph>(std::move(g));
  return c;
}

CoordinateGraph CoordinateGraph::path(std::size_t length) {
  CoordinateGraph c;
  c.label_ = "path:" + std::to_string(length);
  c.path_length_ = length;
  return c;
}

std::size_t CoordinateGraph::vertex_count() const noexcept {
  return graph_ ? graph_->size() : path_length_ + 1;
}

bool CoordinateGraph::adjacent(std::size_t u, std::size_t v) const {
  if (u >= vertex_count() || v >= vertex_count()) throw PreconditionError("vertex out of range");
  if (graph_) return graph_->adjacent(u, v);
  return u + 1 == v || v + 1 == u;
}

bool CoordinateGraph::isolated(std::size_t v) const {
  if (graph_) return graph_->rows[v].none();
  return path_length_ == 0;
}

std::vector<std::size_t> CoordinateGraph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  if (graph_) {
    graph_->rows[v].for_each([&](std::size_t u) { out.push_back(u); });
  } else {
    if (v > 0) out.push_back(v - 1);
    if (v < path_length_) out.push_back(v + 1);
  }
  return out;
}

std::optional<std::vector<std::size_t>> CoordinateGraph::shortest_path(std::size_t u,
                                                                      std::size_t v) const {
  const auto d = distance(u, v);
  if (!d) return std::nullopt;
  if (!graph_) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= *d; ++i) out.push_back(u <= v ? u + i : u - i);
    return out;
  }
  // Walk back from v along strictly decreasing distance to u.
  std::vector<std::size_t> out{v};
  std::size_t cur = v;
  while (cur != u) {
    for (std::size_t w : neighbors(cur))
      if (distance(u, w) == *distance(u, cur) - 1) {
        cur = w;
        break;
      }
    out.push_back(cur);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> CoordinateGraph::distance(std::size_t u, std::size_t v) const {
  if (u >= vertex_count() || v >= vertex_count()) throw PreconditionError("vertex out of range");
  if (!graph_) return u > v ? u - v : v - u;
  auto it = bfs_cache_.find(u);
  if (it == bfs_cache_.end()) it = bfs_cache_.emplace(u, graph_->distances(u)).first;
  const std::size_t d = it->second[v];
  if (d == kUnreached) return std::nullopt;
  return d;
}

std::size_t CoordinateGraph::diameter() const {
  if (!graph_) return path_length_;
  std::size_t best = 0;
  for (std::size_t u = 0; u < graph_->size(); ++u) {
    if (isolated(u)) continue;
    for (std::size_t v = 0; v < graph_->size(); ++v)
      if (auto d = distance(u, v)) best = std::max(best, *d);
  }
  return best;
}

std::optional<std::size_t> CoordinateGraph::vertex_at_distance(std::size_t u, std::size_t d) const {
  if (!graph_) {
    if (u >= d) return u - d;
    if (u + d <= path_length_) return u + d;
    return std::nullopt;
  }
  for (std::size_t v = 0; v < graph_->size(); ++v)
    if (distance(u, v) == d) return v;
  return std::nullopt;
}

std::optional<std::size_t> CoordinateGraph::first_vertex() const {
  for (std::size_t v = 0; v < vertex_count(); ++v)
    if (!isolated(v)) return v;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

CoordinateFamily parse_family(const std::string& text, const Caps& limits) {
  CoordinateFamily F;
  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "family line " + std::to_string(lineno);
    if (line.rfind("path:", 0) == 0) {
      const std::string len = trim(line.substr(5));
      if (len.empty() || len.size() > 12 || len.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(where + ": bad path length '" + len + "'");
      F.graphs.push_back(CoordinateGraph::path(std::stoull(len)));
    } else if (line.rfind("group:", 0) == 0) {
      const std::string rest = line.substr(6);
      const auto colon = rest.rfind(':');
      if (colon == std::string::npos) throw ParseError(where + ": expected group:<spec>:<kind>");
      const GraphKind kind = parse_graph_kind(trim(rest.substr(colon + 1)));
      F.graphs.push_back(
          CoordinateGraph::from_group(build_group(trim(rest.substr(0, colon)), limits), kind, limits));
    } else {
      throw ParseError(where + ": expected 'path:<len>' or 'group:<spec>:<kind>'");
    }
  }
  if (F.graphs.empty()) throw ParseError("family has no coordinates");
  return F;
}

CoordinateFamily load_family(const std::string& path, const Caps& limits) {
  return parse_family(read_file(path), limits);
}

CoordinateFamily doubling_path_family(std::size_t max_exponent) {
  if (max_exponent > 62) throw PreconditionError("path exponent too large");
  CoordinateFamily F;
  for (std::size_t n = 0; n <= max_exponent; ++n)
    F.graphs.push_back(CoordinateGraph::path(std::size_t{1} << n));
  return F;
}

bool seq_adjacent(const CoordinateFamily& F, const SeqElement& x, const SeqElement& y,
                  std::size_t m) {
  const std::size_t N = F.horizon();
  if (m > N) throw PreconditionError("exception prefix beyond the horizon");
  if (x.size() != N || y.size() != N) throw PreconditionError("element length differs from horizon");
  for (std::size_t n = m; n < N; ++n)
    if (!F.graphs[n].adjacent(x[n], y[n])) return false;
  return true;
}

namespace {

// Shortest walk from a to b whose length has the given parity.
std::optional<std::vector<std::size_t>> parity_walk(const CoordinateGraph& g, std::size_t a,
                                                    std::size_t b, std::size_t parity) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> prev(2 * n, kUnreached);
  std::vector<bool> seen(2 * n, false);
  std::deque<std::size_t> queue{2 * a};
  seen[2 * a] = true;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    const std::size_t v = s / 2, p = s % 2;
    if (v == b && p == parity) {
      std::vector<std::size_t> walk;
      for (std::size_t t = s; t != kUnreached; t = prev[t]) walk.push_back(t / 2);
      std::reverse(walk.begin(), walk.end());
      return walk;
    }
    for (std::size_t u : g.neighbors(v)) {
      const std::size_t t = 2 * u + (1 - p);
      if (seen[t]) continue;
      seen[t] = true;
      prev[t] = s;
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

bool try_triangle(const CoordinateGraph& g, std::vector<std::size_t>& walk) {
  const FiniteGroup& G = *g.group();
  if (walk.size() >= 2) {
    const auto a = static_cast<Elem>(walk[walk.size() - 2]);
    const auto b = static_cast<Elem>(walk.back());
    const Elem ab = G.mul(a, b);
    if (ab == a || ab == b || !g.adjacent(a, ab) || !g.adjacent(ab, b)) return false;
    walk.insert(walk.end() - 1, ab);
    return true;
  }
  const auto x = static_cast<Elem>(walk[0]);
  for (std::size_t cv : g.neighbors(x)) {
    const auto c = static_cast<Elem>(cv);
    const Elem xc = G.mul(x, c);
    if (xc == x || xc == c || !g.adjacent(x, xc) || !g.adjacent(xc, c)) continue;
    walk.push_back(xc);
    walk.push_back(c);
    walk.push_back(x);
    return true;
  }
  return false;
}

}  // namespace

std::vector<std::size_t> pad_walk(const CoordinateGraph& g, const std::vector<std::size_t>& path,
                                  std::size_t L) {
  if (path.empty()) throw PreconditionError("pad_walk: empty path");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!g.adjacent(path[i], path[i + 1])) throw PreconditionError("pad_walk: path is not a walk");
  const std::size_t mu = path.size() - 1;
  if (L < mu) throw PreconditionError("pad_walk: target shorter than the path");
  std::vector<std::size_t> walk = path;
  std::size_t surplus = L - mu;

  if (surplus % 2 == 1) {
    const std::size_t before = walk.size();
    if (g.group_mode() && try_triangle(g, walk) && walk.size() - before <= surplus) {
      surplus -= walk.size() - before;
    } else {
      walk = path;
      std::optional<std::vector<std::size_t>> alt;
      if (!g.is_path()) alt = parity_walk(g, path.front(), path.back(), L % 2);
      if (!alt || alt->size() - 1 > L)
        throw PreconditionError("pad_walk: no walk of length " + std::to_string(L) +
                                " (parity obstruction) in " + g.label());
      walk = std::move(*alt);
      surplus = L - (walk.size() - 1);
    }
  }
  if (surplus > 0) {
    std::size_t back;
    if (walk.size() >= 2) {
      back = walk[walk.size() - 2];
    } else {
      const auto nb = g.neighbors(walk[0]);
      if (nb.empty()) throw PreconditionError("pad_walk: isolated endpoint cannot be padded");
      back = nb.front();
    }
    const std::size_t last = walk.back();
    for (std::size_t i = 0; i < surplus / 2; ++i) {
      walk.push_back(back);
      walk.push_back(last);
    }
  }
  return walk;
}

std::vector<SeqElement> stitch(const CoordinateFamily& F,
                               const std::vector<std::vector<std::size_t>>& paths, std::size_t m) {
  const std::size_t N = F.horizon();
  if (paths.size() != N) throw PreconditionError("stitch: one path per coordinate required");
  std::vector<std::vector<std::size_t>> padded(N);
  for (std::size_t n = 0; n < N; ++n) padded[n] = pad_walk(F.graphs[n], paths[n], m);
  std::vector<SeqElement> out(m + 1, SeqElement(N));
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t n = 0; n < N; ++n) out[i][n] = padded[n][i];
  for (std::size_t i = 0; i < m; ++i)
    if (!seq_adjacent(F, out[i], out[i + 1], 0))
      throw Error("stitch: product step " + std::to_string(i) + " is not an edge");
  return out;
}

ComponentBound component_criterion(const CoordinateFamily& F, const SeqElement& x,
                                   const SeqElement& y, std::size_t threshold) {
  const std::size_t N = F.horizon();
  if (x.size() != N || y.size() != N) throw PreconditionError("element length differs from horizon");
  ComponentBound r;
  std::size_t best = 0;
  bool infinite = false;
  for (std::size_t n = 0; n < N; ++n) {
    const auto& g = F.graphs[n];
    if (g.isolated(x[n]) || g.isolated(y[n])) continue;
    r.support.push_back(n);
    const auto d = g.distance(x[n], y[n]);
    r.distances.push_back(d ? *d : kUnreached);
    if (d) {
      best = std::max(best, *d);
    } else {
      infinite = true;
    }
  }
  if (!infinite) r.bound = best;
  r.divergent = infinite || best > threshold;
  return r;
}

SeparationReport separation_demo(const CoordinateFamily& F, std::vector<double> taus,
                                 std::size_t threshold) {
  for (double t : taus)
    if (!(t > 1.0) || !std::isfinite(t)) throw PreconditionError("separation: every tau must exceed 1");
  std::sort(taus.begin(), taus.end());
  for (std::size_t i = 0; i + 1 < taus.size(); ++i)
    if (taus[i] == taus[i + 1]) throw PreconditionError("separation: taus must be distinct");
  const std::size_t N = F.horizon();
  for (std::size_t n = 0; n + 1 < N; ++n)
    if (F.graphs[n].diameter() >= F.graphs[n + 1].diameter())
      throw PreconditionError("separation: coordinate diameters must increase strictly");

  SeparationReport r;
  r.taus = taus;
  r.threshold = threshold;
  r.horizon = N;
  SeqElement x(N);
  for (std::size_t n = 0; n < N; ++n) {
    auto v = F.graphs[n].first_vertex();
    if (!v) throw PreconditionError("separation: coordinate without edges");
    x[n] = *v;
  }
  for (double tau : taus) {
    SeqElement y(N);
    for (std::size_t n = 0; n < N; ++n) {
      const auto d = 1 + static_cast<std::size_t>(std::floor(static_cast<double>(n) / tau));
      auto v = F.graphs[n].vertex_at_distance(x[n], d);
      if (!v)
        throw PreconditionError("separation: coordinate " + std::to_string(n) +
                                " has no vertex at distance " + std::to_string(d));
      y[n] = *v;
    }
    r.y.push_back(std::move(y));
  }
  r.all_separated = true;
  for (std::size_t i = 0; i < taus.size(); ++i)
    for (std::size_t j = i + 1; j < taus.size(); ++j) {
      SeparationPair p;
      p.tau1 = taus[i];
      p.tau2 = taus[j];
      for (std::size_t n = 0; n < N; ++n) {
        const auto d = F.graphs[n].distance(r.y[i][n], r.y[j][n]);
        const std::size_t gap = d ? *d : kUnreached;
        p.max_gap = std::max(p.max_gap, gap);
        if (gap > threshold && !p.first_coordinate) p.first_coordinate = n;
      }
      if (!p.first_coordinate) r.all_separated = false;
      r.pairs.push_back(p);
    }
  return r;
}

nlohmann::ordered_json to_json(const SeparationReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["report"] = "separation";
  j["horizon"] = r.horizon;
  j["threshold"] = r.threshold;
  j["taus"] = r.taus;
  auto& pairs = j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : r.pairs) {
    nlohmann::ordered_json e;
    e["tau1"] = p.tau1;
    e["tau2"] = p.tau2;
    e["max_gap"] = p.max_gap;
    if (p.first_coordinate) {
      e["first_coordinate"] = *p.first_coordinate;
    } else {
      e["first_coordinate"] = nullptr;
    }
    e["separated"] = p.first_coordinate.has_value();
    pairs.push_back(e);
  }
  j["all_separated"] = r.all_separated;
  return j;
}

}  // namespace virtgen
