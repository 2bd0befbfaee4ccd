#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "virtgen/errors.hpp"
#include "virtgen/graphs.hpp"
#include "virtgen/group_spec.hpp"
#include "virtgen/subgroups.hpp"

using namespace virtgen;

namespace {

// The pair {x, y} is an irredundant generating set of the subgroup it generates.
bool naive_virt(const FiniteGroup& G, Elem x, Elem y) {
  if (x == y) return false;
  return !oracle::closure(G, {x})[y] && !oracle::closure(G, {y})[x];
}

// Some subgroup H containing x, y has an irredundant generating set containing both.
bool naive_virt_by_subgroups(const FiniteGroup& G, Elem x, Elem y) {
  if (x == y) return false;
  for (const auto& H : oracle::subgroups(G)) {
    if (!H[x] || !H[y]) continue;
    const auto mem = oracle::members(H);
    // Extend {x, y} by up to two further elements of H.
    auto irredundant_in_H = [&](const std::vector<Elem>& S) {
      if (oracle::closure(G, S) != H) return false;
      for (std::size_t i = 0; i < S.size(); ++i) {
        auto T = S;
        T.erase(T.begin() + static_cast<long>(i));
        if (oracle::closure(G, T) == H) return false;
      }
      return true;
    };
    if (irredundant_in_H({x, y})) return true;
    for (Elem a : mem)
      if (irredundant_in_H({x, y, a})) return true;
  }
  return false;
}

std::set<Elem> neighbours_virt(const FiniteGroup& G, Elem x) {
  std::set<Elem> out;
  for (Elem y = 0; y < G.order(); ++y)
    if (adj_virt_independent(G, x, y)) out.insert(y);
  return out;
}

}  // namespace

TEST_CASE("generating adjacency") {
  const FiniteGroup S3 = build_group("S:3");
  const Elem t = oracle::by_name(S3, "(1,2)"), c = oracle::by_name(S3, "(1,2,3)"),
             c2 = oracle::by_name(S3, "(1,3,2)");
  CHECK(adj_generating(S3, t, c));
  CHECK_FALSE(adj_generating(S3, c, c2));
  CHECK_THROWS_AS(adj_generating(S3, t, t), PreconditionError);
}

TEST_CASE("generating adjacency matches closure") {
  for (const char* spec : {"S:4", "Q:8", "D:6", "C:12", "A:5"}) {
    const FiniteGroup G = build_group(spec);
    for (Elem x = 0; x < G.order(); ++x)
      for (Elem y = x + 1; y < G.order(); ++y)
        CHECK(adj_generating(G, x, y) == oracle::generates(G, {x, y}));
  }
}

TEST_CASE("virt-independence adjacency") {
  const FiniteGroup Q8 = build_group("Q:8");
  CHECK(adj_virt_independent(Q8, oracle::by_name(Q8, "x"), oracle::by_name(Q8, "y")));
  for (const char* spec : {"S:4", "Q:16", "C:12"}) {
    const FiniteGroup G = build_group(spec);
    for (Elem g = 0; g < G.order(); ++g) CHECK_FALSE(adj_virt_independent(G, g, G.mul(g, g)));
  }
}

TEST_CASE("virt-independence equals mutual cyclic non-containment up to order 48") {
  for (const char* spec : {"S:4", "Q:16", "Dic:3", "D:12", "C:3*Q:8", "C:2*C:2*C:2", "C:2*D:4",
                           "Dic:6", "C:48", "S:3*C:8"}) {
    const FiniteGroup G = build_group(spec);
    REQUIRE(G.order() <= 48);
    for (Elem x = 0; x < G.order(); ++x)
      for (Elem y = 0; y < G.order(); ++y) CHECK(adj_virt_independent(G, x, y) == naive_virt(G, x, y));
  }
  for (const char* spec : {"S:3", "Q:8", "Dic:3", "C:2*C:4"}) {
    const FiniteGroup G = build_group(spec);
    for (Elem x = 0; x < G.order(); ++x)
      for (Elem y = 0; y < G.order(); ++y)
        CHECK(adj_virt_independent(G, x, y) == naive_virt_by_subgroups(G, x, y));
  }
}

TEST_CASE("Dic:3 neighbourhood of a^2 b") {
  const FiniteGroup D = build_group("Dic:3");
  Elem a = 0, b = 0;
  for (Elem u = 0; u < 12; ++u)
    for (Elem v = 0; v < 12; ++v)
      if (D.element_order(u) == 4 && D.element_order(v) == 3 && D.conj(v, u) == D.inv(v)) {
        a = u;
        b = v;
      }
  std::set<Elem> expected;
  for (int i : {1, 3})
    for (int j = 0; j < 3; ++j) expected.insert(D.mul(D.pow(a, i), D.pow(b, j)));
  CHECK(neighbours_virt(D, D.mul(D.pow(a, 2), b)) == expected);
}

TEST_CASE("independence adjacency") {
  const FiniteGroup S4 = build_group("S:4");
  CHECK(adj_independent(S4, oracle::by_name(S4, "(1,2)"), oracle::by_name(S4, "(3,4)")));
  CHECK(oracle::irredundant_generating(
      S4, {oracle::by_name(S4, "(1,2)"), oracle::by_name(S4, "(3,4)"), oracle::by_name(S4, "(1,3)")}));
  const FiniteGroup C6 = build_group("C:6");
  CHECK(adj_independent(C6, 2, 3));
  const FiniteGroup Q8 = build_group("Q:8");
  CHECK_FALSE(adj_independent(Q8, oracle::by_name(Q8, "x^2"), oracle::by_name(Q8, "x")));
  CHECK_THROWS_AS(adj_independent(Q8, 1, 1), PreconditionError);
}

TEST_CASE("independence adjacency matches brute-force irredundant sets") {
  for (const char* spec : {"S:3", "C:6", "Q:8", "C:2*C:2*C:2", "D:6", "A:4"}) {
    const FiniteGroup G = build_group(spec);
    const std::size_t n = G.order();
    std::set<std::pair<Elem, Elem>> pairs;
    // Irredundant generating sets have at most 3 elements in these groups.
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b) {
        if (oracle::irredundant_generating(G, {a, b})) pairs.insert({a, b});
        for (Elem c = b + 1; c < n; ++c)
          if (oracle::irredundant_generating(G, {a, b, c})) pairs.insert({a, b}), pairs.insert({a, c}), pairs.insert({b, c});
      }
    for (Elem x = 0; x < n; ++x)
      for (Elem y = x + 1; y < n; ++y) CHECK(adj_independent(G, x, y) == (pairs.count({x, y}) > 0));
  }
}

TEST_CASE("graph reports") {
  const auto dic = graph_report(build_group("Dic:3"), GraphKind::virt_independence);
  REQUIRE(dic.diameter.has_value());
  CHECK(*dic.diameter == 3);

  const auto c4 = graph_report(build_group("C:4"), GraphKind::virt_independence);
  CHECK(c4.isolated.size() == 4);
  CHECK(c4.delta_empty());
  CHECK_FALSE(c4.diameter.has_value());
  CHECK(to_json(c4)["diameter"].is_null());

  const FiniteGroup Q8 = build_group("Q:8");
  const auto q = graph_report(Q8, GraphKind::generating);
  CHECK(q.connected());
  std::set<Elem> non_isolated(q.components[0].begin(), q.components[0].end());
  std::set<Elem> expect;
  for (Elem g = 0; g < 8; ++g)
    if (Q8.element_order(g) == 4) expect.insert(g);
  CHECK(non_isolated == expect);
  CHECK(q.edge_count == 12);
}

TEST_CASE("disconnected graphs report per-component diameters") {
  Graph g;
  g.rows.assign(5, Bitset(5));
  auto edge = [&](std::size_t u, std::size_t v) {
    g.rows[u].set(v);
    g.rows[v].set(u);
  };
  edge(0, 1);
  edge(1, 2);
  edge(3, 4);
  const auto r = analyze_graph(g, GraphKind::generating, "two paths");
  CHECK(r.components.size() == 2);
  CHECK(r.component_diameters == std::vector<std::size_t>{2, 1});
  CHECK(to_json(r)["diameter"] == "disconnected");
  CHECK(to_csv(g) == "u,v\n0,1\n1,2\n3,4\n");
}

TEST_CASE("isolated vertex classification") {
  const FiniteGroup Q16 = build_group("Q:16");
  CHECK(check_isolated_classification(Q16).pass);
  const auto r = graph_report(Q16, GraphKind::virt_independence);
  REQUIRE(r.isolated.size() == 2);
  CHECK(r.isolated[0] == 0);
  CHECK(Q16.element_order(r.isolated[1]) == 2);

  const FiniteGroup C27 = build_group("C:27");
  CHECK(check_isolated_classification(C27).pass);
  CHECK(graph_report(C27, GraphKind::virt_independence).isolated.size() == 27);

  const auto s4 = graph_report(build_group("S:4"), GraphKind::independence);
  CHECK(s4.isolated == std::vector<Elem>{0});
  CHECK(check_isolated_classification(build_group("S:4")).pass);
}

TEST_CASE("quotient lifting") {
  const FiniteGroup Q16 = build_group("Q:16");
  CHECK(check_quotient_lifting(Q16, *classify_unique_minimal(Q16).unique_minimal).pass);
  const FiniteGroup D = build_group("Dic:3");
  Elem b = 0;
  for (Elem g = 0; g < 12; ++g)
    if (D.element_order(g) == 3) b = g;
  CHECK(check_quotient_lifting(D, closure(D, {b})).pass);
  CHECK(check_quotient_lifting(D, closure(D, D.generators())).pass);
}

TEST_CASE("graph kind names") {
  CHECK(parse_graph_kind("virt-independence") == GraphKind::virt_independence);
  CHECK(to_string(GraphKind::independence) == "independence");
  CHECK_THROWS_AS(parse_graph_kind("virtual"), ParseError);
}
