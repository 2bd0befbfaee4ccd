#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "virtgen/errors.hpp"
#include "virtgen/group_spec.hpp"
#include "virtgen/mingen.hpp"
#include "virtgen/subgroups.hpp"

using namespace virtgen;

namespace {

// Sizes of all irredundant generating sets, by exhaustive subsets (order <= 16).
std::set<std::size_t> naive_sizes(const FiniteGroup& G) {
  std::set<std::size_t> out;
  const std::size_t n = G.order();
  REQUIRE(n <= 16);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (mask & 1u) continue;  // the identity is never in an irredundant set
    std::vector<Elem> s;
    for (Elem g = 0; g < n; ++g)
      if (mask >> g & 1u) s.push_back(g);
    if (s.size() > 5) continue;
    if (oracle::irredundant_generating(G, s)) out.insert(s.size());
  }
  return out;
}

std::vector<std::size_t> sizes(const TarskiTable& t) {
  std::vector<std::size_t> out;
  for (const auto& [k, w] : t.witnesses) out.push_back(k);
  return out;
}

}  // namespace

TEST_CASE("rank_d") {
  CHECK(rank_d(build_group("S:4")) == 2);
  CHECK(rank_d(build_group("C:2*C:2*C:2")) == 3);
  CHECK(rank_d(build_group("C:1")) == 0);
  CHECK(rank_d(build_group("C:7")) == 1);
  CHECK(rank_d(build_group("SL2:8")) == 2);
}

TEST_CASE("enumerate_irredundant") {
  const FiniteGroup C6 = build_group("C:6");
  bool found = false;
  enumerate_irredundant(C6, 2, [&](const std::vector<Elem>& s) {
    found = found || s == std::vector<Elem>{2, 3};
    return true;
  });
  CHECK(found);

  std::size_t largest = 0;
  enumerate_irredundant(build_group("Q:8"), 3, [&](const std::vector<Elem>& s) {
    largest = std::max(largest, s.size());
    return true;
  });
  CHECK(largest == 2);

  const FiniteGroup V = build_group("C:2*C:2");
  std::size_t count = 0;
  enumerate_irredundant(V, 3, [&](const std::vector<Elem>& s) {
    CHECK(s.size() == 2);
    CHECK(oracle::irredundant_generating(V, s));
    ++count;
    return true;
  });
  CHECK(count == 3);
}

TEST_CASE("enumeration visits each set once and only valid sets") {
  for (const char* spec : {"S:3", "D:4", "C:2*C:2*C:2", "C:12"}) {
    const FiniteGroup G = build_group(spec);
    std::set<std::vector<Elem>> seen;
    enumerate_irredundant(G, 4, [&](const std::vector<Elem>& s) {
      CHECK(std::is_sorted(s.begin(), s.end()));
      CHECK(oracle::irredundant_generating(G, s));
      CHECK(seen.insert(s).second);
      return true;
    });
    CHECK(!seen.empty());
  }
}

TEST_CASE("tarski tables") {
  const auto s4 = tarski_table(build_group("S:4"));
  CHECK(s4.d == 2);
  CHECK(s4.m == 3);
  CHECK(sizes(s4) == std::vector<std::size_t>{2, 3});
  CHECK(s4.gap_free);
  const FiniteGroup S4 = build_group("S:4");
  CHECK(oracle::irredundant_generating(
      S4, {oracle::by_name(S4, "(1,2)"), oracle::by_name(S4, "(1,3)"), oracle::by_name(S4, "(1,4)")}));

  const auto v4 = tarski_table(build_group("C:2*C:2*C:2*C:2"));
  CHECK(v4.d == 4);
  CHECK(v4.m == 4);
  const auto q8 = tarski_table(build_group("Q:8"));
  CHECK(q8.d == 2);
  CHECK(q8.m == 2);
  for (const auto& [k, w] : s4.witnesses) CHECK(w.valid());
}

TEST_CASE("tarski sizes agree with exhaustive subsets") {
  for (const char* spec : {"S:3", "C:6", "Q:8", "D:4", "C:2*C:2*C:2", "C:12", "D:6", "Q:16"}) {
    const FiniteGroup G = build_group(spec);
    const auto expect = naive_sizes(G);
    const auto got = sizes(tarski_table(G));
    CHECK_MESSAGE(std::set<std::size_t>(got.begin(), got.end()) == expect, spec);
  }
}

TEST_CASE("tarski csv") {
  const auto csv = tarski_csv({tarski_table(build_group("C:6"))});
  CHECK(csv.rfind("group,d,m,size,witness\n", 0) == 0);
  CHECK(csv.find("C:6,1,2,1,") != std::string::npos);
  CHECK(csv.find("C:6,1,2,2,") != std::string::npos);
}

TEST_CASE("lift_minimal") {
  const FiniteGroup C4 = build_group("C:4");
  const auto a = lift_minimal(C4, closure(C4, {2}), std::vector<Elem>{1});
  CHECK(a.members == std::vector<Elem>{1});

  const FiniteGroup V = build_group("C:2*C:2");
  const Elem e01 = oracle::by_name(V, "(1, g)"), e10 = oracle::by_name(V, "(g, 1)");
  const auto b = lift_minimal(V, closure(V, {e01}), std::vector<Elem>{e10});
  CHECK(std::set<Elem>(b.members.begin(), b.members.end()) == std::set<Elem>{e01, e10});
  CHECK(b.valid());

  const FiniteGroup S3 = build_group("S:3");
  const std::vector<Elem> gens{oracle::by_name(S3, "(1,2)"), oracle::by_name(S3, "(1,2,3)")};
  CHECK(lift_minimal(S3, closure(S3, {}), gens).members == gens);
  CHECK_THROWS_AS(lift_minimal(S3, closure(S3, {gens[0]}), gens), PreconditionError);
}

TEST_CASE("gaschutz_search") {
  const FiniteGroup C6 = build_group("C:6");
  const auto n = gaschutz_search(C6, closure(C6, {2}), std::vector<Elem>{3});
  REQUIRE(n.size() == 1);
  CHECK(C6.element_order(C6.mul(3, n[0])) == 6);

  const FiniteGroup S3 = build_group("S:3");
  const std::vector<Elem> gens{oracle::by_name(S3, "(1,2)"), oracle::by_name(S3, "(1,2,3)")};
  CHECK(gaschutz_search(S3, closure(S3, {}), gens) == std::vector<Elem>{0, 0});

  const FiniteGroup V = build_group("C:2*C:2");
  const auto m = gaschutz_search(V, closure(V, V.generators()), std::vector<Elem>{0, 0});
  REQUIRE(m.size() == 2);
  CHECK(oracle::generates(V, m));
}

TEST_CASE("contains_in_irredundant") {
  const FiniteGroup S4 = build_group("S:4");
  const Elem a = oracle::by_name(S4, "(1,2)"), b = oracle::by_name(S4, "(3,4)");
  for (const auto& w : {contains_in_irredundant(S4, a, b), contains_in_irredundant_search(S4, a, b)}) {
    REQUIRE(w.has_value());
    CHECK(w->valid());
    CHECK(w->members.size() == 3);
    CHECK(std::count(w->members.begin(), w->members.end(), a) == 1);
    CHECK(std::count(w->members.begin(), w->members.end(), b) == 1);
  }
  const FiniteGroup Q8 = build_group("Q:8");
  CHECK_FALSE(contains_in_irredundant(Q8, oracle::by_name(Q8, "x^2"), oracle::by_name(Q8, "x")));
  CHECK_FALSE(contains_in_irredundant_search(Q8, oracle::by_name(Q8, "x^2"), oracle::by_name(Q8, "x")));
  const FiniteGroup C6 = build_group("C:6");
  const auto c = contains_in_irredundant(C6, 2, 3);
  REQUIRE(c.has_value());
  CHECK(c->members == std::vector<Elem>{2, 3});
}

TEST_CASE("independence oracle agrees with backtracking") {
  for (const char* spec : {"S:4", "D:6", "C:2*C:2*C:2", "C:30", "Dic:3"}) {
    const FiniteGroup G = build_group(spec);
    IndependenceOracle o(G);
    for (Elem x = 1; x < G.order(); ++x)
      for (Elem y = x + 1; y < G.order(); ++y) {
        const auto w = o.witness(x, y);
        CHECK(w.has_value() == contains_in_irredundant_search(G, x, y).has_value());
        if (w) CHECK(oracle::irredundant_generating(G, *w));
      }
  }
}

TEST_CASE("search caps refuse instead of truncating") {
  Caps small;
  small.search = 100;
  CHECK_THROWS_AS(tarski_table(build_group("SL2:8"), small), CapExceeded);
}
