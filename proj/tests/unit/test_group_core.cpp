#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "oracles.hpp"
#include "virtgen/errors.hpp"
#include "virtgen/field.hpp"
#include "virtgen/group_spec.hpp"
#include "virtgen/subgroups.hpp"

using namespace virtgen;

namespace {

std::vector<std::size_t> sorted_orders(const std::vector<SubgroupMask>& v) {
  std::vector<std::size_t> out;
  for (const auto& m : v) out.push_back(m.size());
  std::sort(out.begin(), out.end());
  return out;
}

bool same(const Bitset& b, const oracle::Set& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (b.test(i) != s[i]) return false;
  return true;
}

// GF(8) with x^3 + x + 1, written out independently of the library field.
unsigned gf8_mul(unsigned a, unsigned b) {
  unsigned r = 0;
  for (int i = 0; i < 3; ++i)
    if (b >> i & 1) r ^= a << i;
  for (int i = 4; i >= 3; --i)
    if (r >> i & 1) r ^= 0xBu << (i - 3);
  return r;
}

}  // namespace

TEST_CASE("build_group orders") {
  CHECK(build_group("S:3").order() == 6);
  CHECK(build_group("C:1").order() == 1);
  CHECK(build_group("D:5").order() == 10);
  CHECK(build_group("Q:16").order() == 16);
  CHECK(build_group("Q:2^5").order() == 32);
  CHECK(build_group("Dic:5").order() == 20);
  CHECK(build_group("A:5").order() == 60);
  CHECK(build_group("SL2:4").order() == 60);
  CHECK(build_group("C:3*Q:8").order() == 24);
  CHECK(build_group("(Q:8)/Z").order() == 4);
}

TEST_CASE("SL2:8 agrees with exhaustive matrix enumeration") {
  std::size_t det_one = 0;
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b)
      for (unsigned c = 0; c < 8; ++c)
        for (unsigned d = 0; d < 8; ++d)
          if ((gf8_mul(a, d) ^ gf8_mul(b, c)) == 1) ++det_one;
  const FiniteGroup G = build_group("SL2:8");
  CHECK(det_one == 504);
  REQUIRE(G.order() == det_one);
  std::set<Word> words;
  for (Elem g = 0; g < G.order(); ++g) {
    const Word w = *G.word(g);
    CHECK((gf8_mul(w[0], w[3]) ^ gf8_mul(w[1], w[2])) == 1);
    words.insert(w);
  }
  CHECK(words.size() == 504);
}

TEST_CASE("Dic:3 satisfies its presentation") {
  const FiniteGroup G = build_group("Dic:3");
  REQUIRE(G.order() == 12);
  bool found = false;
  for (Elem a = 0; a < 12 && !found; ++a)
    for (Elem b = 0; b < 12 && !found; ++b)
      found = G.element_order(a) == 4 && G.element_order(b) == 3 && G.conj(b, a) == G.inv(b) &&
              oracle::generates(G, {a, b});
  CHECK(found);
}

TEST_CASE("build_group rejects bad input") {
  CHECK_THROWS_AS(build_group("X:3"), ParseError);
  CHECK_THROWS_AS(build_group("C:"), ParseError);
  CHECK_THROWS_AS(build_group("Q:12"), ParseError);
  CHECK_THROWS_AS(build_group("SL2:6"), ParseError);
  CHECK_THROWS_AS(build_group("C:3*"), ParseError);
  Caps small;
  small.order = 100;
  CHECK_THROWS_AS(build_group("S:6", small), CapExceeded);
}

TEST_CASE("group axioms hold across families") {
  for (const char* spec : {"C:12", "D:7", "Q:16", "Dic:4", "S:4", "A:5", "SL2:4", "C:2*S:3",
                           "(Dic:3)/Z", "Sign:3:1,2,3"})
    CHECK_MESSAGE(!check_axioms(build_group(spec)).has_value(), spec);
}

TEST_CASE("closure examples") {
  const FiniteGroup S3 = build_group("S:3");
  const Elem t = oracle::by_name(S3, "(1,2)"), c = oracle::by_name(S3, "(1,2,3)");
  CHECK(closure(S3, {c}).size() == 3);
  CHECK(closure(S3, {}).size() == 1);
  CHECK(closure(S3, {}).contains(0));
  CHECK(closure(S3, {t, c}).is_whole());
}

TEST_CASE("closure matches the naive product closure") {
  std::mt19937_64 rng(11);
  for (const char* spec : {"S:4", "Dic:5", "Q:32", "C:3*Q:8", "A:5"}) {
    const FiniteGroup G = build_group(spec);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Elem> s;
      for (int i = 0; i < 1 + trial % 3; ++i) s.push_back(static_cast<Elem>(rng() % G.order()));
      const SubgroupMask m = closure(G, s);
      CHECK(same(m.bits(), oracle::closure(G, s)));
      CHECK(m.is_subgroup());
      CHECK(G.order() % m.size() == 0);
    }
  }
}

TEST_CASE("maximal subgroups") {
  CHECK(sorted_orders(maximal_subgroups(build_group("S:3"))) == std::vector<std::size_t>{2, 2, 2, 3});
  CHECK(sorted_orders(maximal_subgroups(build_group("Q:8"))) == std::vector<std::size_t>{4, 4, 4});
  CHECK(sorted_orders(maximal_subgroups(build_group("C:6"))) == std::vector<std::size_t>{2, 3});
  for (const char* spec : {"S:4", "D:6", "C:2*C:2*C:2", "Dic:3"}) {
    const FiniteGroup G = build_group(spec);
    const auto expect = oracle::maximal(oracle::subgroups(G));
    const auto got = maximal_subgroups(G);
    REQUIRE(got.size() == expect.size());
    for (const auto& m : got)
      CHECK(std::any_of(expect.begin(), expect.end(), [&](const oracle::Set& s) { return same(m.bits(), s); }));
  }
}

TEST_CASE("lattice size matches naive enumeration") {
  for (const char* spec : {"S:4", "Q:16", "D:12", "C:2*C:2*C:2", "C:3*Q:8", "A:4"}) {
    const FiniteGroup G = build_group(spec);
    CHECK_MESSAGE(G.lattice().size() == oracle::subgroups(G).size(), spec);
  }
}

TEST_CASE("frattini examples") {
  const FiniteGroup Q8 = build_group("Q:8");
  const SubgroupMask f = frattini(Q8);
  CHECK(f.size() == 2);
  CHECK(f.contains(oracle::by_name(Q8, "x^2")));
  CHECK(frattini(build_group("S:4")).size() == 1);
  CHECK(frattini(build_group("C:9")).size() == 3);
}

TEST_CASE("frattini equals the non-generators") {
  for (const char* spec : {"C:12", "Q:16", "D:4", "S:4", "Dic:3", "C:2*C:4", "C:3*Q:8"}) {
    const FiniteGroup G = build_group(spec);
    CHECK_MESSAGE(same(frattini(G).bits(), oracle::non_generators(G)), spec);
  }
}

TEST_CASE("classify_unique_minimal") {
  const auto q16 = classify_unique_minimal(build_group("Q:16"));
  CHECK(q16.kind == MinimalClass::generalized_quaternion);
  REQUIRE(q16.unique_minimal.has_value());
  CHECK(q16.unique_minimal->size() == 2);
  CHECK(classify_unique_minimal(build_group("C:8")).kind == MinimalClass::cyclic_p_power);
  const auto s3 = classify_unique_minimal(build_group("S:3"));
  CHECK(s3.kind == MinimalClass::neither);
  CHECK(s3.minimal_count == 4);  // three of order 2 and one of order 3
  for (int e = 3; e <= 5; ++e)
    CHECK(classify_unique_minimal(build_group("Q:2^" + std::to_string(e))).kind ==
          MinimalClass::generalized_quaternion);
  for (int p : {2, 3, 5}) {
    int q = 1;
    for (int n = 1; n <= 4; ++n) {
      q *= p;
      CHECK(classify_unique_minimal(build_group("C:" + std::to_string(q))).kind ==
            MinimalClass::cyclic_p_power);
    }
  }
  // Unique involution but not a 2-group, and a non-quaternion 2-group.
  CHECK(classify_unique_minimal(build_group("Dic:3")).kind == MinimalClass::neither);
  CHECK(classify_unique_minimal(build_group("D:4")).kind == MinimalClass::neither);
  CHECK(classify_unique_minimal(build_group("C:6")).kind == MinimalClass::neither);
}

TEST_CASE("quotients") {
  const FiniteGroup Q8 = build_group("Q:8");
  const auto q = quotient(Q8, frattini(Q8));
  CHECK(q.group.order() == 4);
  for (Elem g = 1; g < 4; ++g) CHECK(q.group.element_order(g) == 2);
  for (Elem g = 0; g < 8; ++g)
    for (Elem h = 0; h < 8; ++h)
      CHECK(q.projection[Q8.mul(g, h)] == q.group.mul(q.projection[g], q.projection[h]));

  const FiniteGroup D = build_group("Dic:3");
  CHECK(quotient(D, closure(D, D.generators())).group.order() == 1);
  Elem inv = 0;
  for (Elem g = 0; g < 12; ++g)
    if (D.element_order(g) == 2) inv = g;
  const auto s = quotient(D, closure(D, {inv}));
  CHECK(s.group.order() == 6);
  CHECK_FALSE(s.group.is_abelian());

  const FiniteGroup S3 = build_group("S:3");
  CHECK_THROWS_AS(quotient(S3, closure(S3, {oracle::by_name(S3, "(1,2)")})), PreconditionError);
}

TEST_CASE("solubility") {
  CHECK(is_soluble(build_group("S:4")));
  CHECK_FALSE(is_soluble(build_group("SL2:4")));
  CHECK_FALSE(is_soluble(build_group("A:5")));
  CHECK(is_soluble(build_group("C:1")));
  CHECK(is_soluble(build_group("C:3*Q:8")));
  const FiniteGroup S4 = build_group("S:4");
  CHECK(derived_subgroup(S4, closure(S4, S4.generators()).bits()).size() == 12);
}

TEST_CASE("center and normality") {
  CHECK(center(build_group("Q:8")).size() == 2);
  CHECK(center(build_group("S:3")).size() == 1);
  CHECK(center(build_group("C:10")).size() == 10);
  const FiniteGroup S4 = build_group("S:4");
  for (const auto& s : oracle::subgroups(S4)) {
    Bitset b(24);
    for (Elem g : oracle::members(s)) b.set(g);
    bool normal = true;
    for (Elem g = 0; g < 24; ++g)
      for (Elem h : oracle::members(s)) normal = normal && s[S4.conj(h, g)];
    CHECK(is_normal(S4, b) == normal);
  }
}

TEST_CASE("element orders divide the group order") {
  for (const char* spec : {"SL2:8", "S:5", "Q:32"}) {
    const FiniteGroup G = build_group(spec);
    for (Elem g = 0; g < G.order(); ++g) {
      const std::size_t k = G.element_order(g);
      CHECK(G.order() % k == 0);
      CHECK(G.pow(g, static_cast<long long>(k)) == 0);
    }
  }
}
