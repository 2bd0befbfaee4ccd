#pragma once

// Brute-force reference computations used only by the tests. They share no code
// with the library beyond FiniteGroup::mul / inv.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "virtgen/group.hpp"

namespace oracle {

using virtgen::Elem;
using virtgen::FiniteGroup;
using Set = std::vector<bool>;

inline Elem by_name(const FiniteGroup& G, const std::string& name) {
  for (Elem g = 0; g < G.order(); ++g)
    if (G.name(g) == name) return g;
  throw std::invalid_argument("no element named " + name);
}

// Product closure of S u {1}: keep multiplying until nothing new appears.
inline Set closure(const FiniteGroup& G, const std::vector<Elem>& S) {
  Set in(G.order(), false);
  std::vector<Elem> list{0};
  in[0] = true;
  for (Elem s : S)
    if (!in[s]) {
      in[s] = true;
      list.push_back(s);
    }
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (Elem p : {G.mul(list[i], list[j]), G.mul(list[j], list[i])})
        if (!in[p]) {
          in[p] = true;
          list.push_back(p);
        }
  return in;
}

inline std::size_t count(const Set& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }
inline bool whole(const Set& s) { return count(s) == s.size(); }

inline std::vector<Elem> members(const Set& s) {
  std::vector<Elem> out;
  for (Elem g = 0; g < s.size(); ++g)
    if (s[g]) out.push_back(g);
  return out;
}

// Every subgroup, as closures of growing generating lists.
inline std::vector<Set> subgroups(const FiniteGroup& G) {
  std::set<Set> seen;
  std::vector<std::pair<Set, std::vector<Elem>>> work;
  auto add = [&](std::vector<Elem> gens) {
    Set s = closure(G, gens);
    if (seen.insert(s).second) work.emplace_back(s, gens);
  };
  add({});
  for (std::size_t i = 0; i < work.size(); ++i)
    for (Elem g = 0; g < G.order(); ++g)
      if (!work[i].first[g]) {
        auto gens = work[i].second;
        gens.push_back(g);
        add(gens);
      }
  std::vector<Set> out;
  for (auto& w : work) out.push_back(w.first);
  return out;
}

inline std::vector<Set> maximal(const std::vector<Set>& subs) {
  auto proper_subset = [](const Set& a, const Set& b) {
    if (a == b) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] && !b[i]) return false;
    return true;
  };
  std::vector<Set> out;
  for (const auto& H : subs) {
    if (whole(H)) continue;
    bool top = true;
    for (const auto& K : subs)
      if (!whole(K) && proper_subset(H, K)) top = false;
    if (top) out.push_back(H);
  }
  return out;
}

// Elements g such that no proper subgroup H has <H, g> = G.
inline Set non_generators(const FiniteGroup& G) {
  const auto subs = subgroups(G);
  Set out(G.order(), true);
  for (Elem g = 0; g < G.order(); ++g)
    for (const auto& H : subs) {
      if (whole(H)) continue;
      auto gens = members(H);
      gens.push_back(g);
      if (whole(closure(G, gens))) {
        out[g] = false;
        break;
      }
    }
  return out;
}

inline bool generates(const FiniteGroup& G, const std::vector<Elem>& S) { return whole(closure(G, S)); }

// No proper subset generates the same subgroup as S, and S generates G.
inline bool irredundant_generating(const FiniteGroup& G, const std::vector<Elem>& S) {
  if (!generates(G, S)) return false;
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto T = S;
    T.erase(T.begin() + static_cast<long>(i));
    if (generates(G, T)) return false;
  }
  return true;
}

}  // namespace oracle
