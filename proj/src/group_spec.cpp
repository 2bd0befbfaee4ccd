#include "virtgen/group_spec.hpp"

#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "virtgen/errors.hpp"
#include "virtgen/field.hpp"
#include "virtgen/subgroups.hpp"

namespace virtgen {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint32_t parse_uint(const std::string& s, const std::string& context) {
  if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a positive integer in '" + context + "', got '" + s + "'");
  const auto v = static_cast<std::uint32_t>(std::stoul(s));
  if (v == 0) throw ParseError("parameter must be positive in '" + context + "'");
  return v;
}

bool is_power_of_two(std::uint32_t n) { return n && !(n & (n - 1)); }

unsigned log2_exact(std::uint32_t n) {
  unsigned k = 0;
  while ((1u << k) < n) ++k;
  return k;
}

// Splits on '*' at parenthesis depth 0.
std::vector<std::string> split_product(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses in '" + s + "'");
    if (c == '*' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + s + "'");
  parts.push_back(trim(cur));
  return parts;
}

}  // namespace

GroupSpec GroupSpec::parse(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw ParseError("empty group spec");

  if (text.rfind("file:", 0) == 0) {
    GroupSpec g;
    g.kind = Kind::file;
    g.path = text.substr(5);
    if (g.path.empty()) throw ParseError("file: needs a path");
    g.text = text;
    return g;
  }

  const auto parts = split_product(text);
  if (parts.size() > 1) {
    GroupSpec g;
    g.kind = Kind::product;
    for (const auto& p : parts) {
      if (p.empty()) throw ParseError("empty factor in '" + text + "'");
      g.factors.push_back(parse(p));
    }
    g.text = text;
    return g;
  }

  if (text.front() == '(') {
    // "(spec)" or "(spec)/Z"
    const auto close = text.rfind(')');
    const std::string inner = text.substr(1, close - 1);
    const std::string rest = trim(text.substr(close + 1));
    GroupSpec base = parse(inner);
    if (rest.empty()) return base;
    if (rest != "/Z") throw ParseError("unknown suffix '" + rest + "' in '" + text + "'");
    GroupSpec g;
    g.kind = Kind::center_quotient;
    g.factors.push_back(std::move(base));
    g.text = text;
    return g;
  }

  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("missing ':' in group spec '" + text + "'");
  const std::string family = text.substr(0, colon);
  const std::string arg = trim(text.substr(colon + 1));
  GroupSpec g;
  g.text = text;
  if (family == "C") {
    g.kind = Kind::cyclic;
    g.n = parse_uint(arg, text);
  } else if (family == "D") {
    g.kind = Kind::dihedral;
    g.n = parse_uint(arg, text);
  } else if (family == "Dic") {
    g.kind = Kind::dicyclic;
    g.n = parse_uint(arg, text);
  } else if (family == "S") {
    g.kind = Kind::symmetric;
    g.n = parse_uint(arg, text);
  } else if (family == "A") {
    g.kind = Kind::alternating;
    g.n = parse_uint(arg, text);
  } else if (family == "Q") {
    g.kind = Kind::quaternion;
    std::uint32_t order;
    if (arg.rfind("2^", 0) == 0) {
      const auto e = parse_uint(arg.substr(2), text);
      if (e > 20) throw ParseError("quaternion exponent too large in '" + text + "'");
      order = 1u << e;
    } else {
      order = parse_uint(arg, text);
      if (!is_power_of_two(order)) throw ParseError("Q:n needs n a power of two in '" + text + "'");
    }
    if (order < 8) throw ParseError("Q:2^n requires n >= 3 in '" + text + "'");
    g.n = order;
  } else if (family == "SL2") {
    g.kind = Kind::sl2;
    const auto q = parse_uint(arg, text);
    if (q < 2 || !is_power_of_two(q) || q > 256)
      throw ParseError("SL2:q needs q = 2^p with 1 <= p <= 8 in '" + text + "'");
    g.n = q;
  } else if (family == "Sign") {
    // Sign:p:m1,m2,...  (Z/p)^k semidirect F_2^r acting by coordinate sign changes
    g.kind = Kind::sign;
    const auto c2 = arg.find(':');
    if (c2 == std::string::npos) throw ParseError("Sign:p:masks expected in '" + text + "'");
    g.n = parse_uint(arg.substr(0, c2), text);
    if (g.n < 3 || g.n % 2 == 0) throw ParseError("Sign needs an odd modulus >= 3 in '" + text + "'");
    std::stringstream ss(arg.substr(c2 + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad mask '" + item + "' in '" + text + "'");
      g.masks.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    if (g.masks.empty()) throw ParseError("Sign needs at least one mask in '" + text + "'");
  } else {
    throw ParseError("unknown group family '" + family + "' in '" + text + "'");
  }
  return g;
}

FiniteGroup symmetric_group(std::uint32_t n, const Caps& limits) {
  auto rep = std::make_shared<PermutationRep>(n);
  std::vector<Word> gens;
  if (n >= 2) {
    gens.push_back(rep->parse_cycles("(1 2)"));
    Word cycle(n);
    for (std::uint32_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    gens.push_back(cycle);
  }
  return FiniteGroup::generate(rep, gens, "S:" + std::to_string(n), limits);
}

FiniteGroup alternating_group(std::uint32_t n, const Caps& limits) {
  auto rep = std::make_shared<PermutationRep>(n);
  std::vector<Word> gens;
  for (std::uint32_t i = 3; i <= n; ++i)
    gens.push_back(rep->parse_cycles("(1 2 " + std::to_string(i) + ")"));
  return FiniteGroup::generate(rep, gens, "A:" + std::to_string(n), limits);
}

FiniteGroup permutation_group_from_lines(const std::vector<std::string>& lines, std::string label,
                                         const Caps& limits) {
  std::vector<std::string> cleaned;
  std::size_t degree = 1;
  for (const auto& raw : lines) {
    std::string line = trim(raw);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() != '(') throw ParseError("generator line must start with '(': " + line);
    std::string digits;
    for (char c : line) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
      } else {
        if (!digits.empty()) degree = std::max<std::size_t>(degree, std::stoul(digits));
        digits.clear();
      }
    }
    cleaned.push_back(line);
  }
  auto rep = std::make_shared<PermutationRep>(degree);
  std::vector<Word> gens;
  for (const auto& l : cleaned) gens.push_back(rep->parse_cycles(l));
  return FiniteGroup::generate(rep, gens, std::move(label), limits);
}

namespace {

FiniteGroup build_unchecked(const GroupSpec& spec, const Caps& limits) {
  using K = GroupSpec::Kind;
  auto refuse_above = [&](std::size_t order) {
    if (order > limits.order) throw CapExceeded("group order", order, limits.order);
  };
  switch (spec.kind) {
    case K::cyclic: {
      refuse_above(spec.n);
      std::vector<Word> gens;
      if (spec.n > 1) gens.push_back({1});
      return FiniteGroup::generate(std::make_shared<CyclicRep>(spec.n), gens, spec.text, limits);
    }
    case K::dihedral:
      refuse_above(2ull * spec.n);
      return FiniteGroup::generate(std::make_shared<DihedralRep>(spec.n), {{1 % spec.n, 0}, {0, 1}},
                                   spec.text, limits);
    case K::dicyclic:
      refuse_above(4ull * spec.n);
      return FiniteGroup::generate(std::make_shared<DicyclicRep>(spec.n), {{1, 0}, {0, 1}},
                                   spec.text, limits);
    case K::quaternion:
      refuse_above(spec.n);
      return FiniteGroup::generate(std::make_shared<DicyclicRep>(spec.n / 4), {{1, 0}, {0, 1}},
                                   spec.text, limits);
    case K::symmetric: {
      std::size_t f = 1;
      for (std::uint32_t i = 2; i <= spec.n; ++i) {
        f *= i;
        refuse_above(f);
      }
      auto G = symmetric_group(spec.n, limits);
      return G;
    }
    case K::alternating: {
      std::size_t f = 1;
      for (std::uint32_t i = 3; i <= spec.n; ++i) {
        f *= i;
        refuse_above(f);
      }
      return alternating_group(spec.n, limits);
    }
    case K::sl2: {
      auto G = special_linear_2(log2_exact(spec.n), limits);
      return G;
    }
    case K::sign: {
      std::size_t order = std::size_t{1} << 20;
      std::uint32_t all = 0;
      for (auto m : spec.masks) all |= m;
      const unsigned r = all ? 32 - static_cast<unsigned>(__builtin_clz(all)) : 0;
      if (r > 16) throw ParseError("Sign masks use too many bits: " + spec.text);
      order = 1;
      for (std::size_t i = 0; i < spec.masks.size(); ++i) {
        order *= spec.n;
        refuse_above(order);
      }
      order <<= r;
      refuse_above(order);
      auto rep = std::make_shared<SignSemidirectRep>(spec.n, spec.masks);
      std::vector<Word> gens;
      const std::size_t k = spec.masks.size();
      for (std::size_t c = 0; c < k; ++c) {
        Word w(k + 1, 0);
        w[c] = 1;
        gens.push_back(w);
      }
      for (unsigned j = 0; j < r; ++j) {
        Word w(k + 1, 0);
        w[k] = 1u << j;
        gens.push_back(w);
      }
      return FiniteGroup::generate(rep, gens, spec.text, limits);
    }
    case K::file: {
      std::ifstream in(spec.path);
      if (!in) throw ParseError("cannot open permutation file '" + spec.path + "'");
      std::vector<std::string> lines;
      for (std::string line; std::getline(in, line);) lines.push_back(line);
      return permutation_group_from_lines(lines, spec.text, limits);
    }
    case K::product: {
      std::size_t order = 1;
      std::vector<FiniteGroup> parts;
      for (const auto& f : spec.factors) {
        parts.push_back(build_unchecked(f, limits));
        order *= parts.back().order();
        refuse_above(order);
      }
      FiniteGroup acc = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_product(acc, parts[i], limits);
      return acc;
    }
    case K::center_quotient: {
      FiniteGroup base = build_unchecked(spec.factors[0], limits);
      return quotient(base, center(base)).group;
    }
  }
  throw ParseError("unhandled group spec");
}

}  // namespace

FiniteGroup build_group(const GroupSpec& spec, const Caps& limits) {
  FiniteGroup G = build_unchecked(spec, limits);
  if (auto bad = check_axioms(G)) throw Error("group '" + spec.text + "' fails axioms: " + *bad);
  return G;
}

FiniteGroup build_group(const std::string& spec, const Caps& limits) {
  return build_group(GroupSpec::parse(spec), limits);
}

}  // namespace virtgen
