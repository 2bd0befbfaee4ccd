#pragma once

#include <cstddef>

namespace virtgen {

// Size limits. Every operation that would exceed one throws CapExceeded.
struct Caps {
  std::size_t order = 200000;       // build_group
  std::size_t table = 4096;         // full multiplication table up to this order
  std::size_t lattice = 2000;       // subgroup lattice enumeration
  std::size_t subgroups = 100000;   // number of subgroups held by a lattice
  std::size_t graph = 4096;         // generating / virt-independence graph reports
  std::size_t independence = 256;   // independence graph and pair witnesses
  std::size_t search = 512;         // irredundant-set enumeration
  std::size_t rank = 10000;         // rank_d
  std::size_t gaschutz = 10000000;  // |N|^k search space

  /// Defaults overridden by VIRTGEN_CAP_<NAME> environment variables
  /// (ORDER, TABLE, LATTICE, SUBGROUPS, GRAPH, INDEPENDENCE, SEARCH, RANK, GASCHUTZ).
  static Caps from_environment();
};

/// Process-wide caps, read from the environment on first use.
const Caps& caps();

}  // namespace virtgen
