#pragma once

#include <iosfwd>

#include <json.hpp>

#include "virtgen/group.hpp"

namespace virtgen {

/// Structural summary of a group: order, generators, element orders, lattice facts.
nlohmann::ordered_json group_summary(const FiniteGroup& G);

/// Runs the command line; reports go to `out`, diagnostics to `err`.
/// Returns 0 on success, 1 on a failed verification, 2 on usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace virtgen
