#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "virtgen/group.hpp"

namespace virtgen {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Group specs making up the verification corpus.
const std::vector<std::string>& corpus_specs();
/// Built corpus groups, in corpus_specs() order (built once per process).
const std::vector<FiniteGroup>& corpus();

/// Suite names: trichotomy, diameter, independence, tarski, soluble, criterion,
/// census, pairs, seqprod, engine; "all" runs every one.
const std::vector<std::string>& suite_names();
CriterionResult run_criterion(int id);
/// Accepts a suite name or a criterion number.
std::vector<CriterionResult> run_suite(const std::string& name);

/// Separation at a longer horizon, reported but not counted as a criterion.
CriterionResult separation_horizon_info(std::size_t max_exponent);

nlohmann::ordered_json to_json(const std::vector<CriterionResult>& results);
std::string format_line(const CriterionResult& r);

}  // namespace virtgen
