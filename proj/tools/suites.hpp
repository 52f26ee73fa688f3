#pragma once

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fraceig/domain.hpp"
#include "fraceig/grid_function.hpp"

namespace fraceig::suites {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst = 0.0;  // suite-specific worst margin or gap
  bool passed = false;
  bool skipped = false;
  nlohmann::json detail = nlohmann::json::object();
};

const std::vector<std::string>& names();
bool known(const std::string& name);

/// Uniform values in [-1, 1] on Omega.
GridFunction random_function(const DomainPtr& dom, std::mt19937_64& rng);
/// Uniform values in [-1, 1] on every ordered pair of ball cells.
PairFunction random_pair_function(const DomainPtr& dom, std::mt19937_64& rng);

/// Runs one named suite with randomized inputs drawn from cfg.seed. "all" is
/// handled by the caller. Throws InvalidInput for an unknown name or when
/// the suite does not apply to (s, p). The translation suite rebuilds the
/// grid from `spec` at h/2 and asks for C_fit to agree within a factor 2.
SuiteResult run(const std::string& name, const DomainSpec& spec, const DomainPtr& dom, const FracParams& params,
                const SolverConfig& cfg);

nlohmann::json to_json(const SuiteResult& r);

}  // namespace fraceig::suites
