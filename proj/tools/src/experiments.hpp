#pragma once

#include <string>
#include <vector>

#include "ycalc_cli/runner.hpp"

namespace ycalc::cli {

struct ExperimentInfo {
  std::string name;
  std::string summary;
  json defaults;
  RunResult (*run)(const json& config);
};

/// Registered experiments, sorted by name.
const std::vector<ExperimentInfo>& experiment_registry();

}  // namespace ycalc::cli
