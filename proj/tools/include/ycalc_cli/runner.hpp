#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ycalc::cli {

using json = nlohmann::json;

/// Invalid or inconsistent configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitStatus : int { kExitOk = 0, kExitAssertion = 1, kExitConfig = 2 };

/// Sorted experiment names.
std::vector<std::string> experiment_names();

/// Built-in configuration of an experiment; every key a run reads is present.
json default_config(const std::string& experiment);

/// Defaults merged with `user` (JSON merge patch). Throws ConfigError for an
/// unknown experiment or top-level keys the experiment does not read.
json resolve_config(const json& user);

/// Apply `dotted.key=value` to a resolved config. The value is parsed as
/// JSON when possible and kept as a string otherwise; the key must exist.
void apply_override(json& config, const std::string& assignment);

struct RunResult {
  int status = kExitOk;
  /// Experiment-specific CSV document.
  std::string csv;
  /// Numbers the experiment asserts on or reports.
  json summary = json::object();
  /// Human-oriented lines (assertion outcomes, diagnostics).
  std::vector<std::string> messages;
};

/// Run a resolved config without touching the file system. Library errors
/// other than domain errors become status 1 with a diagnostic message.
RunResult run_experiment(const json& config);

/// `run`: load, override, resolve, execute, write <prefix>.csv and
/// <prefix>.meta.json. Returns the exit status.
int run_command(const std::string& config_path, const std::vector<std::string>& overrides,
                const std::string& output_override, std::ostream& out, std::ostream& err);

/// `list`: functions, fields, drivers, germs and experiments with their
/// parameter keys, sorted.
std::string catalog_listing();

std::string version_string();

}  // namespace ycalc::cli
