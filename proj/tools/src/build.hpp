#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ycalc/field.hpp"
#include "ycalc/flow.hpp"
#include "ycalc/functions.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/path.hpp"
#include "ycalc/yde.hpp"
#include "ycalc_cli/runner.hpp"

namespace ycalc::cli {

// Typed accessors that turn JSON type errors into ConfigError.
double get_double(const json& j, const std::string& key);
std::size_t get_size(const json& j, const std::string& key);
unsigned get_unsigned(const json& j, const std::string& key);
bool get_bool(const json& j, const std::string& key);
std::string get_string(const json& j, const std::string& key);
const json& get_object(const json& j, const std::string& key);
Vec get_vec(const json& j, const std::string& key);
Mat get_mat(const json& j, const std::string& key);
std::vector<std::size_t> get_sizes(const json& j, const std::string& key);

Grid build_grid(const json& spec);
SolverOptions build_solver_options(const json& spec);
FlowSolver build_flow_solver(const json& spec);
VectorFunction build_function(const json& spec);
ScalarFunction build_scalar_function(const json& spec);

/// Named drivers and fields of one run; drivers draw their fBm seeds from
/// the substream "driver:<name>" of the top-level seed and are sampled once.
class BuildContext {
 public:
  BuildContext(const json& config, Grid grid);

  const Grid& grid() const noexcept { return grid_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const Path& driver(const std::string& name);
  FieldPtr field(const json& spec);

 private:
  const json& config_;
  Grid grid_;
  std::uint64_t seed_;
  std::map<std::string, Path> drivers_;
};

}  // namespace ycalc::cli
