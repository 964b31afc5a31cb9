#include "ycalc_cli/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "experiments.hpp"
#include "ycalc/csv.hpp"
#include "ycalc/errors.hpp"
#include "ycalc/functions.hpp"
#include "ycalc/germ_catalog.hpp"

namespace ycalc::cli {
namespace {

const ExperimentInfo& find_experiment(const std::string& name) {
  for (const auto& e : experiment_registry()) {
    if (e.name == name) return e;
  }
  std::string valid;
  for (const auto& n : experiment_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown experiment '" + name + "'; valid experiments: " + valid);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& e : experiment_registry()) names.push_back(e.name);
  return names;
}

json default_config(const std::string& experiment) { return find_experiment(experiment).defaults; }

json resolve_config(const json& user) {
  if (!user.is_object()) throw ConfigError("config must be a JSON object");
  if (!user.contains("experiment") || !user.at("experiment").is_string()) {
    throw ConfigError("config needs a string 'experiment'; valid experiments: " + join(experiment_names()));
  }
  json config = default_config(user.at("experiment").get<std::string>());
  for (const auto& [key, value] : user.items()) {
    if (!config.contains(key)) {
      throw ConfigError("unknown key '" + key + "' for experiment '" + user.at("experiment").get<std::string>() + "'");
    }
  }
  config.merge_patch(user);
  return config;
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  if (key == "experiment") throw ConfigError("the experiment cannot be overridden");
  json* node = &config;
  std::stringstream parts(key);
  std::string part;
  while (std::getline(parts, part, '.')) {
    if (node->is_object() && node->contains(part)) {
      node = &(*node)[part];
    } else if (node->is_array() && !part.empty() && part.find_first_not_of("0123456789") == std::string::npos &&
               std::stoul(part) < node->size()) {
      node = &(*node)[std::stoul(part)];
    } else {
      throw ConfigError("override key '" + key + "' does not exist in the resolved config");
    }
  }
  json value = json::parse(text, nullptr, false);
  *node = value.is_discarded() ? json(text) : value;
}

RunResult run_experiment(const json& config) {
  RunResult r;
  try {
    const std::string name = config.at("experiment").get<std::string>();
    r = find_experiment(name).run(config);
  } catch (const ConfigError& e) {
    r.status = kExitConfig;
    r.messages.push_back(std::string("configuration error: ") + e.what());
  } catch (const DomainError& e) {
    r.status = kExitConfig;
    r.messages.push_back(std::string("invalid input: ") + e.what());
  } catch (const json::exception& e) {
    r.status = kExitConfig;
    r.messages.push_back(std::string("configuration error: ") + e.what());
  } catch (const BlowUpError& e) {
    r.status = kExitAssertion;
    r.csv = "event,step,time\nblowup," + std::to_string(e.step()) + "," + format_double(e.time()) + "\n";
    r.summary = {{"blowup_step", e.step()}, {"blowup_time", e.time()}};
    r.messages.push_back(std::string("solver blow-up: ") + e.what());
  } catch (const RegularityError& e) {
    r.status = kExitAssertion;
    r.csv = "event,last_delta\nregularity," + format_double(e.last_delta()) + "\n";
    r.messages.push_back(std::string("regularity failure: ") + e.what());
  } catch (const Error& e) {
    r.status = kExitAssertion;
    r.csv = "event\nfailure\n";
    r.messages.push_back(std::string("failure: ") + e.what());
  }
  return r;
}

int run_command(const std::string& config_path, const std::vector<std::string>& overrides,
                const std::string& output_override, std::ostream& out, std::ostream& err) {
  json config;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
    json user = json::parse(in, nullptr, false);
    if (user.is_discarded()) throw ConfigError("config file '" + config_path + "' is not valid JSON");
    config = resolve_config(user);
    for (const auto& o : overrides) apply_override(config, o);
    if (!output_override.empty()) config["output"] = output_override;
    if (!config.at("output").is_string() || config.at("output").get<std::string>().empty()) {
      throw ConfigError("'output' must be a nonempty path prefix");
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  const RunResult r = run_experiment(config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& m : r.messages) (r.status == kExitConfig ? err : out) << m << '\n';
  if (r.status == kExitConfig) return r.status;

  const std::string prefix = config.at("output").get<std::string>();
  const json meta = {{"config", config},
                     {"version", version_string()},
                     {"wall_time_seconds", wall},
                     {"status", r.status},
                     {"summary", r.summary},
                     {"messages", r.messages}};
  try {
    const std::filesystem::path csv_path(prefix + ".csv");
    if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
    write_file_atomic(csv_path, r.csv);
    write_file_atomic(prefix + ".meta.json", meta.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "cannot write results under '" << prefix << "': " << e.what() << '\n';
    return kExitConfig;
  }
  out << (r.status == kExitOk ? "ok" : "assertion failed") << ": " << prefix << ".csv (" << wall << " s)\n";
  return r.status;
}

std::string catalog_listing() {
  std::ostringstream os;
  os << "functions:\n";
  for (const auto& f : fn::catalog_names()) {
    os << "  " << f << (f == "constant" ? " (vector; dim is the input dimension)" : "") << '\n';
  }
  os << "fields:\n"
     << "  averaged: function, dim, driver, quad_per_cell\n"
     << "  product: function, dim, driver [matrix, vector, rate, scale]\n"
     << "  series: terms[function, dim, driver]\n"
     << "  smooth: function, dim, profile (linear, power, sine) [frequency, exponent, amplitude]\n"
     << "  sum: terms[weight, field]\n"
     << "  zero: in_dim, out_dim\n";
  os << "drivers:\n"
     << "  fbm: hurst, dim, amplitude [n]\n"
     << "  smooth: function (cos, linear, power, sin), amplitude [frequency, exponent, n]\n"
     << "  stack: components\n"
     << "  weierstrass: alpha, levels, amplitude, phase [n]\n";
  os << "germs:\n";
  for (const auto& g : germ_catalog_names()) os << "  " << g << '\n';
  os << "experiments:\n";
  for (const auto& e : experiment_registry()) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : e.defaults.items()) keys.push_back(k);
    os << "  " << e.name << ": " << join(keys) << '\n';
  }
  return os.str();
}

std::string version_string() { return std::string("ycalc ") + YCALC_VERSION; }

}  // namespace ycalc::cli
