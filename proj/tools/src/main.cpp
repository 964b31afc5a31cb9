#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ycalc_cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear Young calculus experiments"};
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> overrides;
  std::string output;
  CLI::App* run = app.add_subcommand("run", "run an experiment config and write <prefix>.csv and <prefix>.meta.json");
  run->add_option("config", config, "experiment config (JSON)")->required();
  run->add_option("--set", overrides, "override a config leaf, e.g. --set solver.tol=1e-8");
  run->add_option("-o,--output", output, "output path prefix (replaces the config's 'output')");

  app.add_subcommand("list", "list functions, fields, drivers, germs and experiments");
  app.add_subcommand("version", "print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ycalc::cli::kExitConfig;
  }

  if (app.got_subcommand("list")) {
    std::cout << ycalc::cli::catalog_listing();
    return ycalc::cli::kExitOk;
  }
  if (app.got_subcommand("version")) {
    std::cout << ycalc::cli::version_string() << '\n';
    return ycalc::cli::kExitOk;
  }
  return ycalc::cli::run_command(config, overrides, output, std::cout, std::cerr);
}
