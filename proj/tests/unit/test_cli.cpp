#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ycalc_cli/runner.hpp"

namespace fs = std::filesystem;
using namespace ycalc::cli;

namespace {

std::string config_path(const std::string& name) { return std::string(YCALC_CONFIG_DIR) + "/" + name + ".json"; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Scratch : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ycalc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& file, const std::string& text) {
    const fs::path p = dir_ / file;
    std::ofstream(p) << text;
    return p;
  }

  int shell(const std::string& args) {
    const std::string cmd = std::string(YCALC_CLI_PATH) + " " + args + " > " + (dir_ / "stdout").string() +
                            " 2> " + (dir_ / "stderr").string();
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Scratch, UnknownExperimentIsConfigErrorListingNames) {
  const fs::path cfg = write_config("bogus.json", R"({"experiment": "bogus"})");
  EXPECT_EQ(shell("run " + cfg.string()), kExitConfig);
  const std::string err = slurp(dir_ / "stderr");
  for (const auto& name : experiment_names()) EXPECT_NE(err.find(name), std::string::npos) << name;
}

TEST_F(Scratch, MalformedJsonIsConfigError) {
  const fs::path cfg = write_config("broken.json", R"({"experiment": )");
  EXPECT_EQ(shell("run " + cfg.string()), kExitConfig);
}

TEST_F(Scratch, MissingFileAndBadUsageAreConfigErrors) {
  EXPECT_EQ(shell("run " + (dir_ / "absent.json").string()), kExitConfig);
  EXPECT_EQ(shell("frobnicate"), kExitConfig);
}

TEST_F(Scratch, ListingCoversCatalogAndIsStable) {
  ASSERT_EQ(shell("list"), kExitOk);
  const std::string first = slurp(dir_ / "stdout");
  for (const char* word : {"product", "averaged", "fbm", "weierstrass", "identity", "swirl"}) {
    EXPECT_NE(first.find(word), std::string::npos) << word;
  }
  const auto names = experiment_names();
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_EQ(names.size(), 11u);
  for (const auto& name : names) EXPECT_NE(first.find("  " + name + ":"), std::string::npos) << name;
  ASSERT_EQ(shell("list"), kExitOk);
  EXPECT_EQ(slurp(dir_ / "stdout"), first);
  EXPECT_EQ(catalog_listing(), first);
}

TEST_F(Scratch, VersionSubcommand) {
  ASSERT_EQ(shell("version"), kExitOk);
  EXPECT_EQ(slurp(dir_ / "stdout"), version_string() + "\n");
}

TEST(Config, ShippedConfigsResolveToDefaults) {
  for (const auto& name : experiment_names()) {
    std::ifstream in(config_path(name));
    ASSERT_TRUE(in) << name;
    const json user = json::parse(in);
    EXPECT_EQ(resolve_config(user), default_config(name)) << name;
  }
}

TEST(Config, UnknownTopLevelKeyRejected) {
  EXPECT_THROW(resolve_config(json{{"experiment", "solve"}, {"bogus_key", 1}}), ConfigError);
  EXPECT_THROW(resolve_config(json{{"grid", {{"n", 8}}}}), ConfigError);
}

TEST(Config, MergePatchKeepsUntouchedDefaults) {
  const json c = resolve_config(json{{"experiment", "solve"}, {"grid", {{"n", 16}}}});
  const json d = default_config("solve");
  EXPECT_EQ(c["grid"]["n"], 16);
  EXPECT_EQ(c["grid"]["t1"], d["grid"]["t1"]);
  EXPECT_EQ(c["solver"], d["solver"]);
}

TEST(Config, OverridesParseJsonAndRequireExistingKeys) {
  json c = default_config("solve");
  apply_override(c, "solver.tol=1e-8");
  EXPECT_DOUBLE_EQ(c["solver"]["tol"].get<double>(), 1e-8);
  apply_override(c, "output=elsewhere/run");
  EXPECT_EQ(c["output"], "elsewhere/run");
  EXPECT_THROW(apply_override(c, "solver.nonexistent=3"), ConfigError);
  EXPECT_THROW(apply_override(c, "no_equals_sign"), ConfigError);
}

TEST_F(Scratch, BadOverrideValueIsConfigError) {
  const fs::path out = dir_ / "solve";
  EXPECT_EQ(shell("run " + config_path("solve") + " -o " + out.string() + " --set solver.tol=-1"), kExitConfig);
  EXPECT_EQ(shell("run " + config_path("solve") + " -o " + out.string() + " --set grid.bogus=1"), kExitConfig);
  EXPECT_FALSE(fs::exists(out.string() + ".csv"));
}

TEST_F(Scratch, RunWritesCsvAndMetaSidecar) {
  const std::string prefix = (dir_ / "nested" / "solve").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_command(config_path("solve"), {"grid.n=64"}, prefix, out, err), kExitOk) << err.str();
  const std::string csv = slurp(prefix + ".csv");
  EXPECT_EQ(csv.rfind("t,", 0), 0u);
  const json meta = json::parse(slurp(prefix + ".meta.json"));
  EXPECT_EQ(meta["config"]["grid"]["n"], 64);
  EXPECT_EQ(meta["config"]["output"], prefix);
  EXPECT_EQ(meta["version"], version_string());
  EXPECT_GE(meta["wall_time_seconds"].get<double>(), 0.0);
  EXPECT_EQ(meta["status"], kExitOk);
  for (const auto& e : fs::directory_iterator(dir_ / "nested")) {
    EXPECT_EQ(e.path().string().find(".tmp"), std::string::npos) << e.path();
  }
}

TEST_F(Scratch, RepeatedRunsAreByteIdentical) {
  for (const char* name : {"solve", "integrate", "sensitivity"}) {
    const std::string a = (dir_ / (std::string(name) + "_a")).string();
    const std::string b = (dir_ / (std::string(name) + "_b")).string();
    ASSERT_EQ(shell("run " + config_path(name) + " -o " + a), kExitOk) << name;
    ASSERT_EQ(shell("run " + config_path(name) + " -o " + b), kExitOk) << name;
    EXPECT_EQ(slurp(a + ".csv"), slurp(b + ".csv")) << name;
  }
}

TEST_F(Scratch, EulerRateConfigPasses) {
  const std::string prefix = (dir_ / "rate").string();
  ASSERT_EQ(shell("run " + config_path("euler-rate") + " -o " + prefix), kExitOk) << slurp(dir_ / "stdout");
  const json meta = json::parse(slurp(prefix + ".meta.json"));
  const double slope = meta["summary"]["fitted_slope"].get<double>();
  EXPECT_GE(slope, 0.35);
  EXPECT_LE(slope, 0.75);
}

TEST_F(Scratch, FailedAssertionExitsOne) {
  const std::string prefix = (dir_ / "rate").string();
  EXPECT_EQ(shell("run " + config_path("euler-rate") + " -o " + prefix + " --set slope_min=0.9 --set slope_max=1.0"),
            kExitAssertion);
  EXPECT_TRUE(fs::exists(prefix + ".meta.json"));
}

TEST_F(Scratch, SolverBlowUpExitsOne) {
  const fs::path cfg = write_config("blowup.json", R"({
    "experiment": "solve",
    "solver": {"kind": "euler"},
    "field": {"kind": "smooth", "function": "identity", "dim": 1, "profile": "linear"},
    "x0": [1e300],
    "grid": {"n": 64}
  })");
  const int code = shell("run " + cfg.string() + " -o " + (dir_ / "b").string());
  EXPECT_EQ(code, kExitAssertion) << slurp(dir_ / "stderr");
}
