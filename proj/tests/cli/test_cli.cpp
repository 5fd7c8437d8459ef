#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "abtrap/report/commands.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kConfigs = ABTRAP_CONFIGS;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("abtrap-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + std::string(ABTRAP_EXE) + " " + args + " > " + (dir_ / "log").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path write_config(const std::string& text) {
    const fs::path p = dir_ / "config.ini";
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ReduceReportsFractionalZeroPoint) {
  ASSERT_EQ(run("reduce --config " + kConfigs + "/default.ini --out " + (dir_ / "o").string()), 0) << read(dir_ / "log");
  EXPECT_NE(read(dir_ / "o" / "reduce.json").find("\"zero_point_Jz\": 0.75"), std::string::npos);
}

TEST_F(Cli, NoFieldIsReductionImpossible) {
  EXPECT_EQ(run("reduce --config " + kConfigs + "/no_field.ini --out " + (dir_ / "o").string()), 4);
  const std::string log = read(dir_ / "log");
  EXPECT_NE(log.find("REDUCTION_IMPOSSIBLE"), std::string::npos);
  EXPECT_NE(log.find("[[0, 0], [0, 0]]"), std::string::npos);
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("reduce --config " + write_config("[trap]\nomega_P = -1.0").string()), 2);
  EXPECT_NE(read(dir_ / "log").find("line 2"), std::string::npos);
  EXPECT_EQ(run("reduce --config " + (dir_ / "missing.ini").string()), 2);
  EXPECT_EQ(run("frobnicate --config " + kConfigs + "/default.ini"), 2);
  EXPECT_EQ(run("reduce"), 2);
  EXPECT_EQ(run("spectrum --config " + kConfigs + "/default.ini --format xml"), 2);
  EXPECT_EQ(run("spectrum --config " + kConfigs + "/default.ini --out " + (dir_ / "o").string(), "ABTRAP_THREADS=zero"), 2);
  EXPECT_EQ(run("secular --config " + kConfigs + "/no_field.ini --out " + (dir_ / "o").string()), 2);
}

TEST_F(Cli, SmallDomainIsNumericalFailure) {
  const auto cfg = write_config("[trap]\nomega_P = 1\nomega_c = 2\nalpha = 0.25\n[solver]\nR = 2.5\nrichardson = false");
  EXPECT_EQ(run("spectrum --config " + cfg.string() + " --out " + (dir_ / "o").string()), 3);
}

TEST_F(Cli, OutputsAreByteIdentical) {
  const std::string cfg = " --config " + kConfigs + "/default.ini --format csv --out ";
  for (const std::string cmd : {"spectrum", "residual-scan", "gauge-check", "secular"}) {
    ASSERT_EQ(run(cmd + cfg + (dir_ / "a").string(), "ABTRAP_THREADS=1"), 0) << read(dir_ / "log");
    ASSERT_EQ(run(cmd + cfg + (dir_ / "b").string() + " --threads 4"), 0) << read(dir_ / "log");
  }
  std::string detail;
  EXPECT_TRUE(abtrap::report::identical_trees(dir_ / "a", dir_ / "b", detail)) << detail;
  const std::string csv = read(dir_ / "a" / "spectrum.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,n,E,E_closed_form,rho2,Ek,residual,bound,within_bound,Jz_canonical,model,config_hash");
}

TEST_F(Cli, RecordsCarryConfigHash) {
  ASSERT_EQ(run("spectrum --config " + kConfigs + "/default.ini --out " + (dir_ / "o").string()), 0);
  std::istringstream lines(read(dir_ / "o" / "spectrum.jsonl"));
  std::string line, hash;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto pos = line.find("\"config_hash\":\"");
    ASSERT_NE(pos, std::string::npos);
    const std::string h = line.substr(pos + 15, 16);
    if (hash.empty()) hash = h;
    EXPECT_EQ(h, hash);
    ++count;
  }
  EXPECT_EQ(count, 30);
}
