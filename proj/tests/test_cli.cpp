#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cperiod/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("cperiod_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                 "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const json& cfg, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cperiod::cli::run(cfg, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

int run_argv(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "cperiod");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cperiod::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

const json kScan{{"command", "scan"},
                 {"signal", "cosine"},
                 {"c", {{"p", 0}, {"q", 1}}},
                 {"epsilon", 0.005},
                 {"tau_max", 20.0},
                 {"tau_step", 0.01},
                 {"grid", {{"start", -10.0}, {"end", 10.0}, {"step", 0.05}}}};

const json kSolve{{"command", "solve"},
                  {"forcing", {{"signal", "exponential"}, {"lipschitz", 0.1}, {"nonlinearity", "sin-re"}}},
                  {"kernel", {{"kind", "exponential"}, {"omega", 1.0}}},
                  {"grid", {{"start", 0.0}, {"end", 30.0}, {"step", 0.02}}}};

}  // namespace

TEST(Cli, ScanWritesReport) {
  TempDir dir;
  json cfg = kScan;
  cfg["output"] = dir / "scan.json";
  ASSERT_EQ(run(cfg), 0);
  const auto report = json::parse(slurp(dir / "scan.json"));
  ASSERT_FALSE(report.at("accepted").empty());
  EXPECT_NEAR(report.at("accepted")[0][0].get<double>(), 6.28, 0.011);
  EXPECT_GT(report.at("max_gap").get<double>(), 6.0);
}

TEST(Cli, ReportsAreByteIdentical) {
  TempDir dir;
  json a = kScan, b = kScan;
  a["output"] = dir / "a.json";
  b["output"] = dir / "b.json";
  ASSERT_EQ(run(a), 0);
  ASSERT_EQ(run(b), 0);
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  json s1 = kSolve, s2 = kSolve;
  s1["output"] = dir / "s1.json";
  s2["output"] = dir / "s2.json";
  ASSERT_EQ(run(s1), 0);
  ASSERT_EQ(run(s2), 0);
  EXPECT_EQ(slurp(dir / "s1.json"), slurp(dir / "s2.json"));
}

TEST(Cli, NonContractionExitsThree) {
  TempDir dir;
  json cfg = kSolve;
  cfg["forcing"]["lipschitz"] = 2.0;
  cfg["forcing"]["nonlinearity"] = "linear";
  cfg["error_output"] = dir / "err.json";
  std::string err;
  EXPECT_EQ(run(cfg, nullptr, &err), 3);
  const auto e = json::parse(slurp(dir / "err.json")).at("error");
  EXPECT_EQ(e.at("category"), "numerical");
  EXPECT_EQ(e.at("exit_code"), 3);
  EXPECT_NE(e.at("message").get<std::string>().find("M1"), std::string::npos);
  EXPECT_NE(err.find("M1"), std::string::npos);
}

TEST(Cli, ValidationErrorsExitTwo) {
  json bad_c = kScan;
  bad_c["c"] = {{"re", 1.5}, {"im", 0.0}};
  std::string err;
  EXPECT_EQ(run(bad_c, nullptr, &err), 2);
  EXPECT_NE(err.find("InvalidMultiplier"), std::string::npos) << err;

  json unknown = kScan;
  unknown["epsilonn"] = 0.1;
  EXPECT_EQ(run(unknown, nullptr, &err), 2);
  EXPECT_NE(err.find("epsilonn"), std::string::npos);

  EXPECT_EQ(run(json{{"command", "nope"}}), 2);
  json wrong_type = kScan;
  wrong_type["epsilon"] = "small";
  EXPECT_EQ(run(wrong_type), 2);
  EXPECT_EQ(run_argv({"scan", "--signal", "cosine", "--epsilon", "0.1", "--bogus", "1"}), 2);
}

TEST(Cli, FlagsOverrideConfig) {
  TempDir dir;
  json cfg = kScan;
  cfg["output"] = dir / "from_config.json";
  {
    std::ofstream(dir / "cfg.json") << cfg.dump();
  }
  ASSERT_EQ(run_argv({"scan", "--config", dir / "cfg.json", "--epsilon", ".5", "--output", dir / "flags.json"}), 0);
  EXPECT_FALSE(fs::exists(dir / "from_config.json"));
  const auto report = json::parse(slurp(dir / "flags.json"));
  EXPECT_EQ(report.at("epsilon").get<double>(), 0.5);
  // A top-level --config dispatches on the file's command.
  ASSERT_EQ(run_argv({"--config", dir / "cfg.json"}), 0);
  EXPECT_TRUE(fs::exists(dir / "from_config.json"));
}

TEST(Cli, CsvOutputs) {
  TempDir dir;
  json cfg = kScan;
  cfg["csv"] = dir / "curve.csv";
  std::string out;
  ASSERT_EQ(run(cfg, &out), 0);
  EXPECT_NO_THROW((void)json::parse(out));
  std::istringstream csv(slurp(dir / "curve.csv"));
  std::string header, line;
  std::getline(csv, header);
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 2000u);

  json solve = kSolve;
  solve["csv"] = dir / "u.csv";
  solve["output"] = dir / "u.json";
  ASSERT_EQ(run(solve), 0);
  const auto report = json::parse(slurp(dir / "u.json"));
  EXPECT_TRUE(report.at("converged").get<bool>());
  EXPECT_LT(report.at("M1").get<double>(), 1.0);
  EXPECT_FALSE(slurp(dir / "u.csv").empty());
}

TEST(Cli, ListsSignals) {
  std::string out;
  ASSERT_EQ(run_argv({"signal-list"}, &out), 0);
  EXPECT_NE(out.find("strina"), std::string::npos);
  EXPECT_NE(out.find("haraux"), std::string::npos);
}
