#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "groundhold/io.hpp"

namespace fs = std::filesystem;
using groundhold::cli::run;
namespace cli = groundhold::cli;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("groundhold_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  int call(std::vector<std::string> args) {
    out.str({});
    err.str({});
    return run(args, out, err);
  }
  std::string path(const char* name) const { return (dir / name).string(); }

  fs::path dir;
  std::ostringstream out;
  std::ostringstream err;
};

}  // namespace

TEST_F(CliTest, SolveTinyWritesReport) {
  ASSERT_EQ(call({"generate", "--preset", "tiny", "--seed", "6", "--out", path("tiny.json")}), cli::kOk);
  EXPECT_EQ(call({"solve", "--instance", path("tiny.json"), "--max-iter", "5000", "--seed", "7",
                  "--out", path("report.json")}),
            cli::kOk)
      << err.str();
  const auto doc = nlohmann::json::parse(groundhold::read_file(path("report.json")));
  EXPECT_TRUE(doc.at("summary").at("feasible").get<bool>());
  EXPECT_EQ(doc.at("config").at("seed"), 7);
  EXPECT_EQ(call({"verify", "--instance", path("tiny.json"), "--report", path("report.json")}), cli::kOk)
      << out.str();
  EXPECT_EQ(call({"verify", "--instance", path("tiny.json"), "--oracle"}), cli::kOk);
  EXPECT_NE(out.str().find("minimum total delay"), std::string::npos);
}

TEST_F(CliTest, InfeasiblePreset) {
  ASSERT_EQ(call({"generate", "--preset", "infeasible", "--out", path("inf.json")}), cli::kOk);
  EXPECT_EQ(call({"solve", "--instance", path("inf.json"), "--max-iter", "300", "--out", path("r.json")}),
            cli::kInfeasible);
  EXPECT_NE(err.str().find("minimum violations 1"), std::string::npos) << err.str();
  const auto doc = nlohmann::json::parse(groundhold::read_file(path("r.json")));
  EXPECT_EQ(doc.at("summary").at("final_violations"), 1);
  EXPECT_EQ(call({"verify", "--instance", path("inf.json"), "--oracle"}), cli::kInfeasible);
}

TEST_F(CliTest, CsvMatchesJson) {
  ASSERT_EQ(call({"generate", "--preset", "worked-example", "--out", path("w.json")}), cli::kOk);
  ASSERT_EQ(call({"solve", "--instance", path("w.json"), "--out", path("r.json"), "--reproducible"}), cli::kOk);
  ASSERT_EQ(call({"report", "--in", path("r.json"), "--format", "csv"}), cli::kOk);
  const std::string csv = out.str();
  const auto doc = nlohmann::json::parse(groundhold::read_file(path("r.json")));
  for (const auto& [key, value] : doc.at("summary").items()) {
    const std::string cell = value.is_string() ? value.get<std::string>() : value.dump();
    EXPECT_NE(csv.find("\n" + key + "," + cell + "\n"), std::string::npos) << key;
  }
  EXPECT_EQ(doc.at("summary").at("total_delay"), 1);
  ASSERT_EQ(call({"report", "--in", path("r.json"), "--format", "md", "--svg", path("h.svg")}), cli::kOk);
  EXPECT_NE(out.str().find("## Delay histogram"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("h.svg")));
}

TEST_F(CliTest, ReproducibleReportsAreIdentical) {
  ASSERT_EQ(call({"generate", "--preset", "tiny", "--seed", "11", "--out", path("t.json")}), cli::kOk);
  for (const char* name : {"a.json", "b.json"})
    ASSERT_EQ(call({"solve", "--instance", path("t.json"), "--seed", "5", "--reproducible", "--out", path(name)}),
              cli::kOk);
  EXPECT_EQ(groundhold::read_file(path("a.json")), groundhold::read_file(path("b.json")));
}

TEST_F(CliTest, ErrorCodes) {
  EXPECT_EQ(call({}), cli::kUsage);
  EXPECT_EQ(call({"solve"}), cli::kUsage);
  EXPECT_EQ(call({"generate", "--preset", "bogus"}), cli::kUsage);
  EXPECT_EQ(call({"solve", "--instance", path("missing.json")}), cli::kIoError);
  groundhold::write_file_atomic(path("bad.json"), "{\"params\": 3");
  EXPECT_EQ(call({"solve", "--instance", path("bad.json")}), cli::kParseError);
  EXPECT_NE(err.str().find("syntax error"), std::string::npos);
  ASSERT_EQ(call({"generate", "--preset", "worked-example", "--out", path("w.json")}), cli::kOk);
  EXPECT_EQ(call({"solve", "--instance", path("w.json"), "--step", "7", "--end", "101"}), cli::kParseError);
  EXPECT_EQ(call({"verify", "--instance", path("w.json")}), cli::kUsage);
}

TEST_F(CliTest, VerifyRejectsOverloadedReport) {
  ASSERT_EQ(call({"generate", "--preset", "worked-example", "--out", path("w.json")}), cli::kOk);
  groundhold::write_file_atomic(path("zero.json"), R"({"delays":[["F1",0],["F2",0],["F3",0]]})");
  EXPECT_EQ(call({"verify", "--instance", path("w.json"), "--report", path("zero.json")}), cli::kVerifyFailed);
  EXPECT_NE(out.str().find("3 > 2"), std::string::npos) << out.str();
}

TEST_F(CliTest, ScenarioOverridesAndConfigFile) {
  ASSERT_EQ(call({"generate", "--preset", "worked-example", "--out", path("w.json")}), cli::kOk);
  groundhold::write_file_atomic(path("cfg.json"), R"({"max_iter": 50, "tabu_tenure": 3})");
  ASSERT_EQ(call({"solve", "--instance", path("w.json"), "--cap", "3", "--config", path("cfg.json"),
                  "--out", path("r.json"), "--dump-model", path("m.json")}),
            cli::kOk)
      << err.str();
  const auto doc = nlohmann::json::parse(groundhold::read_file(path("r.json")));
  EXPECT_EQ(doc.at("params").at("cap"), 3);
  EXPECT_EQ(doc.at("config").at("max_iter"), 50);
  EXPECT_EQ(doc.at("config").at("tabu_tenure"), 3);
  EXPECT_EQ(doc.at("summary").at("total_delay"), 0);
  EXPECT_TRUE(fs::exists(path("m.json")));
}
