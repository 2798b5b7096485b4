#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "marginrisk/io.hpp"

namespace marginrisk {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"marginrisk"};
  storage.insert(storage.end(), args);
  std::vector<const char*> argv;
  for (const auto& a : storage) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(MARGINRISK_TEST_TMPDIR) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, LearnThenInspect) {
  const auto data = path("data.csv");
  write_file(data,
             "margin_mean,margin_std,risk\n"
             "0.007969,0.226310,65.679063\n"
             "0.070469,0.308401,100\n"
             "0.064687,0.153689,46.015181\n"
             "0.351094,0.092301,4.798570\n");
  const auto rules = path("rules.json");
  ASSERT_EQ(run({"learn", "--data", data, "--out", rules}).code, 0);
  const auto loaded = load_rule_set(rules);
  EXPECT_EQ(loaded.size(), 3u);
  EXPECT_EQ(loaded.provenance().pair_count, 4u);

  const auto table = run({"inspect", rules});
  ASSERT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("Very high"), std::string::npos);
  EXPECT_NE(table.out.find("0.75"), std::string::npos);
}

TEST_F(CliTest, SimulateMapEstimate) {
  const auto log = path("log.csv");
  ASSERT_EQ(run({"--seed", "3", "simulate", "--wind-mean", "5", "--duration", "5", "--out", log}).code, 0);
  const auto rules = path("rules.json");
  write_file(rules, to_json(published_rule_set()));

  const auto est = run({"estimate", "--log", log, "--rules", rules});
  ASSERT_EQ(est.code, 0) << est.err;
  std::istringstream lines(est.out);
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header, "t,margin_mean,margin_std,risk_inst,p_high,p_low,risk_acc");
  int rows = 0;
  while (std::getline(lines, row)) {
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 6);
    ++rows;
  }
  EXPECT_EQ(rows, 50);

  const auto map = path("map.json");
  ASSERT_EQ(run({"map", "--rules", rules, "--out", map, "--csv", path("map.csv")}).code, 0);
  const auto via_map = run({"estimate", "--log", log, "--map", map, "--with-source"});
  ASSERT_EQ(via_map.code, 0) << via_map.err;
  EXPECT_NE(via_map.out.find(",map\n"), std::string::npos);
}

TEST_F(CliTest, GenDataIsDeterministic) {
  const auto a = run({"--seed", "9", "gen-data", "--grid", "3x2", "--duration", "5"});
  const auto b = run({"--seed", "9", "gen-data", "--grid", "3x2", "--duration", "5"});
  const auto c = run({"--seed", "10", "gen-data", "--grid", "3x2", "--duration", "5"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 7);
}

TEST_F(CliTest, ConfigFileSuppliesDefaults) {
  const auto cfg = path("run.ini");
  write_file(cfg, "seed=9\n");
  const auto a = run({"--config", cfg, "gen-data", "--grid", "2x2", "--duration", "2"});
  const auto b = run({"--seed", "9", "gen-data", "--grid", "2x2", "--duration", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"learn", "--bogus"}).code, 1);
  EXPECT_EQ(run({"estimate", "--log", "x.csv", "--rules", "a", "--map", "b"}).code, 1);
  EXPECT_EQ(run({"gen-data", "--grid", "19by11"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, MissingFilesExitOne) {
  const auto r = run({"learn", "--data", path("absent.csv")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("absent.csv"), std::string::npos);
  EXPECT_EQ(run({"inspect", path("absent.json")}).code, 1);
}

TEST_F(CliTest, MalformedLogReportsLine) {
  const auto log = path("bad.csv");
  write_file(log, "t,m1,m2\n0,1500,1500\n0.1,1500,oops\n");
  const auto rules = path("rules.json");
  write_file(rules, to_json(published_rule_set()));
  const auto r = run({"estimate", "--log", log, "--rules", rules});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
}

}  // namespace
}  // namespace marginrisk
