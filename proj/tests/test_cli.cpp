// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bilmult/cli.hpp"
#include "bilmult/decomposition.hpp"
#include "bilmult/json_io.hpp"

using namespace bilmult;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "bilmult");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / ("bilmult_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, BoundText) {
  const CliResult a = run({"bound", "--q", "2", "--n", "4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(contains(a.out, "upper 9 exact")) << a.out;
  const CliResult b = run({"bound", "--q", "5", "--n", "3"});
  EXPECT_TRUE(contains(b.out, "lower 5 "));
  EXPECT_TRUE(contains(b.out, "upper 5 "));
  EXPECT_TRUE(contains(run({"bound", "--q", "2", "--n", "1"}).out, "range 1/1"));
}

TEST(Cli, BoundJson) {
  const CliResult a = run({"bound", "--q", "2", "--n", "6", "--format", "json"});
  ASSERT_EQ(a.code, 0);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["upper"]["value"], 15);
  EXPECT_EQ(j["upper"]["witness_rank"], 15);
}

TEST(Cli, TableCsvIsDeterministic) {
  const CliResult a = run({"table", "--q", "2", "--n-max", "8", "--format", "csv"});
  ASSERT_EQ(a.code, 0);
  std::istringstream lines(a.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[4].substr(0, 6), "4,9,9,");
  EXPECT_EQ(run({"table", "--q", "2", "--n-max", "8", "--format", "csv", "--serial"}).out, a.out);
  EXPECT_EQ(run({"table", "--q", "2", "--n-max", "8", "--format", "csv"}).out, a.out);
}

TEST(Cli, ConstructComposeVerify) {
  const auto dir = temp_dir();
  const std::string k2 = (dir / "k2.json").string(), t43 = (dir / "toom43.json").string(), out = (dir / "f64.json").string();
  ASSERT_EQ(run({"construct", "--q", "2", "--n", "2", "--output", k2}).code, 0);
  ASSERT_EQ(run({"construct", "--q", "4", "--n", "3", "--output", t43}).code, 0);
  const CliResult five = run({"construct", "--q", "5", "--n", "3"});
  EXPECT_EQ(Json::parse(five.out)["rank"], 5);
  // Either file order works.
  ASSERT_EQ(run({"compose", k2, t43, "--output", out}).code, 0);
  const BilinearDecomposition d = decomposition_from_json(slurp(out));
  EXPECT_EQ(d.rank(), 15u);
  EXPECT_EQ(d.n(), 6u);
  EXPECT_EQ(run({"compose", t43, k2}).out, slurp(out));
  const CliResult v = run({"verify", out, "--exhaustive"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "VALID rank 15 pairs 4096\n");
  std::filesystem::remove_all(dir);
}

TEST(Cli, VerifyTampered) {
  const CliResult v = run({"verify", std::string(BILMULT_FIXTURES) + "/karatsuba_f4_broken.json"});
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(v.out, "INVALID (1,1)\n");
  EXPECT_EQ(run({"verify", std::string(BILMULT_FIXTURES) + "/karatsuba_f4.json"}).out, "VALID rank 3\n");
  EXPECT_EQ(run({"verify", std::string(BILMULT_FIXTURES) + "/malformed.json"}).code, 1);
}

TEST(Cli, RankSearch) {
  const CliResult a = run({"rank-search", "--q", "2", "--n", "2", "--r-max", "3", "--format", "json"});
  ASSERT_EQ(a.code, 0);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["outcome"], "Found");
  EXPECT_EQ(j["rank"], 3);
  const CliResult b = run({"rank-search", "--q", "2", "--n", "2", "--r-max", "2"});
  EXPECT_TRUE(contains(b.out, "outcome ExhaustedNoneExists"));
  const CliResult c = run({"rank-search", "--q", "2", "--n", "3", "--r-max", "6", "--budget", "5"});
  EXPECT_EQ(c.code, 1);
  EXPECT_TRUE(contains(c.out, "outcome Aborted"));
}

TEST(Cli, RankSearchBudgetFromEnvironment) {
  ::setenv("BILMULT_BUDGET", "5", 1);
  const CliResult a = run({"rank-search", "--q", "2", "--n", "3", "--r-max", "6"});
  EXPECT_TRUE(contains(a.out, "budget 5"));
  ::setenv("BILMULT_BUDGET", "lots", 1);
  EXPECT_EQ(run({"rank-search", "--q", "2", "--n", "2", "--r-max", "3"}).code, 2);
  ::unsetenv("BILMULT_BUDGET");
}

TEST(Cli, TowerIncludesTableRow) {
  const CliResult a = run({"tower", "--family", "gs-t3", "--p", "5", "--r", "1", "--k-max", "4"});
  ASSERT_EQ(a.code, 0);
  EXPECT_TRUE(contains(a.out, "gs-t3,5,1,2,0,10,10,30,120,6,60,10\n")) << a.out;
  const CliResult j = run({"tower", "--family", "kummer-p", "--p", "5", "--k-max", "3", "--format", "json"});
  EXPECT_EQ(Json::parse(j.out)["steps"].size(), 4u);
  const CliResult c = run({"tower", "--family", "gs-t2", "--p", "2", "--r", "2", "--k-max", "8", "--checks"});
  EXPECT_EQ(c.code, 0);
  EXPECT_FALSE(contains(c.out, ",fail,"));
  EXPECT_EQ(run({"tower", "--family", "kummer-p", "--p", "4", "--k-max", "3"}).code, 1);
}

TEST(Cli, Asymptotic) {
  EXPECT_TRUE(contains(run({"asymptotic", "--q", "2"}).out, "M_q <= 27/2 M-upper-binary"));
  const CliResult seven = run({"asymptotic", "--q", "7"});
  EXPECT_TRUE(contains(seven.out, "m-upper-ihara [inapplicable] [conditional] (MissingAq"));
  const CliResult supplied = run({"asymptotic", "--q", "7", "--aq", "5/2", "--format", "json"});
  EXPECT_EQ(Json::parse(supplied.out)["A_q"], "5/2");
  EXPECT_EQ(run({"asymptotic", "--q", "7", "--aq", "1/0"}).code, 1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"bound", "--q", "2"}).code, 2);
  EXPECT_EQ(run({"bound", "--q", "two", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"bound", "--q", "6", "--n", "3"}).code, 1);
  EXPECT_EQ(run({"construct", "--q", "2", "--n", "3"}).code, 1);
  EXPECT_EQ(run({"verify", "/nonexistent/file.json"}).code, 2);
  const CliResult help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_TRUE(contains(help.out, "rank-search"));
}
