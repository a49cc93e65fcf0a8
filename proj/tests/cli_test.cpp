#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "etale/census.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = etale::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("etale_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, Count) {
  const Outcome a = run({"count", "--g", "2", "--m", "3", "--n", "2"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(contains(a.out, "T        4"));
  EXPECT_TRUE(contains(a.out, "N_cyclic 15"));
  EXPECT_TRUE(contains(a.out, "C_total  60"));
  EXPECT_TRUE(contains(a.out, "p=3 e=1 lf_count=1 pev_count=8"));

  const Outcome b = run({"count", "--g", "2", "--m", "2", "--n", "3"});
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(contains(b.out, "T        0"));
  EXPECT_TRUE(contains(b.out, "C_total  0"));

  const Outcome c = run({"count", "--g", "2", "--m", "6", "--n", "4"});
  EXPECT_EQ(c.code, 2);
  EXPECT_TRUE(contains(c.err, "coprimality"));
}

TEST(Cli, InvalidFlagsExitTwo) {
  EXPECT_EQ(run({"count", "--g", "1", "--m", "3", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"count", "--g", "2", "--m", "3"}).code, 2);
  EXPECT_EQ(run({"count", "--g", "two", "--m", "3", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "count", "--g", "2", "--m", "3", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, GlobalFlagsAcceptedAfterSubcommand) {
  const Outcome a = run({"count", "--g", "2", "--m", "3", "--n", "2", "--format", "csv"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, "g,m,n,T,N_cyclic,C_total,verified\n2,3,2,4,15,60,skipped\n");
}

TEST(Cli, Census) {
  const Outcome a = run({"census", "--g", "2", "--m-max", "5", "--n-max", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(a.out.starts_with("g,m,n,T,N_cyclic,C_total,verified\n"));
  EXPECT_TRUE(contains(a.out, "\n2,3,2,4,"));
  EXPECT_TRUE(contains(a.out, "\n2,5,2,6,"));
  EXPECT_TRUE(contains(a.out, "\n2,2,3,0,"));
  EXPECT_EQ(run({"census", "--g", "2", "--m-max", "1", "--n-max", "5"}).code, 2);
  EXPECT_EQ(run({"--out", "/nonexistent-dir/census.csv", "census", "--g", "2", "--m-max", "5", "--n-max", "5"}).code,
            3);
}

TEST(Cli, CensusCsvAndJsonAgree) {
  const auto csv_path = temp_file("census.csv");
  const auto json_path = temp_file("census.json");
  ASSERT_EQ(run({"--out", csv_path.string(), "census", "--g", "3", "--m-max", "9", "--n-max", "9"}).code, 0);
  ASSERT_EQ(run({"--format", "json", "--out", json_path.string(), "census", "--g", "3", "--m-max", "9", "--n-max",
                 "9"})
                .code,
            0);
  const auto from_csv = etale::census_from_csv(slurp(csv_path));
  const auto from_json = etale::census_from_json(slurp(json_path));
  ASSERT_EQ(from_csv.size(), from_json.size());
  ASSERT_FALSE(from_csv.empty());
  for (std::size_t i = 0; i < from_csv.size(); ++i) EXPECT_TRUE(etale::same_columns(from_csv[i], from_json[i]));
  std::filesystem::remove(csv_path);
  std::filesystem::remove(json_path);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"--format", "json", "census", "--g", "2", "--m-max", "8", "--n-max", "8",
                                      "--verify"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, Verify) {
  const Outcome a = run({"verify", "--g", "2", "--m", "7", "--n", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(contains(a.out, "MATCH 16"));

  const Outcome b = run({"--budget", "10", "verify", "--g", "2", "--m", "3", "--n", "2"});
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(contains(b.out, "enumeration skipped"));
  EXPECT_TRUE(contains(b.out, "kernel-verified"));
  EXPECT_TRUE(contains(b.out, "MATCH 4"));

  const Outcome c = run({"verify", "--g", "2", "--m", "3", "--n", "2", "--corrupt-enumeration-matrix"});
  EXPECT_EQ(c.code, 1);
  EXPECT_TRUE(contains(c.out, "MISMATCH"));
  EXPECT_TRUE(contains(c.out, "formula      4"));
  EXPECT_TRUE(contains(c.out, "enumeration  0"));

  EXPECT_EQ(run({"verify", "--g", "2", "--m", "6", "--n", "4"}).code, 2);
}

TEST(Cli, VerifyJson) {
  const Outcome a = run({"--format", "json", "verify", "--g", "2", "--m", "5", "--n", "2"});
  EXPECT_EQ(a.code, 0);
  const auto row = etale::row_from_json(a.out);
  EXPECT_EQ(row.verified, etale::Verified::True);
  EXPECT_EQ(row.method, "formula+kernel+enumeration");
  EXPECT_EQ(*row.oracle_value, 6);
}

TEST(Cli, Factor) {
  const Outcome a = run({"factor", "--n", "3", "--p", "7", "--e", "2"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(contains(a.out, "linear factors: 2"));
  EXPECT_TRUE(contains(a.out, "\n4 18 3 0 "));
  EXPECT_TRUE(contains(a.out, "\n2 30 3 0 "));

  const Outcome b = run({"factor", "--n", "3", "--p", "5", "--e", "1"});
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(contains(b.out, "linear factors: 0"));

  EXPECT_EQ(run({"factor", "--n", "4", "--p", "2", "--e", "1"}).code, 2);
  EXPECT_EQ(run({"factor", "--n", "3", "--p", "9", "--e", "1"}).code, 2);
}

TEST(Cli, Symplectic) {
  const Outcome a = run({"symplectic", "--g", "2", "--n", "3", "--delta", "1,0,0,0"});
  EXPECT_EQ(a.code, 0);
  EXPECT_FALSE(contains(a.out, "FAIL"));
  EXPECT_TRUE(contains(a.out, "[1 0 0 0]\n[0 1 0 0]\n[0 0 1 0]\n[0 0 0 1]"));

  const Outcome b = run({"symplectic", "--g", "2", "--n", "3", "--delta", "0,0,1,0"});
  EXPECT_EQ(b.code, 0);
  EXPECT_FALSE(contains(b.out, "FAIL"));
  EXPECT_TRUE(contains(b.out, "PASS"));

  EXPECT_EQ(run({"symplectic", "--g", "2", "--n", "6", "--delta", "2,4,0,2"}).code, 2);
  EXPECT_EQ(run({"symplectic", "--g", "2", "--n", "6", "--delta", "1,0,0"}).code, 2);
  EXPECT_EQ(run({"symplectic", "--g", "2", "--n", "6", "--delta", "1,x,0,0"}).code, 2);
}
