// Copyright 2026 The jacobs-ladder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jacobs_ladder/cli.hpp"

namespace {

using namespace jl;
namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

// Private copy of the warmed checkpoint file, so commands may extend it.
std::string private_table(const std::string& name) {
  const fs::path dst = fs::temp_directory_path() / ("jl-cli-" + name + ".txt");
#ifdef JL_CHECKPOINT_FILE
  if (fs::exists(JL_CHECKPOINT_FILE)) {
    fs::copy_file(JL_CHECKPOINT_FILE, dst, fs::copy_options::overwrite_existing);
    return dst.string();
  }
#endif
  fs::remove(dst);
  return dst.string();
}

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

TEST(ResolveU, Presets) {
  const cli::USpecFlags none;
  const double L = std::log(1e4);
  EXPECT_DOUBLE_EQ(cli::resolve_u("T/log2T", 1e4, none), 1e4 / (L * L));
  EXPECT_DOUBLE_EQ(cli::resolve_u("gram-gap", 1e4, none), kTwoPi / L);
  EXPECT_DOUBLE_EQ(cli::resolve_u("12.5", 1e4, none), 12.5);
  EXPECT_THROW(cli::resolve_u("1/T^2", 1e4, none), cli::UsageError);
  EXPECT_THROW(cli::resolve_u("T/logT", 1e4, none), cli::UsageError);
  EXPECT_DOUBLE_EQ(cli::resolve_u("1/T^2", 1e4, {true, false}), 1e-8);
  EXPECT_DOUBLE_EQ(cli::resolve_u("T/logT", 1e4, {false, true}), 1e4 / L);
  for (const char* bad : {"", "abc", "-3", "0", "5x", "inf", "nan"}) {
    EXPECT_THROW(cli::resolve_u(bad, 1e4, none), cli::UsageError) << bad;
  }
}

TEST(Cli, EvalPrintsHeaderAndRow) {
  const Outcome r = run({"eval", "--t", "0"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "t,Z,theta");
  EXPECT_EQ(row.rfind("0,-1.46035450880958", 0), 0u) << row;
}

TEST(Cli, ZetaEvalSpellingAndOracle) {
  const Outcome a = run({"zeta", "eval", "--t", "1000"});
  const Outcome b = run({"eval", "--t", "1000", "--oracle", "--digits", "25"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(b.code, 0);
  auto z_of = [](const std::string& text) {
    const std::string row = text.substr(text.find('\n') + 1);
    return std::stod(row.substr(row.find(',') + 1));
  };
  EXPECT_NEAR(z_of(a.out), z_of(b.out), 1e-8);
}

TEST(Cli, EvalErrors) {
  EXPECT_EQ(run({"eval", "--t", "5", "--oracle", "--digits", "10"}).code, 2);
  EXPECT_EQ(run({"eval"}).code, 2);
  EXPECT_EQ(run({"eval", "--t", "abc"}).code, 2);
  const Outcome neg = run({"eval", "--t", "-1"});
  EXPECT_EQ(neg.code, 3);
  EXPECT_NE(neg.err.find("numerical error"), std::string::npos);
}

TEST(Cli, VerifyExactIdentityPasses) {
  const Outcome r = run({"verify", "--formula", "exact-identity", "--T", "1e5", "--U", "T/log2T", "--n", "2",
                         "--checkpoints", private_table("verify")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["formula"], "exact_identity");
  EXPECT_LT(std::fabs(j["ratio"].get<double>() - 1.0), 1e-5);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["details"].size(), 3u);
}

TEST(Cli, ReportIsByteIdentical) {
  const std::vector<std::string> args = {"verify", "--formula", "theorem", "--T", "20000", "--n", "2",
                                         "--checkpoints"};
  auto with_table = [&](const std::string& path) {
    std::vector<std::string> a = args;
    a.push_back(path);
    return run(a);
  };
  const std::string table = private_table("determinism");
  const Outcome first = with_table(table);
  const Outcome fresh = with_table(private_table("determinism"));
  const Outcome reused = with_table(table);
  EXPECT_EQ(first.out, fresh.out);
  EXPECT_EQ(first.out, reused.out);
  EXPECT_FALSE(first.out.empty());
}

TEST(Cli, VerifyRejectsWideU) {
  const Outcome r = run({"verify", "--formula", "theorem", "--T", "1e4", "--U", "2e8", "--n", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("usage error"), std::string::npos);
}

TEST(Cli, VerifyUsageErrors) {
  EXPECT_EQ(run({"verify", "--formula", "bogus", "--T", "1e4"}).code, 2);
  EXPECT_EQ(run({"verify", "--T", "1e4"}).code, 2);
  EXPECT_EQ(run({"verify", "--formula", "theorem", "--T", "1e4", "--U", "1/T^2"}).code, 2);
  EXPECT_EQ(run({"verify", "--formula", "theorem", "--T", "1e4", "--n", "-1"}).code, 2);
  EXPECT_EQ(run({"verify", "--formula", "theorem", "--T", "1e4", "--eps", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "--formula", "theorem", "--T", "500"}).code, 2);
  EXPECT_EQ(run({"verify", "--formula", "theorem", "--T", "1e4", "--format", "xml"}).code, 2);
}

TEST(Cli, VerifyCsvToFile) {
  const fs::path path = fs::temp_directory_path() / "jl-cli-verify.csv";
  fs::remove(path);
  const Outcome r = run({"verify", "--formula", "hl-law", "--T", "1e4", "--format", "csv", "--out", path.string(),
                         "--checkpoints", private_table("csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "formula,T,U,n,lhs,rhs,ratio,tolerance_used,pass,error");
  EXPECT_EQ(row.rfind("hl_law,10000,", 0), 0u);
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST(Cli, ScanFlagsSubThresholdRow) {
  const Outcome r = run({"scan", "--formula", "hl-law", "--T-grid", "500,10000", "--checkpoints",
                         private_table("scan")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("hl_law,500,,,,,,,false,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# trend_non_increasing="), std::string::npos);
}

TEST(Cli, ScanAllRowsFailingIsNumerical) {
  EXPECT_EQ(run({"scan", "--formula", "hl-law", "--T-grid", "100,200"}).code, 3);
}

TEST(Cli, ScanJson) {
  const Outcome r = run({"scan", "--formula", "theorem", "--T-grid", "10000,20000", "--n", "0", "--format", "json",
                         "--checkpoints", private_table("scanjson")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["reports"].size(), 2u);
  EXPECT_EQ(j["reports"][1]["ratio"], 1.0);
  EXPECT_TRUE(j["trend_non_increasing"].is_boolean());
  EXPECT_EQ(run({"scan", "--formula", "theorem", "--T-grid", "20000,10000"}).code, 2);
}

TEST(Cli, Tabulate) {
  const Outcome r = run({"ladder", "tabulate", "--t-min", "10000", "--t-max", "10010", "--points", "3", "--depth",
                         "1", "--checkpoints", private_table("tab")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "t,phi1,phi2,gap_ratio");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_EQ(run({"tabulate", "--t-min", "2000", "--t-max", "1000", "--points", "3"}).code, 2);
  EXPECT_EQ(run({"tabulate", "--t-min", "1100", "--t-max", "1100", "--points", "1", "--depth", "40"}).code, 3);
}

TEST(Cli, Moments) {
  const std::string table = private_table("moments");
  const Outcome r = run({"moments", "--T", "100", "--checkpoints", table});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("T,F,err,ratio\n100,295.63", 0), 0u) << r.out;
  EXPECT_EQ(run({"moments"}).code, 2);
  EXPECT_EQ(run({"moments", "--T", "5"}).code, 2);
}

TEST(Cli, CorruptCheckpointFile) {
  const fs::path path = fs::temp_directory_path() / "jl-cli-corrupt.txt";
  std::ofstream(path, std::ios::trunc) << "garbage\n";
  EXPECT_EQ(run({"moments", "--T", "100", "--checkpoints", path.string()}).code, 3);
}

TEST(Cli, HelpAndUnknown) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "--t", "1", "--bogus"}).code, 2);
}

// Random argv built from a pool of broken tokens never escapes run() and
// never reports success for a command that cannot have parsed.
TEST(Cli, MalformedArgvProperty) {
  const std::vector<std::string> pool = {"verify", "scan",  "--formula", "bogus", "--T",   "x",  "--n",
                                         "-3",     "--U",   "--tol",     "0",     "--t",   ",,", "--T-grid",
                                         "--wat",  "",      "moments",   "--eps", "--out", "-"};
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(0, 6);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> args;
    const int n = len(rng);
    for (int j = 0; j < n; ++j) args.push_back(pool[pick(rng)]);
    Outcome r{};
    ASSERT_NO_THROW(r = run(args));
    EXPECT_TRUE(r.code == 2 || r.code == 3) << ::testing::PrintToString(args) << " -> " << r.code;
  }
}

}  // namespace
