// Copyright 2026 The compda Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "compda_cli.hpp"

namespace compda::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("compda_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  std::string gen(const std::string& name, std::vector<std::string> args) {
    const auto path = (dir_ / name).string();
    args.insert(args.begin(), "gen");
    args.push_back("--out");
    args.push_back(path);
    EXPECT_EQ(run(args).code, 0);
    return path;
  }
  std::string toy4() { return gen("toy4.pda", {"man", "--k", "4", "--i", "2"}); }

  fs::path dir_;
};

TEST_F(CliTest, GenMan) {
  const auto r = run({"gen", "man", "--k", "4", "--i", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "6 4\n* * 1 2\n* 1 * 3\n* 2 3 *\n1 * * 4\n2 * 4 *\n3 4 * *\n");
  EXPECT_NE(r.err.find("(K,F,T,S)=(4,6,12,4)"), std::string::npos);
  EXPECT_NE(r.err.find("3-regular"), std::string::npos);
  EXPECT_NE(r.err.find("tau=2"), std::string::npos);
}

TEST_F(CliTest, GenFullStarAndP1) {
  EXPECT_EQ(run({"gen", "fullstar", "--k", "3", "--f", "1"}).out, "1 3\n* * *\n");
  const auto r = run({"gen", "p1", "--q", "2", "--m", "2"});
  EXPECT_EQ(r.out, "2 4\n* 1 * 2\n2 * 1 *\n");
  EXPECT_NE(r.err.find("(K,F,T,S)=(4,2,4,2)"), std::string::npos);
}

TEST_F(CliTest, GenParameterErrors) {
  EXPECT_EQ(run({"gen", "man", "--k", "4"}).code, 3);
  EXPECT_EQ(run({"gen", "man", "--k", "4", "--i", "5"}).code, 3);
  EXPECT_EQ(run({"gen", "p2", "--q", "1", "--m", "2"}).code, 3);
  EXPECT_EQ(run({"gen", "hypergraph"}).code, 3);
  EXPECT_EQ(run({}).code, 3);
}

TEST_F(CliTest, ValidateReportsEveryViolation) {
  const auto good = run({"validate", "--pda", toy4()});
  EXPECT_EQ(good.code, 0);
  EXPECT_TRUE(good.json()["results"]["ok"].get<bool>());

  const auto path = write("bad.pda", "6 4\n* * 3 2\n* 1 * 3\n* 2 3 *\n1 * * 4\n2 * 4 *\n3 4 * *\n");
  const auto bad = run({"validate", "--pda", path});
  EXPECT_EQ(bad.code, 2);
  const Json v = bad.json()["results"]["violations"];
  bool cross = false;
  for (const auto& x : v)
    if (x["rule"] == "b" && x["symbol"] == 3 && x["rows"] == Json({1, 2}) &&
        x["cols"] == Json({3, 4}))
      cross = true;
  EXPECT_TRUE(cross) << bad.out;
  EXPECT_GE(v.size(), 2u);
}

TEST_F(CliTest, SyntaxErrorExitCode) {
  const auto path = write("syntax.pda", "2 1\n1 1\n");
  const auto r = run({"stats", "--pda", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_EQ(run({"stats", "--pda", (dir_ / "missing.pda").string()}).code, 3);
}

TEST_F(CliTest, Stats) {
  const auto r = run({"stats", "--pda", toy4()});
  ASSERT_EQ(r.code, 0);
  const Json s = r.json()["results"];
  EXPECT_EQ(s["tau"], 2);
  EXPECT_EQ(s["regular_g"], 3);
  EXPECT_EQ(s["theta"]["3"]["exact"], "1");
  EXPECT_EQ(s["storage_load"]["exact"], "2");
  EXPECT_TRUE(s["is_comp"].get<bool>());
}

TEST_F(CliTest, Subarray) {
  const auto r = run({"subarray", "--pda", toy4(), "--nodes", "1,2,4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "6 3\n* * 2\n* 1 3\n* 2 *\n1 * 4\n2 * *\n3 4 *\n");
  const auto p1 = gen("p1.pda", {"p1", "--q", "2", "--m", "2"});
  EXPECT_EQ(run({"subarray", "--pda", p1, "--nodes", "2,4"}).code, 3);
}

TEST_F(CliTest, AnalyzeToyArray) {
  const auto r = run({"analyze", "--pda", toy4(), "--q", "3"});
  ASSERT_EQ(r.code, 0);
  const Json j = r.json()["results"];
  EXPECT_EQ(j["r"]["exact"], "2");
  EXPECT_EQ(j["l"]["exact"], "5/12");
  EXPECT_EQ(j["l_optimal"]["exact"], "5/12");
  EXPECT_EQ(j["gap"]["exact"], "1");
  EXPECT_EQ(j["f"], 6);
  EXPECT_EQ(j["f_optimal"], "6");
}

TEST_F(CliTest, AnalyzeP1) {
  const auto p1 = gen("p1.pda", {"p1", "--q", "2", "--m", "2"});
  const Json j = run({"analyze", "--pda", p1, "--q", "3"}).json()["results"];
  EXPECT_EQ(j["l"]["exact"], "1/2");
  EXPECT_EQ(j["gap"]["exact"], "6/5");
  EXPECT_EQ(j["f"], 2);
  EXPECT_EQ(j["f_optimal"], "6");
}

TEST_F(CliTest, AnalyzeInsufficientTau) {
  const auto r = run({"analyze", "--pda", toy4(), "--q", "1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("K-Q+1 = 4"), std::string::npos) << r.err;
}

TEST_F(CliTest, TradeoffCsv) {
  const auto r = run({"tradeoff", "--k", "4", "--q", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "k,q,r,l_star,l_star_decimal\n"
            "4,3,2,5/12,0.416666666666667\n"
            "4,3,3,1/8,0.125\n"
            "4,3,4,0,0\n");
  EXPECT_NE(run({"tradeoff", "--k", "10", "--q", "10"}).out.find("\n10,10,2,2/5,0.4\n"),
            std::string::npos);
  EXPECT_NE(run({"tradeoff", "--k", "10", "--q", "8"}).out.find("\n10,8,3,119/360,"),
            std::string::npos);
}

TEST_F(CliTest, TradeoffAllQ) {
  const auto r = run({"tradeoff", "--k", "10", "--all-q", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const Json curves = r.json()["results"]["curves"];
  ASSERT_EQ(curves.size(), 10u);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    EXPECT_EQ(curves[i]["q"], i + 1);
    EXPECT_EQ(curves[i]["points"].size(), i + 1);
  }
  EXPECT_EQ(curves[0]["points"][0]["r"], 10);
  EXPECT_EQ(curves[0]["points"][0]["l_star"]["exact"], "0");
  EXPECT_EQ(curves[9]["points"][1]["l_star"]["exact"], "2/5");
  EXPECT_EQ(curves[7]["points"][0]["r"], 3);
  EXPECT_EQ(curves[7]["points"][0]["l_star"]["exact"], "119/360");
}

TEST_F(CliTest, TradeoffErrors) {
  EXPECT_EQ(run({"tradeoff", "--k", "4"}).code, 3);
  EXPECT_EQ(run({"tradeoff", "--k", "4", "--q", "5"}).code, 3);
  EXPECT_EQ(run({"tradeoff", "--k", "4", "--q", "3", "--all-q"}).code, 3);
  EXPECT_EQ(run({"tradeoff", "--k", "4", "--q", "3", "--format", "xml"}).code, 3);
}

TEST_F(CliTest, SimulateToyArray) {
  const auto r = run({"simulate", "--pda", toy4(), "--q", "3", "--files", "6",
                      "--functions", "3", "--iva-bits", "120"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json()["results"];
  EXPECT_EQ(j["l_measured"]["exact"], "5/12");
  EXPECT_TRUE(j["match"].get<bool>());
  EXPECT_TRUE(j["all_reference_match"].get<bool>());
  ASSERT_EQ(j["per_active_set"].size(), 4u);
  for (const auto& s : j["per_active_set"]) EXPECT_EQ(s["total_bits"], 900);
}

TEST_F(CliTest, SimulateSuggestsIvaBits) {
  const auto r = run({"simulate", "--pda", toy4(), "--q", "3", "--files", "6",
                      "--functions", "3", "--iva-bits", "7"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("--iva-bits 8"), std::string::npos) << r.err;
}

TEST_F(CliTest, SimulateFullStar) {
  const auto fs = gen("fs.pda", {"fullstar", "--k", "3", "--f", "2"});
  const auto r = run({"simulate", "--pda", fs, "--q", "2", "--files", "4", "--functions", "2",
                      "--iva-bits", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["results"]["l_measured"]["exact"], "0");
}

TEST_F(CliTest, SimulatePadsFunctions) {
  const auto r = run({"simulate", "--pda", toy4(), "--q", "3", "--files", "6",
                      "--functions", "2", "--iva-bits", "120"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json()["results"];
  EXPECT_EQ(j["functions_padded"], 3);
  EXPECT_EQ(j["l_measured"]["exact"], "5/12");
  EXPECT_EQ(j["l_measured_raw"]["exact"], "5/8");
  EXPECT_NE(r.err.find("padding"), std::string::npos);
}

TEST_F(CliTest, SimulateSampled) {
  const auto r = run({"simulate", "--pda", toy4(), "--q", "3", "--files", "6",
                      "--functions", "3", "--iva-bits", "120", "--mode", "sample",
                      "--samples", "3", "--seed", "9", "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json()["results"];
  EXPECT_EQ(j["mode"], "sample");
  EXPECT_EQ(j["sets"], 3);
}

TEST_F(CliTest, SimulateErrors) {
  const auto ex1 = toy4();
  EXPECT_EQ(run({"simulate", "--pda", ex1, "--q", "3", "--files", "7", "--functions", "3",
                 "--iva-bits", "120"}).code, 3);
  EXPECT_EQ(run({"simulate", "--pda", ex1, "--q", "1", "--files", "6", "--functions", "3",
                 "--iva-bits", "120"}).code, 3);
  EXPECT_EQ(run({"simulate", "--pda", ex1, "--q", "9", "--files", "6", "--functions", "3",
                 "--iva-bits", "120"}).code, 3);
}

TEST_F(CliTest, Prop1) {
  const auto r = run({"prop1", "--k", "4", "--r", "2", "--q", "3"});
  ASSERT_EQ(r.code, 0);
  const Json j = r.json()["results"];
  EXPECT_EQ(j["l_ratio"]["exact"], "6/5");
  EXPECT_EQ(j["alpha"]["exact"], "2/5");
  EXPECT_EQ(j["f_construction"], "2");
  EXPECT_EQ(j["f_ratio"]["exact"], "1/3");
  EXPECT_TRUE(j["beta_in_range"].get<bool>());
  EXPECT_EQ(run({"prop1", "--k", "4", "--r", "4", "--q", "4"}).code, 3);
  EXPECT_EQ(run({"prop1", "--k", "7", "--r", "3", "--q", "7"}).code, 3);
}

TEST_F(CliTest, OutputsAreByteStable) {
  const auto ex1 = toy4();
  const std::vector<std::vector<std::string>> commands{
      {"stats", "--pda", ex1},
      {"analyze", "--pda", ex1, "--q", "3"},
      {"tradeoff", "--k", "10", "--all-q", "--format", "json"},
      {"simulate", "--pda", ex1, "--q", "3", "--files", "6", "--functions", "3", "--iva-bits",
       "120", "--threads", "3"},
      {"prop1", "--k", "6", "--r", "3", "--q", "5"}};
  for (const auto& c : commands) EXPECT_EQ(run(c).out, run(c).out);
}

TEST_F(CliTest, OutFlagWritesFile) {
  const auto path = (dir_ / "t.csv").string();
  const auto r = run({"tradeoff", "--k", "4", "--q", "3", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "k,q,r,l_star,l_star_decimal");
}

TEST_F(CliTest, Envelope) {
  const Json j = run({"stats", "--pda", toy4()}).json();
  EXPECT_EQ(j["tool"], "compda");
  EXPECT_EQ(j["version"], kVersion);
  EXPECT_EQ(j["command"], "stats");
  EXPECT_EQ(j["argv"][0], "stats");
  EXPECT_TRUE(j.contains("inputs"));
  EXPECT_TRUE(j.contains("results"));
}

TEST_F(CliTest, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kVersion), std::string::npos);
}

}  // namespace
}  // namespace compda::cli
