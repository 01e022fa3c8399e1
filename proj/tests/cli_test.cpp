#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <unistd.h>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "test_support.hpp"

using reltree::testing::data_path;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = reltree::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("reltree_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
    index_ = (dir_ / "fixture.idx").string();
    auto r = cli({"index", data_path("fixture/corpus.nbib"), "-o", index_});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
  std::string index_;
};

}  // namespace

TEST_F(CliTest, IndexReportsCount) {
  auto r = cli({"index", data_path("eval/corpus.nbib"), "-o", (dir_ / "eval.idx").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("indexed 20 documents"), std::string::npos);
}

TEST_F(CliTest, SearchText) {
  auto r = cli({"search", index_, "aspirin treatment of heart attack", "--format", "text"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("[L1]"), std::string::npos);
  EXPECT_NE(r.out.find("  #1 2 DS=4.2000 CL=100.0000\n"), std::string::npos);
}

TEST_F(CliTest, SearchJson) {
  auto r = cli({"search", index_, "aspirin treatment of heart attack", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto json = nlohmann::json::parse(r.out);
  EXPECT_EQ(json["clusters"][0]["documents"][0]["id"], "2");
}

TEST_F(CliTest, EmptyQueryExitsOne) {
  auto r = cli({"search", index_, ""});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("empty query"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(CliTest, MissingCorpusExitsOne) {
  auto r = cli({"index", "missing.nbib", "-o", (dir_ / "out").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("file not found"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"search", index_, "aspirin", "--format", "xml"}).code, 2);
  EXPECT_EQ(cli({"search", index_, "aspirin", "--bogus"}).code, 2);
}

TEST_F(CliTest, UnknownIndexVersionExitsOne) {
  const auto bad = (dir_ / "bad.idx").string();
  {
    std::ofstream out(bad);
    out << "RTIDX v9\nEND\n";
  }
  auto r = cli({"search", bad, "aspirin"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("unsupported index version"), std::string::npos);
}

TEST_F(CliTest, EvalPrintsPerQueryLines) {
  const auto idx = (dir_ / "eval.idx").string();
  ASSERT_EQ(cli({"index", data_path("eval/corpus.nbib"), "-o", idx}).code, 0);
  auto r = cli({"eval", idx, data_path("eval/qrels.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("q1 P=0.6000 R=0.7500"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("macro P=0.8200"), std::string::npos) << r.out;
}

TEST_F(CliTest, ConfigFileChangesLevels) {
  const auto cfg = (dir_ / "reltree.conf").string();
  {
    std::ofstream out(cfg);
    out << "levels=2\n";
  }
  auto r = cli({"--config", cfg, "search", index_, "aspirin treatment of heart attack"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("[L6]"), std::string::npos);
  EXPECT_NE(r.out.find("[L2] 0.0000–50.0000%"), std::string::npos) << r.out;
}
