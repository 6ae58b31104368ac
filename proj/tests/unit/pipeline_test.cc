/*
 * Copyright 2026 The nftsignal Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "nftsignal/pipeline.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "nftsignal/error.h"
#include "nftsignal/io.h"
#include "nftsignal/synth.h"

namespace nftsignal {
namespace {

namespace fs = std::filesystem;

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("nftsignal_pipeline_" +
             std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    ProjectFixtureSpec spec;
    spec.days = 120;
    manifest_ = WriteProjectFixture(GenProjectFixture(spec), root_ / "apes");
    config_.manifests = {manifest_};
    config_.out_dir = root_ / "out";
    config_.mlp.epochs = 50;
    config_.mlp.runs = 1;
    config_.importance.repeats = 2;
  }
  void TearDown() override { fs::remove_all(root_); }

  int Run(Stage stage) {
    config_.stage = stage;
    log_.str("");
    return RunPipeline(config_, log_);
  }

  fs::path ProjectDir() const { return config_.out_dir / "synthetic-apes"; }

  fs::path root_;
  fs::path manifest_;
  RunConfig config_;
  std::ostringstream log_;
};

TEST_F(PipelineTest, AllWritesEveryArtifact) {
  ASSERT_EQ(Run(Stage::kAll), kExitOk) << log_.str();
  for (const char* name :
       {"tweets.clean.jsonl", "transactions.clean.csv", "frames.csv", "granger.csv",
        "features.csv", "features.json", "target.csv", "extraction.csv",
        "model_run0.json", "metrics.csv", "importance.csv", "importance.svg"}) {
    EXPECT_TRUE(fs::exists(ProjectDir() / name)) << name;
  }
  for (const char* name : {"report.md", "granger_table.csv", "extraction_table.csv",
                           "metrics_table.csv", "run_manifest.json"}) {
    EXPECT_TRUE(fs::exists(config_.out_dir / name)) << name;
  }
}

TEST_F(PipelineTest, GrangerStageTouchesNoModelArtifacts) {
  ASSERT_EQ(Run(Stage::kGranger), kExitOk) << log_.str();
  EXPECT_TRUE(fs::exists(ProjectDir() / "granger.csv"));
  EXPECT_FALSE(fs::exists(ProjectDir() / "features.csv"));
  EXPECT_FALSE(fs::exists(ProjectDir() / "model_run0.json"));
  EXPECT_FALSE(fs::exists(config_.out_dir / "report.md"));
}

TEST_F(PipelineTest, ReportWithoutArtifactsNamesTheMissingStage) {
  EXPECT_EQ(Run(Stage::kReport), kExitStageFailure);
  EXPECT_NE(log_.str().find("first"), std::string::npos) << log_.str();
}

TEST_F(PipelineTest, RerunIsByteIdentical) {
  ASSERT_EQ(Run(Stage::kAll), kExitOk) << log_.str();
  const auto report = io::ReadFile(config_.out_dir / "report.md");
  const auto model = io::ReadFile(ProjectDir() / "model_run0.json");
  const auto manifest = io::ReadFile(config_.out_dir / "run_manifest.json");
  ASSERT_EQ(Run(Stage::kAll), kExitOk) << log_.str();
  EXPECT_EQ(io::ReadFile(config_.out_dir / "report.md"), report);
  EXPECT_EQ(io::ReadFile(ProjectDir() / "model_run0.json"), model);
  EXPECT_EQ(io::ReadFile(config_.out_dir / "run_manifest.json"), manifest);
}

TEST_F(PipelineTest, MissingManifestIsAConfigError) {
  config_.manifests = {root_ / "nope.json"};
  EXPECT_EQ(Run(Stage::kAll), kExitConfigError);
  EXPECT_NE(log_.str().find("config error"), std::string::npos);
}

TEST_F(PipelineTest, FailedStageIsRolledBackAndNamed) {
  auto text = io::ReadFile(manifest_);
  const auto at = text.find("\"markov_window\": 3");
  ASSERT_NE(at, std::string::npos) << text;
  text.replace(at, 18, "\"markov_window\": 500");
  io::WriteFileAtomic(manifest_, text);
  EXPECT_EQ(Run(Stage::kAll), kExitStageFailure);
  EXPECT_NE(log_.str().find("stage "), std::string::npos) << log_.str();
  EXPECT_NE(log_.str().find(" failed"), std::string::npos) << log_.str();
  EXPECT_FALSE(fs::exists(ProjectDir() / "model_run0.json"));
  EXPECT_FALSE(fs::exists(config_.out_dir / "report.md"));
}

TEST(RunConfig, JsonRejectsUnknownKeys) {
  EXPECT_THROW(RunConfigFromJson(R"({"seeed": 1})", "."), ConfigError);
  EXPECT_THROW(RunConfigFromJson(R"({"mlp": {"epochz": 1}})", "."), ConfigError);
}

TEST(RunConfig, JsonRoundTrip) {
  const auto c = RunConfigFromJson(
      R"({"manifests": ["a/m.json"], "stage": "granger", "seed": 9,
          "tfidf": {"p": 0.02, "k": 5}, "lags": [1, 4]})",
      "/data");
  EXPECT_EQ(c.manifests.at(0), fs::path("/data/a/m.json"));
  EXPECT_EQ(c.stage, Stage::kGranger);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.tfidf.k, 5);
  ASSERT_EQ(c.lags.size(), 2u);
  EXPECT_EQ(c.lags[1].lags, 4);
  const auto again = RunConfigFromJson(RunConfigToJson(c), "/elsewhere");
  EXPECT_EQ(again.tfidf.p, 0.02);
  EXPECT_EQ(again.seed, 9u);
}

TEST(RunConfig, StageNames) {
  for (auto s : {Stage::kIngest, Stage::kGranger, Stage::kExtract, Stage::kTrain,
                 Stage::kImportance, Stage::kReport, Stage::kAll}) {
    EXPECT_EQ(ParseStage(StageName(s)), s);
  }
  EXPECT_THROW(ParseStage("deploy"), ConfigError);
}

TEST(ProjectSlug, LowercaseHyphenated) {
  EXPECT_EQ(ProjectSlug("Bored Ape Yacht Club"), "bored-ape-yacht-club");
  EXPECT_EQ(ProjectSlug("  CryptoPunks!! v2 "), "cryptopunks-v2");
}

}  // namespace
}  // namespace nftsignal
