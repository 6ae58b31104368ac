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

// End-to-end orchestration over one or more project manifests.
//
// Artifacts land in <out_dir>/<project-slug>/ and the combined report in
// <out_dir>/. Every file is written through a temp-file rename, and
// <out_dir>/run_manifest.json records the config plus SHA-256 digests of all
// inputs and outputs. Nothing time-dependent is written, so equal configs
// and inputs give byte-identical output trees.
#ifndef NFTSIGNAL_PIPELINE_H_
#define NFTSIGNAL_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nftsignal/granger.h"
#include "nftsignal/model.h"
#include "nftsignal/textfeat.h"

namespace nftsignal {

enum class Stage { kIngest, kGranger, kExtract, kTrain, kImportance, kReport, kAll };

std::string_view StageName(Stage s);
// Throws ConfigError for an unknown name.
Stage ParseStage(std::string_view name);

struct ImportanceConfig {
  int repeats = 5;
  int top_k = 20;
  bool svg = true;
};

struct RunConfig {
  std::vector<std::filesystem::path> manifests;
  Stage stage = Stage::kAll;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 2022;
  int workers = 1;
  TfidfConfig tfidf;
  MlpConfig mlp;
  SplitSpec split;
  std::vector<LagSpec> lags = {{1}, {2}, {3}};
  GrangerOptions granger;
  ImportanceConfig importance;

  // Throws ConfigError on invalid values. Does not touch the filesystem.
  void Validate() const;
};

// JSON document; relative paths resolve against `base_dir`. Keys absent
// from the document keep their defaults.
RunConfig RunConfigFromJson(const std::string& text,
                            const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);
std::string RunConfigToJson(const RunConfig& config);

// The default config, as printed by the `defaults` command.
std::string DefaultRunConfigJson();

// Lowercase ASCII alphanumerics with '-' separators.
std::string ProjectSlug(std::string_view name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitStageFailure = 1;
inline constexpr int kExitConfigError = 2;

// Runs the requested stage and everything it depends on. `report` reads
// previously written artifacts; `all` runs every stage and then the report.
// Diagnostics go to `log`. Returns one of the exit codes above.
int RunPipeline(const RunConfig& config, std::ostream& log);

}  // namespace nftsignal

#endif  // NFTSIGNAL_PIPELINE_H_
