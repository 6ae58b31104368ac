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

// nftsignal command-line entry point.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nftsignal/error.h"
#include "nftsignal/io.h"
#include "nftsignal/pipeline.h"
#include "nftsignal/synth.h"

namespace fs = std::filesystem;
using namespace nftsignal;

namespace {

struct StageFlags {
  std::string config;
  std::vector<std::string> manifests;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<double> p;
  std::optional<int> k;
  std::optional<double> learning_rate;
  std::optional<int> epochs;
  std::optional<int> runs;
  std::optional<int> repeats;
  std::vector<int> lags;
  bool no_svg = false;
};

void AddStageFlags(CLI::App* cmd, StageFlags& f) {
  cmd->add_option("-c,--config", f.config, "run config (JSON)");
  cmd->add_option("-m,--manifest", f.manifests, "project manifest (repeatable)");
  cmd->add_option("-o,--out", f.out_dir, "output directory");
  cmd->add_option("--seed", f.seed, "global seed");
  cmd->add_option("--workers", f.workers, "projects processed concurrently");
  cmd->add_option("--p", f.p, "TF-IDF containment threshold");
  cmd->add_option("--k", f.k, "event words per timeframe");
  cmd->add_option("--lr", f.learning_rate, "learning rate");
  cmd->add_option("--epochs", f.epochs, "training epochs");
  cmd->add_option("--runs", f.runs, "independent training runs");
  cmd->add_option("--repeats", f.repeats, "permutation repeats per feature");
  cmd->add_option("--lags", f.lags, "Granger lags")->delimiter(',');
  cmd->add_flag("--no-svg", f.no_svg, "skip SVG figures");
}

RunConfig BuildConfig(const StageFlags& f, Stage stage) {
  RunConfig c = f.config.empty() ? RunConfig{} : LoadRunConfig(f.config);
  c.stage = stage;
  for (const auto& m : f.manifests) c.manifests.emplace_back(m);
  if (!f.out_dir.empty()) c.out_dir = f.out_dir;
  if (f.seed) c.seed = *f.seed;
  if (f.workers) c.workers = *f.workers;
  if (f.p) c.tfidf.p = *f.p;
  if (f.k) c.tfidf.k = *f.k;
  if (f.learning_rate) c.mlp.learning_rate = *f.learning_rate;
  if (f.epochs) c.mlp.epochs = *f.epochs;
  if (f.runs) c.mlp.runs = *f.runs;
  if (f.repeats) c.importance.repeats = *f.repeats;
  if (!f.lags.empty()) {
    c.lags.clear();
    for (int l : f.lags) c.lags.push_back({l});
  }
  if (f.no_svg) c.importance.svg = false;
  c.mlp.seed = c.seed;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social-media signal analysis for NFT collections"};
  app.require_subcommand(1);

  StageFlags flags;
  std::optional<Stage> stage;
  for (Stage s : {Stage::kIngest, Stage::kGranger, Stage::kExtract,
                  Stage::kTrain, Stage::kImportance, Stage::kReport,
                  Stage::kAll}) {
    const std::string name(StageName(s));
    auto* cmd = app.add_subcommand(
        name, name == "all" ? std::string("run every stage, then the report")
                            : "run the " + name + " stage");
    AddStageFlags(cmd, flags);
    cmd->callback([&stage, s] { stage = s; });
  }

  app.add_subcommand("defaults", "print the default run config")
      ->callback([] { std::cout << DefaultRunConfigJson(); });

  auto* synth = app.add_subcommand("synth", "write synthetic fixtures");
  synth->require_subcommand(1);

  VarSpec var;
  std::string var_out;
  auto* var_cmd = synth->add_subcommand("var", "coupled series pair as CSV");
  var_cmd->add_option("--coupling", var.coupling);
  var_cmd->add_option("--lag", var.true_lag);
  var_cmd->add_option("--length", var.length);
  var_cmd->add_option("--noise", var.noise_sd);
  var_cmd->add_option("--seed", var.seed);
  var_cmd->add_option("-o,--out", var_out, "output CSV")->required();

  PlantedCorpusSpec corpus;
  std::string corpus_out;
  auto* corpus_cmd = synth->add_subcommand(
      "corpus", "planted feature matrix (features.csv/json, target.csv)");
  corpus_cmd->add_option("--frames", corpus.n_frames);
  corpus_cmd->add_option("--vocab", corpus.vocab_size);
  corpus_cmd->add_option("--word", corpus.planted_word);
  corpus_cmd->add_option("--effect", corpus.effect_size);
  corpus_cmd->add_option("--window", corpus.markov_window);
  corpus_cmd->add_option("--seed", corpus.seed);
  corpus_cmd->add_option("-o,--out", corpus_out, "output directory")->required();

  ProjectFixtureSpec project;
  bool copycat = false;
  std::string project_out;
  auto* project_cmd = synth->add_subcommand(
      "project", "raw project (tweets.jsonl, transactions.csv, manifest.json)");
  project_cmd->add_option("--name", project.name);
  project_cmd->add_option("--days", project.days);
  project_cmd->add_option("--frame-len", project.frame_len_days);
  project_cmd->add_option("--window", project.markov_window);
  project_cmd->add_option("--seed", project.seed);
  project_cmd->add_flag("--copycat", copycat);
  project_cmd->add_option("-o,--out", project_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (stage) return RunPipeline(BuildConfig(flags, *stage), std::cerr);
    if (var_cmd->parsed()) {
      io::WriteFileAtomic(var_out, VarPairToCsv(GenVarPair(var)));
    } else if (corpus_cmd->parsed()) {
      const auto pc = GenPlantedCorpus(corpus);
      const fs::path dir = corpus_out;
      io::WriteFileAtomic(dir / "features.csv", FeatureMatrixToCsv(pc.matrix));
      io::WriteFileAtomic(dir / "features.json",
                          FeatureSidecarJson(pc.matrix, TfidfConfig{}));
      io::WriteFileAtomic(dir / "target.csv", TargetToCsv(pc.target));
    } else if (project_cmd->parsed()) {
      if (copycat) project.originality = Originality::kCopycat;
      std::cout << WriteProjectFixture(GenProjectFixture(project), project_out)
                       .string()
                << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStageFailure;
  }
  return kExitOk;
}
