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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "nftsignal/error.h"
#include "nftsignal/importance.h"
#include "nftsignal/ingest.h"
#include "nftsignal/io.h"
#include "nftsignal/pos_tagger.h"
#include "nftsignal/report.h"
#include "nftsignal/synth.h"
#include "nftsignal/timeseries.h"

namespace nftsignal {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr std::uint64_t kMdaSeedSalt = 0x6d6461;  // "mda"
constexpr const char* kRunManifest = "run_manifest.json";

constexpr std::pair<Stage, std::string_view> kStageNames[] = {
    {Stage::kIngest, "ingest"},         {Stage::kGranger, "granger"},
    {Stage::kExtract, "extract"},       {Stage::kTrain, "train"},
    {Stage::kImportance, "importance"}, {Stage::kReport, "report"},
    {Stage::kAll, "all"},
};

// Whether stage `s` runs when `requested` is selected.
bool Runs(Stage requested, Stage s) {
  if (requested == Stage::kAll) return true;
  switch (s) {
    case Stage::kIngest:
      return requested != Stage::kReport;
    case Stage::kGranger:
      return requested == Stage::kGranger;
    case Stage::kExtract:
      return requested == Stage::kExtract || requested == Stage::kTrain ||
             requested == Stage::kImportance;
    case Stage::kTrain:
      return requested == Stage::kTrain || requested == Stage::kImportance;
    case Stage::kImportance:
      return requested == Stage::kImportance;
    case Stage::kReport:
      return requested == Stage::kReport;
    case Stage::kAll:
      return false;
  }
  return false;
}

class StageFailure : public Error {
 public:
  StageFailure(Stage stage, const std::string& what)
      : Error(fmt::format("stage {} failed: {}", StageName(stage), what)) {}
};

// Tracks files written by one stage so they can be removed on failure.
class StageWriter {
 public:
  explicit StageWriter(fs::path dir) : dir_(std::move(dir)) {}

  void Write(const fs::path& relative, std::string_view content) {
    const fs::path path = dir_ / relative;
    written_.push_back(path);
    io::WriteFileAtomic(path, content);
  }

  void Rollback() {
    std::error_code ec;
    for (const auto& p : written_) {
      fs::remove(p, ec);
      fs::path tmp = p;
      tmp += ".tmp";
      fs::remove(tmp, ec);
    }
    written_.clear();
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

struct Project {
  fs::path manifest_path;
  ProjectManifest manifest;
  fs::path dir;

  std::vector<Tweet> tweets;
  TimeframeSeries sale_frames;
  FeatureMatrix matrix;
  NormalizedTarget target;
  std::optional<TrainResult> trained;

  std::vector<std::string> log;
  bool failed = false;
};

json LagsToJson(const std::vector<LagSpec>& lags) {
  json out = json::array();
  for (const auto& l : lags) out.push_back(l.lags);
  return out;
}

void RejectUnknownKeys(const json& doc, std::initializer_list<const char*> keys,
                       std::string_view where) {
  for (const auto& [key, value] : doc.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) {
          return key == k;
        }) == keys.end()) {
      throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
    }
  }
}

template <typename T>
void ReadIf(const json& doc, const char* key, T& slot) {
  if (doc.contains(key)) slot = doc.at(key).get<T>();
}

std::string WordFileName(std::size_t i, std::string_view word) {
  std::string slug = ProjectSlug(word);
  return fmt::format("{:02}-{}.svg", i, slug.empty() ? "word" : slug);
}

void IngestStage(Project& p, StageWriter& w) {
  std::vector<std::string> warnings;
  p.tweets = LoadTweets(p.manifest.tweets_path, p.manifest, &warnings);
  for (auto& msg : warnings) p.log.push_back("warning: " + msg);
  const auto transactions =
      SplitMultiNftValues(LoadTransactions(p.manifest.transactions_path));
  const auto series =
      Bucketize(p.tweets, transactions, p.manifest.frame_len_days);
  p.sale_frames = DropFramesWithoutSales(series);
  w.Write("tweets.clean.jsonl", TweetsToJsonl(p.tweets));
  w.Write("transactions.clean.csv", TransactionsToCsv(transactions));
  w.Write("frames.csv", SeriesToCsv(series));
}

void GrangerStage(Project& p, const RunConfig& c, StageWriter& w) {
  const auto cells = RunBidirectional(p.sale_frames, c.lags, c.granger);
  w.Write("granger.csv", GrangerCellsToCsv(cells));
}

void ExtractStage(Project& p, const RunConfig& c, StageWriter& w) {
  if (p.sale_frames.empty()) {
    throw InsufficientDataError("no timeframes with sales");
  }
  const auto corpus = BuildCorpus(p.tweets, p.sale_frames, DefaultPosTagger());
  p.matrix = BuildFeatureMatrix(corpus, c.tfidf);
  p.matrix.frame_dates.clear();
  for (const auto& f : p.sale_frames.frames) {
    p.matrix.frame_dates.push_back(FormatDate(f.start));
  }
  std::vector<double> prices;
  for (const auto& f : p.sale_frames.frames) prices.push_back(*f.avg_price);
  p.target = MarkovNormalize(prices, p.manifest.markov_window);

  ExtractionSummary summary;
  summary.timeframes = static_cast<int>(p.sale_frames.size());
  summary.frame_len_days = p.sale_frames.frame_len_days;
  summary.features = static_cast<int>(p.matrix.vocab.size());
  if (!p.matrix.vocab.empty()) {
    const TfidfIndex index(corpus, c.tfidf);
    double total = 0.0;
    for (const auto& word : p.matrix.vocab) total += index.Containment(word);
    summary.word_mean_tfs = total / static_cast<double>(p.matrix.vocab.size());
  }
  summary.first_date = FormatDate(p.sale_frames.frames.front().start);
  summary.last_date =
      FormatDate(p.sale_frames.frames.back().start +
                 std::chrono::days{p.sale_frames.frame_len_days - 1});

  w.Write("features.csv", FeatureMatrixToCsv(p.matrix));
  w.Write("features.json", FeatureSidecarJson(p.matrix, c.tfidf));
  w.Write("target.csv", TargetToCsv(p.target));
  w.Write("extraction.csv", ExtractionToCsv(summary));
}

void TrainStage(Project& p, const RunConfig& c, StageWriter& w) {
  MlpConfig mlp = c.mlp;
  mlp.seed = c.seed;
  p.trained = Train(p.matrix, p.target, mlp, c.split);
  for (const auto& model : p.trained->models) {
    w.Write(fmt::format("model_run{}.json", model.run), ModelToJson(model));
  }
  w.Write("metrics.csv",
          MetricsToCsv({p.trained->metrics, p.manifest.markov_window}));
}

void ImportanceStage(Project& p, const RunConfig& c, StageWriter& w) {
  MdaOptions options;
  options.repeats = c.importance.repeats;
  options.seed = c.seed ^ kMdaSeedSalt;
  const auto scores = Mda(p.trained->models.front().network,
                          p.trained->split.test, p.matrix.vocab, options);
  const auto [top, bottom] = TopBottom(scores, c.importance.top_k);
  w.Write("importance.csv", ImportanceToCsv(top, bottom));
  if (!c.importance.svg) return;
  w.Write("importance.svg",
          ImportanceChartSvg(top, bottom, p.manifest.name + " feature importance"));
  std::set<std::string> words;
  for (const auto& s : top) words.insert(s.word);
  for (const auto& s : bottom) words.insert(s.word);
  std::size_t i = 0;
  for (const auto& word : words) {
    w.Write(fs::path("density") / WordFileName(i++, word),
            DensityProfileSvg(KdeProfile(word, p.matrix)));
  }
}

template <typename Fn>
void RunStage(Project& p, Stage stage, Fn fn) {
  StageWriter writer(p.dir);
  try {
    fn(writer);
  } catch (const std::exception& e) {
    writer.Rollback();
    throw StageFailure(stage, e.what());
  }
}

void RunProject(Project& p, const RunConfig& c) {
  try {
    if (Runs(c.stage, Stage::kIngest)) {
      RunStage(p, Stage::kIngest, [&](StageWriter& w) { IngestStage(p, w); });
    }
    if (Runs(c.stage, Stage::kGranger)) {
      RunStage(p, Stage::kGranger,
               [&](StageWriter& w) { GrangerStage(p, c, w); });
    }
    if (Runs(c.stage, Stage::kExtract)) {
      RunStage(p, Stage::kExtract,
               [&](StageWriter& w) { ExtractStage(p, c, w); });
    }
    if (Runs(c.stage, Stage::kTrain)) {
      RunStage(p, Stage::kTrain, [&](StageWriter& w) { TrainStage(p, c, w); });
    }
    if (Runs(c.stage, Stage::kImportance)) {
      RunStage(p, Stage::kImportance,
               [&](StageWriter& w) { ImportanceStage(p, c, w); });
    }
  } catch (const StageFailure& e) {
    p.failed = true;
    p.log.push_back(e.what());
  }
}

std::string ReadArtifact(const fs::path& dir, const char* name, Stage producer) {
  const fs::path path = dir / name;
  if (!fs::exists(path)) {
    throw Error(fmt::format("missing artifact {}; run stage {} first",
                            path.string(), StageName(producer)));
  }
  return io::ReadFile(path);
}

void ReportStage(std::vector<Project>& projects, const RunConfig& c,
                 StageWriter& w) {
  Report report;
  std::vector<std::set<std::string>> vocabs;
  for (const auto& p : projects) {
    ProjectReport pr;
    pr.project = p.manifest.name;
    pr.originality = p.manifest.originality;
    pr.granger = GrangerCellsFromCsv(
        ReadArtifact(p.dir, "granger.csv", Stage::kGranger));
    pr.extraction = ExtractionFromCsv(
        ReadArtifact(p.dir, "extraction.csv", Stage::kExtract));
    pr.metrics =
        MetricsFromCsv(ReadArtifact(p.dir, "metrics.csv", Stage::kTrain));
    pr.importance = ImportanceFromCsv(
        ReadArtifact(p.dir, "importance.csv", Stage::kImportance));
    const auto matrix = FeatureMatrixFromFiles(
        ReadArtifact(p.dir, "features.csv", Stage::kExtract),
        ReadArtifact(p.dir, "features.json", Stage::kExtract));
    vocabs.emplace_back(matrix.vocab.begin(), matrix.vocab.end());
    report.projects.push_back(std::move(pr));
  }
  if (vocabs.size() >= 2) report.overlap = OverlapDistribution(vocabs);
  w.Write("report.md", RenderMarkdown(report));
  w.Write("granger_table.csv", GrangerTableCsv(report));
  w.Write("extraction_table.csv", ExtractionTableCsv(report));
  w.Write("metrics_table.csv", MetricsTableCsv(report));
  if (report.overlap) w.Write("overlap.csv", OverlapTableCsv(*report.overlap));
  (void)c;
}

json RunManifestJson(const RunConfig& c, const std::vector<Project>& projects) {
  json config = json::parse(RunConfigToJson(c));
  config.erase("out_dir");
  json inputs = json::array();
  for (const auto& p : projects) {
    inputs.push_back({{"project", p.manifest.name},
                      {"manifest", io::Sha256File(p.manifest_path)},
                      {"tweets", io::Sha256File(p.manifest.tweets_path)},
                      {"transactions",
                       io::Sha256File(p.manifest.transactions_path)}});
  }
  std::map<std::string, std::string> outputs;
  for (const auto& entry : fs::recursive_directory_iterator(c.out_dir)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), c.out_dir).generic_string();
    if (rel == kRunManifest || entry.path().extension() == ".tmp") continue;
    outputs[rel] = io::Sha256File(entry.path());
  }
  return {{"config", config}, {"inputs", inputs}, {"outputs", outputs}};
}

}  // namespace

std::string_view StageName(Stage s) {
  for (const auto& [stage, name] : kStageNames) {
    if (stage == s) return name;
  }
  return "unknown";
}

Stage ParseStage(std::string_view name) {
  for (const auto& [stage, n] : kStageNames) {
    if (n == name) return stage;
  }
  throw ConfigError(fmt::format("unknown stage '{}'", name));
}

void RunConfig::Validate() const {
  if (manifests.empty()) throw ConfigError("at least one manifest is required");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (out_dir.empty()) throw ConfigError("out_dir must not be empty");
  tfidf.Validate();
  mlp.Validate();
  if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0, 1)");
  }
  if (lags.empty()) throw ConfigError("at least one lag is required");
  for (const auto& l : lags) {
    if (l.lags < 1) throw ConfigError("lags must be >= 1");
  }
  if (importance.repeats < 1) throw ConfigError("importance repeats must be >= 1");
  if (importance.top_k < 1) throw ConfigError("importance top_k must be >= 1");
}

RunConfig RunConfigFromJson(const std::string& text, const fs::path& base_dir) {
  RunConfig c;
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw ConfigError("run config must be an object");
    RejectUnknownKeys(doc,
                      {"manifests", "stage", "out_dir", "seed", "workers",
                       "tfidf", "mlp", "split", "lags", "granger",
                       "importance"},
                      "run config");
    if (doc.contains("manifests")) {
      for (const auto& m : doc.at("manifests")) {
        c.manifests.push_back(base_dir / m.get<std::string>());
      }
    }
    if (doc.contains("stage")) c.stage = ParseStage(doc.at("stage").get<std::string>());
    if (doc.contains("out_dir")) c.out_dir = base_dir / doc.at("out_dir").get<std::string>();
    ReadIf(doc, "seed", c.seed);
    ReadIf(doc, "workers", c.workers);
    if (doc.contains("tfidf")) {
      const auto& t = doc.at("tfidf");
      RejectUnknownKeys(t, {"p", "k"}, "tfidf");
      ReadIf(t, "p", c.tfidf.p);
      ReadIf(t, "k", c.tfidf.k);
    }
    if (doc.contains("mlp")) {
      const auto& m = doc.at("mlp");
      RejectUnknownKeys(m, {"hidden_units", "learning_rate", "epochs", "runs",
                            "batch_size"},
                        "mlp");
      ReadIf(m, "hidden_units", c.mlp.hidden_units);
      ReadIf(m, "learning_rate", c.mlp.learning_rate);
      ReadIf(m, "epochs", c.mlp.epochs);
      ReadIf(m, "runs", c.mlp.runs);
      ReadIf(m, "batch_size", c.mlp.batch_size);
    }
    if (doc.contains("split")) {
      RejectUnknownKeys(doc.at("split"), {"train_fraction"}, "split");
      ReadIf(doc.at("split"), "train_fraction", c.split.train_fraction);
    }
    if (doc.contains("lags")) {
      c.lags.clear();
      for (const auto& l : doc.at("lags")) c.lags.push_back({l.get<int>()});
    }
    if (doc.contains("granger")) {
      RejectUnknownKeys(doc.at("granger"), {"first_difference"}, "granger");
      ReadIf(doc.at("granger"), "first_difference", c.granger.first_difference);
    }
    if (doc.contains("importance")) {
      const auto& i = doc.at("importance");
      RejectUnknownKeys(i, {"repeats", "top_k", "svg"}, "importance");
      ReadIf(i, "repeats", c.importance.repeats);
      ReadIf(i, "top_k", c.importance.top_k);
      ReadIf(i, "svg", c.importance.svg);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  c.mlp.seed = c.seed;
  return c;
}

RunConfig LoadRunConfig(const fs::path& path) {
  std::string text;
  try {
    text = io::ReadFile(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return RunConfigFromJson(text, path.parent_path());
}

std::string RunConfigToJson(const RunConfig& c) {
  json manifests = json::array();
  for (const auto& m : c.manifests) manifests.push_back(m.generic_string());
  const json doc = {
      {"manifests", manifests},
      {"stage", std::string(StageName(c.stage))},
      {"out_dir", c.out_dir.generic_string()},
      {"seed", c.seed},
      {"workers", c.workers},
      {"tfidf", {{"p", c.tfidf.p}, {"k", c.tfidf.k}}},
      {"mlp",
       {{"hidden_units", c.mlp.hidden_units},
        {"learning_rate", c.mlp.learning_rate},
        {"epochs", c.mlp.epochs},
        {"runs", c.mlp.runs},
        {"batch_size", c.mlp.batch_size}}},
      {"split", {{"train_fraction", c.split.train_fraction}}},
      {"lags", LagsToJson(c.lags)},
      {"granger", {{"first_difference", c.granger.first_difference}}},
      {"importance",
       {{"repeats", c.importance.repeats},
        {"top_k", c.importance.top_k},
        {"svg", c.importance.svg}}},
  };
  return doc.dump(2) + "\n";
}

std::string DefaultRunConfigJson() { return RunConfigToJson(RunConfig{}); }

std::string ProjectSlug(std::string_view name) {
  std::string slug;
  for (char ch : name) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) && c < 0x80) {
      slug.push_back(static_cast<char>(std::tolower(c)));
    } else if (!slug.empty() && slug.back() != '-') {
      slug.push_back('-');
    }
  }
  while (!slug.empty() && slug.back() == '-') slug.pop_back();
  return slug;
}

int RunPipeline(const RunConfig& config, std::ostream& log) {
  std::vector<Project> projects;
  try {
    config.Validate();
    std::set<std::string> slugs;
    for (const auto& path : config.manifests) {
      if (!fs::exists(path)) {
        throw ConfigError("manifest not found: " + path.string());
      }
      Project p;
      p.manifest_path = path;
      p.manifest = LoadManifest(path);
      for (const auto& input :
           {p.manifest.tweets_path, p.manifest.transactions_path}) {
        if (!fs::exists(input)) {
          throw ConfigError(fmt::format("input for project '{}' not found: {}",
                                        p.manifest.name, input.string()));
        }
      }
      const std::string slug = ProjectSlug(p.manifest.name);
      if (slug.empty() || !slugs.insert(slug).second) {
        throw ConfigError(fmt::format(
            "project name '{}' is empty or collides with another project",
            p.manifest.name));
      }
      p.dir = config.out_dir / slug;
      projects.push_back(std::move(p));
    }
    fs::create_directories(config.out_dir);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const fs::filesystem_error& e) {
    log << "config error: cannot create output directory: " << e.what() << "\n";
    return kExitConfigError;
  }

  if (config.stage != Stage::kReport) {
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (std::size_t i = next++; i < projects.size(); i = next++) {
        RunProject(projects[i], config);
      }
    };
    const int n_threads =
        std::min<int>(config.workers, static_cast<int>(projects.size()));
    std::vector<std::thread> threads;
    for (int t = 1; t < n_threads; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
  }

  bool failed = false;
  for (const auto& p : projects) {
    for (const auto& line : p.log) log << p.manifest.name << ": " << line << "\n";
    failed = failed || p.failed;
  }
  if (!failed && Runs(config.stage, Stage::kReport)) {
    StageWriter writer(config.out_dir);
    try {
      ReportStage(projects, config, writer);
    } catch (const std::exception& e) {
      writer.Rollback();
      log << StageFailure(Stage::kReport, e.what()).what() << "\n";
      failed = true;
    }
  }
  try {
    io::WriteFileAtomic(config.out_dir / kRunManifest,
                        RunManifestJson(config, projects).dump(2) + "\n");
  } catch (const std::exception& e) {
    log << "cannot write run manifest: " << e.what() << "\n";
    return kExitStageFailure;
  }
  return failed ? kExitStageFailure : kExitOk;
}

}  // namespace nftsignal
