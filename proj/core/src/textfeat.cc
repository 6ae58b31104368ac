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

#include "nftsignal/textfeat.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "nftsignal/csv.h"
#include "nftsignal/error.h"
#include "nftsignal/io.h"
#include "nftsignal/text_clean.h"

namespace nftsignal {
namespace {

using json = nlohmann::json;

bool ScoreOrder(const WordScore& a, const WordScore& b) {
  if (a.tfidf != b.tfidf) return a.tfidf > b.tfidf;
  return a.word < b.word;
}

}  // namespace

void TfidfConfig::Validate() const {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ConfigError("tfidf p must lie in (0, 1], got " + io::FormatDouble(p));
  }
  if (k < 1) throw ConfigError("tfidf k must be >= 1");
}

Eigen::Index FeatureMatrix::ColumnOf(std::string_view word) const {
  const auto it = std::lower_bound(vocab.begin(), vocab.end(), word);
  if (it == vocab.end() || *it != word) return -1;
  return static_cast<Eigen::Index>(it - vocab.begin());
}

std::vector<std::string> PosFilter(std::string_view text,
                                   const PosTagger& tagger) {
  const std::vector<std::string> tokens = Tokenize(text);
  const std::vector<PosTag> tags = tagger.Tag(tokens);
  if (tags.size() != tokens.size()) {
    throw std::logic_error("tagger returned " + std::to_string(tags.size()) +
                           " tags for " + std::to_string(tokens.size()) +
                           " tokens");
  }
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tags[i] == PosTag::kNoun || tags[i] == PosTag::kVerb) {
      kept.push_back(AsciiLower(tokens[i]));
    }
  }
  return kept;
}

TokenizedDoc ExtractFrameTokens(int frame_index,
                                std::span<const std::string> tweet_texts,
                                const PosTagger& tagger) {
  TokenizedDoc doc;
  doc.frame_index = frame_index;
  for (const auto& text : tweet_texts) {
    auto words = PosFilter(StripLinksTagsEmoji(text), tagger);
    doc.tokens.insert(doc.tokens.end(), std::make_move_iterator(words.begin()),
                      std::make_move_iterator(words.end()));
  }
  return doc;
}

std::vector<TokenizedDoc> BuildCorpus(std::span<const Tweet> tweets,
                                      const TimeframeSeries& sale_frames,
                                      const PosTagger& tagger) {
  using std::chrono::days;
  std::vector<std::vector<std::string>> texts(sale_frames.size());
  std::map<std::chrono::sys_days, std::size_t> row_of_start;
  for (std::size_t r = 0; r < sale_frames.size(); ++r) {
    row_of_start[sale_frames.frames[r].start] = r;
  }
  const days frame_len{sale_frames.frame_len_days};
  for (const auto& tweet : tweets) {
    const auto day = std::chrono::floor<days>(tweet.timestamp);
    auto it = row_of_start.upper_bound(day);
    if (it == row_of_start.begin()) continue;
    --it;
    if (day >= it->first + frame_len) continue;  // frame without sales
    texts[it->second].push_back(tweet.text);
  }
  std::vector<TokenizedDoc> corpus;
  corpus.reserve(sale_frames.size());
  for (std::size_t r = 0; r < sale_frames.size(); ++r) {
    corpus.push_back(ExtractFrameTokens(sale_frames.frames[r].index, texts[r],
                                        tagger));
  }
  return corpus;
}

TfidfIndex::TfidfIndex(std::span<const TokenizedDoc> corpus,
                       const TfidfConfig& config)
    : config_(config) {
  config_.Validate();
  counts_.reserve(corpus.size());
  lengths_.reserve(corpus.size());
  for (const auto& doc : corpus) {
    auto& counts = counts_.emplace_back();
    for (const auto& token : doc.tokens) ++counts[token];
    lengths_.push_back(doc.tokens.size());
    for (const auto& [word, count] : counts) {
      const double relative =
          static_cast<double>(count) / static_cast<double>(doc.tokens.size());
      if (relative >= config_.p) ++containment_[word];
    }
  }
}

int TfidfIndex::Containment(std::string_view word) const {
  const auto it = containment_.find(std::string(word));
  return std::max(1, it == containment_.end() ? 0 : it->second);
}

WordScore TfidfIndex::Score(std::string_view word, std::size_t frame) const {
  const auto& counts = counts_.at(frame);
  const auto it = counts.find(std::string(word));
  if (it == counts.end()) {
    throw std::invalid_argument("word '" + std::string(word) +
                                "' does not occur in frame " +
                                std::to_string(frame));
  }
  WordScore score;
  score.word = std::string(word);
  score.tf =
      static_cast<double>(it->second) / static_cast<double>(lengths_[frame]);
  score.containment = Containment(word);
  score.idf = std::log(static_cast<double>(counts_.size()) /
                       static_cast<double>(score.containment));
  score.tfidf = score.tf * score.idf;
  return score;
}

std::vector<WordScore> TfidfIndex::EventWords(std::size_t frame) const {
  std::vector<WordScore> scores;
  for (const auto& entry : counts_.at(frame)) {
    scores.push_back(Score(entry.first, frame));
  }
  std::sort(scores.begin(), scores.end(), ScoreOrder);
  if (scores.size() > static_cast<std::size_t>(config_.k)) {
    scores.resize(static_cast<std::size_t>(config_.k));
  }
  return scores;
}

WordScore TfidfScore(std::string_view word, const TokenizedDoc& frame,
                     std::span<const TokenizedDoc> corpus,
                     const TfidfConfig& config) {
  config.Validate();
  if (corpus.empty()) throw std::invalid_argument("corpus is empty");
  const auto relative_frequency = [&](const TokenizedDoc& doc) {
    if (doc.tokens.empty()) return 0.0;
    const auto count = std::count(doc.tokens.begin(), doc.tokens.end(), word);
    return static_cast<double>(count) / static_cast<double>(doc.tokens.size());
  };
  const auto count = std::count(frame.tokens.begin(), frame.tokens.end(), word);
  if (count == 0) {
    throw std::invalid_argument("word '" + std::string(word) +
                                "' does not occur in frame " +
                                std::to_string(frame.frame_index));
  }
  int contained = 0;
  for (const auto& doc : corpus) {
    if (relative_frequency(doc) >= config.p) ++contained;
  }
  WordScore score;
  score.word = std::string(word);
  score.tf = static_cast<double>(count) / static_cast<double>(frame.tokens.size());
  score.containment = std::max(1, contained);
  score.idf = std::log(static_cast<double>(corpus.size()) /
                       static_cast<double>(score.containment));
  score.tfidf = score.tf * score.idf;
  return score;
}

std::vector<WordScore> EventWords(const TokenizedDoc& frame,
                                  std::span<const TokenizedDoc> corpus,
                                  const TfidfConfig& config) {
  std::vector<std::string> distinct(frame.tokens.begin(), frame.tokens.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<WordScore> scores;
  scores.reserve(distinct.size());
  for (const auto& word : distinct) {
    scores.push_back(TfidfScore(word, frame, corpus, config));
  }
  std::sort(scores.begin(), scores.end(), ScoreOrder);
  if (scores.size() > static_cast<std::size_t>(config.k)) {
    scores.resize(static_cast<std::size_t>(config.k));
  }
  return scores;
}

FeatureMatrix BuildFeatureMatrix(std::span<const TokenizedDoc> corpus,
                                 const TfidfConfig& config) {
  FeatureMatrix matrix;
  if (corpus.empty()) {
    config.Validate();
    matrix.values.resize(0, 0);
    return matrix;
  }
  const TfidfIndex index(corpus, config);
  std::vector<std::vector<WordScore>> top(corpus.size());
  std::set<std::string> vocab;
  for (std::size_t r = 0; r < corpus.size(); ++r) {
    top[r] = index.EventWords(r);
    for (const auto& s : top[r]) vocab.insert(s.word);
  }
  matrix.vocab.assign(vocab.begin(), vocab.end());
  matrix.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(corpus.size()),
                                        static_cast<Eigen::Index>(vocab.size()));
  for (std::size_t r = 0; r < corpus.size(); ++r) {
    matrix.frame_indices.push_back(corpus[r].frame_index);
    for (const auto& s : top[r]) {
      matrix.values(static_cast<Eigen::Index>(r), matrix.ColumnOf(s.word)) =
          s.tfidf;
    }
  }
  return matrix;
}

OverlapReport OverlapDistribution(
    std::span<const std::set<std::string>> vocabs) {
  if (vocabs.size() < 2) {
    throw std::invalid_argument("overlap distribution needs >= 2 vocabularies");
  }
  OverlapReport report;
  report.num_vocabs = static_cast<int>(vocabs.size());
  for (const auto& vocab : vocabs) {
    for (const auto& word : vocab) ++report.project_count[word];
  }
  report.union_size = static_cast<int>(report.project_count.size());
  struct Range {
    const char* label;
    int lo, hi;
  };
  constexpr Range kRanges[] = {{"15-18", 15, 18}, {"10-14", 10, 14},
                               {"6-9", 6, 9},     {"2-5", 2, 5},
                               {"1", 1, 1}};
  report.buckets.push_back({"all", 0, 0.0});
  for (const auto& r : kRanges) report.buckets.push_back({r.label, 0, 0.0});
  for (const auto& [word, count] : report.project_count) {
    if (count == report.num_vocabs) {
      ++report.buckets[0].words;
      continue;
    }
    for (std::size_t b = 0; b < std::size(kRanges); ++b) {
      if (count >= kRanges[b].lo && count <= kRanges[b].hi) {
        ++report.buckets[b + 1].words;
        break;
      }
    }
  }
  for (auto& bucket : report.buckets) {
    bucket.share = report.union_size == 0
                       ? 0.0
                       : static_cast<double>(bucket.words) /
                             static_cast<double>(report.union_size);
  }
  return report;
}

std::string FeatureMatrixToCsv(const FeatureMatrix& matrix) {
  std::string out = csv::JoinRow(matrix.vocab) + "\n";
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    std::vector<std::string> row;
    row.reserve(static_cast<std::size_t>(matrix.cols()));
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      row.push_back(io::FormatDouble(matrix.values(r, c)));
    }
    out += csv::JoinRow(row) + "\n";
  }
  return out;
}

std::string FeatureSidecarJson(const FeatureMatrix& matrix,
                               const TfidfConfig& config) {
  json frames = json::array();
  for (std::size_t r = 0; r < matrix.frame_indices.size(); ++r) {
    json frame = {{"row", r}, {"frame_index", matrix.frame_indices[r]}};
    if (r < matrix.frame_dates.size()) {
      frame["start_date"] = matrix.frame_dates[r];
    }
    frames.push_back(frame);
  }
  const json doc = {
      {"config", {{"p", config.p}, {"k", config.k}, {"log_base", "e"}}},
      {"vocab", matrix.vocab},
      {"frames", frames},
  };
  return doc.dump(2) + "\n";
}

FeatureMatrix FeatureMatrixFromFiles(const std::string& csv_text,
                                     const std::string& sidecar_json) {
  FeatureMatrix matrix;
  json doc;
  try {
    doc = json::parse(sidecar_json);
    matrix.vocab = doc.at("vocab").get<std::vector<std::string>>();
    for (const auto& frame : doc.at("frames")) {
      matrix.frame_indices.push_back(frame.at("frame_index").get<int>());
      if (frame.contains("start_date")) {
        matrix.frame_dates.push_back(frame.at("start_date").get<std::string>());
      }
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed feature sidecar: ") + e.what());
  }
  std::istringstream in(csv_text);
  csv::Reader reader(in);
  std::vector<std::string> fields;
  std::vector<std::vector<double>> rows;
  if (reader.Next(fields)) {
    if (!(fields == matrix.vocab) &&
        !(matrix.vocab.empty() && fields.size() == 1 && fields[0].empty())) {
      throw DataError("feature CSV header does not match sidecar vocab", 1);
    }
  }
  while (reader.Next(fields)) {
    if (fields.size() != matrix.vocab.size()) {
      throw DataError("feature CSV row width differs from vocab size",
                      reader.line());
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      try {
        row.push_back(std::stod(f));
      } catch (const std::logic_error&) {
        throw DataError("non-numeric feature value '" + f + "'", reader.line());
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != matrix.frame_indices.size()) {
    throw DataError("feature CSV has " + std::to_string(rows.size()) +
                    " rows but sidecar lists " +
                    std::to_string(matrix.frame_indices.size()) + " frames");
  }
  matrix.values.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(matrix.vocab.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      matrix.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  return matrix;
}

}  // namespace nftsignal
