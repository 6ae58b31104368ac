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

// Event-word extraction: per-timeframe noun/verb documents scored with a
// containment-thresholded TF-IDF and vectorized over the union of every
// frame's top-k words.
#ifndef NFTSIGNAL_TEXTFEAT_H_
#define NFTSIGNAL_TEXTFEAT_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "nftsignal/ingest.h"
#include "nftsignal/pos_tagger.h"
#include "nftsignal/timeseries.h"

namespace nftsignal {

struct TokenizedDoc {
  int frame_index = 0;
  std::vector<std::string> tokens;
};

struct TfidfConfig {
  // Minimum within-frame relative frequency for a frame to count as
  // containing a word when computing idf. In (0, 1].
  double p = 0.01;
  // Words kept per frame.
  int k = 10;

  void Validate() const;
};

struct WordScore {
  std::string word;
  double tf = 0.0;
  double idf = 0.0;
  double tfidf = 0.0;
  // Number of frames whose relative frequency of the word is >= p, floored
  // at 1.
  int containment = 0;

  bool operator==(const WordScore&) const = default;
};

struct FeatureMatrix {
  // Sorted, duplicate-free union of per-frame top-k words.
  std::vector<std::string> vocab;
  // One entry per row.
  std::vector<int> frame_indices;
  std::vector<std::string> frame_dates;
  Eigen::MatrixXd values;  // rows x vocab.size()

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  // Column of `word`, or -1.
  Eigen::Index ColumnOf(std::string_view word) const;
};

// Tokens of `text` tagged NOUN or VERB by `tagger`, order-preserving and
// lowercased. `text` is tokenized with original case so the tagger sees it.
std::vector<std::string> PosFilter(std::string_view text,
                                   const PosTagger& tagger);

// Strips links, tags and emoji from every tweet in a frame and keeps its
// nouns and verbs.
TokenizedDoc ExtractFrameTokens(int frame_index,
                                std::span<const std::string> tweet_texts,
                                const PosTagger& tagger);

// Groups tweets by frame and returns one document per frame of
// `sale_frames` (the output of DropFramesWithoutSales), in order.
std::vector<TokenizedDoc> BuildCorpus(std::span<const Tweet> tweets,
                                      const TimeframeSeries& sale_frames,
                                      const PosTagger& tagger);

// Precomputed corpus statistics shared by every frame's scoring pass.
class TfidfIndex {
 public:
  TfidfIndex(std::span<const TokenizedDoc> corpus, const TfidfConfig& config);

  WordScore Score(std::string_view word, std::size_t frame) const;
  // Top-k scores of frame `frame`, tfidf descending, ties by word ascending.
  std::vector<WordScore> EventWords(std::size_t frame) const;

  std::size_t num_frames() const { return counts_.size(); }
  int Containment(std::string_view word) const;

 private:
  TfidfConfig config_;
  std::vector<std::unordered_map<std::string, int>> counts_;
  std::vector<std::size_t> lengths_;
  std::unordered_map<std::string, int> containment_;
};

// tf = count(word, frame) / |frame.tokens|; idf = ln(N / tfs(word, p));
// tfidf = tf * idf. Throws std::invalid_argument if the word does not occur
// in `frame`.
WordScore TfidfScore(std::string_view word, const TokenizedDoc& frame,
                     std::span<const TokenizedDoc> corpus,
                     const TfidfConfig& config);

std::vector<WordScore> EventWords(const TokenizedDoc& frame,
                                  std::span<const TokenizedDoc> corpus,
                                  const TfidfConfig& config);

// Row r is corpus[r]; entries are the tfidf of each vocab word that is among
// frame r's top-k, else 0. Empty corpus gives an empty matrix.
FeatureMatrix BuildFeatureMatrix(std::span<const TokenizedDoc> corpus,
                                 const TfidfConfig& config);

struct OverlapBucket {
  std::string label;  // "all", "15-18", "10-14", "6-9", "2-5", "1"
  int words = 0;
  double share = 0.0;
};

struct OverlapReport {
  int num_vocabs = 0;
  int union_size = 0;
  std::map<std::string, int> project_count;
  std::vector<OverlapBucket> buckets;
};

// For each word in the union of `vocabs`, the number of vocabularies that
// contain it, summarized into the buckets {all, 15-18, 10-14, 6-9, 2-5, 1}.
// "all" takes precedence over the numeric ranges. Requires >= 2 vocabularies.
OverlapReport OverlapDistribution(
    std::span<const std::set<std::string>> vocabs);

// CSV with the vocab as header and one row per frame.
std::string FeatureMatrixToCsv(const FeatureMatrix& matrix);
// JSON sidecar: config, vocab order and frame metadata.
std::string FeatureSidecarJson(const FeatureMatrix& matrix,
                               const TfidfConfig& config);
FeatureMatrix FeatureMatrixFromFiles(const std::string& csv_text,
                                     const std::string& sidecar_json);

}  // namespace nftsignal

#endif  // NFTSIGNAL_TEXTFEAT_H_
