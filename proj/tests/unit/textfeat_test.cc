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

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nftsignal/error.h"

namespace nftsignal {
namespace {

std::vector<TokenizedDoc> HandCorpus() {
  return {{0, {"mint", "mint", "team"}},
          {1, {"team", "floor"}},
          {2, {"team", "sale"}}};
}

TEST(TfidfScore, MintInFirstFrame) {
  const auto corpus = HandCorpus();
  const auto s = TfidfScore("mint", corpus[0], corpus, {0.2, 10});
  EXPECT_NEAR(s.tf, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(s.containment, 1);
  EXPECT_NEAR(s.idf, std::log(3.0), 1e-12);
  EXPECT_NEAR(s.tfidf, 2.0 / 3.0 * std::log(3.0), 1e-12);
  EXPECT_NEAR(s.tfidf, 0.7324, 5e-5);
}

TEST(TfidfScore, UbiquitousWordScoresZero) {
  const auto corpus = HandCorpus();
  const auto s = TfidfScore("team", corpus[0], corpus, {0.2, 10});
  EXPECT_EQ(s.containment, 3);
  EXPECT_EQ(s.tfidf, 0.0);
}

TEST(TfidfScore, ThresholdRaisesIdf) {
  // At p = 0.9 no frame holds "team" at relative frequency >= 0.9; the
  // containment count is floored at 1, giving idf = ln(3/1).
  const auto corpus = HandCorpus();
  const auto s = TfidfScore("team", corpus[1], corpus, {0.9, 10});
  EXPECT_EQ(s.containment, 1);
  EXPECT_NEAR(s.idf, std::log(3.0), 1e-12);
  EXPECT_NEAR(s.tfidf, 0.5 * std::log(3.0), 1e-12);
}

TEST(TfidfScore, ConcentratedWordCountsOnlyDenseFrames) {
  // "mint" occurs in all four frames but reaches 50% only in the first two.
  const std::vector<TokenizedDoc> corpus = {
      {0, {"mint", "mint", "ape"}},
      {1, {"mint", "floor"}},
      {2, {"mint", "a1", "a2", "a3", "a4"}},
      {3, {"mint", "b1", "b2", "b3", "b4", "b5"}}};
  const auto dense = TfidfScore("mint", corpus[2], corpus, {0.5, 10});
  EXPECT_EQ(dense.containment, 2);
  EXPECT_NEAR(dense.idf, std::log(4.0 / 2.0), 1e-12);
  EXPECT_NEAR(dense.tfidf, 0.2 * std::log(2.0), 1e-12);
  const auto loose = TfidfScore("mint", corpus[2], corpus, {0.1, 10});
  EXPECT_EQ(loose.containment, 4);
  EXPECT_EQ(loose.tfidf, 0.0);
}

TEST(TfidfScore, AbsentWordRejected) {
  const auto corpus = HandCorpus();
  EXPECT_THROW(TfidfScore("sale", corpus[0], corpus, {0.2, 10}),
               std::invalid_argument);
}

TEST(TfidfConfig, Validates) {
  EXPECT_THROW((TfidfConfig{0.0, 10}).Validate(), ConfigError);
  EXPECT_THROW((TfidfConfig{1.5, 10}).Validate(), ConfigError);
  EXPECT_THROW((TfidfConfig{0.5, 0}).Validate(), ConfigError);
}

TEST(EventWords, KExceedingVocabularyReturnsAll) {
  const auto corpus = HandCorpus();
  EXPECT_EQ(EventWords(corpus[1], corpus, {0.2, 10}).size(), 2u);
}

TEST(EventWords, TopOneOfFirstFrame) {
  const auto corpus = HandCorpus();
  const auto top = EventWords(corpus[0], corpus, {0.2, 1});
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].word, "mint");
  EXPECT_NEAR(top[0].tfidf, 0.7324, 5e-5);
}

TEST(EventWords, TiesBreakLexicographically) {
  const std::vector<TokenizedDoc> corpus = {{0, {"mint", "floor"}},
                                            {1, {"other"}}};
  const auto top = EventWords(corpus[0], corpus, {0.1, 2});
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].tfidf, top[1].tfidf);
  EXPECT_EQ(top[0].word, "floor");
}

TEST(BuildFeatureMatrix, HandCorpusTopOne) {
  const auto m = BuildFeatureMatrix(HandCorpus(), {0.2, 1});
  EXPECT_EQ(m.rows(), 3);
  EXPECT_LE(m.vocab.size(), 3u);
  EXPECT_TRUE(std::is_sorted(m.vocab.begin(), m.vocab.end()));
  const auto mint = m.ColumnOf("mint");
  ASSERT_GE(mint, 0);
  EXPECT_NEAR(m.values(0, mint), 2.0 / 3.0 * std::log(3.0), 1e-12);
  EXPECT_EQ(m.values(1, mint), 0.0);
}

TEST(BuildFeatureMatrix, SingleFrameVocabIsMinOfKAndDistinct) {
  const std::vector<TokenizedDoc> one = {{0, {"a", "b", "c", "a"}}};
  EXPECT_EQ(BuildFeatureMatrix(one, {0.1, 2}).vocab.size(), 2u);
  EXPECT_EQ(BuildFeatureMatrix(one, {0.1, 10}).vocab.size(), 3u);
}

TEST(BuildFeatureMatrix, EntriesAreNonNegativeAndDeterministic) {
  const auto a = BuildFeatureMatrix(HandCorpus(), {0.3, 2});
  const auto b = BuildFeatureMatrix(HandCorpus(), {0.3, 2});
  EXPECT_EQ(a.vocab, b.vocab);
  EXPECT_EQ(a.values, b.values);
  EXPECT_GE(a.values.minCoeff(), 0.0);
}

TEST(BuildFeatureMatrix, EmptyCorpus) {
  EXPECT_EQ(BuildFeatureMatrix({}, {}).rows(), 0);
}

TEST(FeatureMatrixFiles, RoundTrip) {
  auto m = BuildFeatureMatrix(HandCorpus(), {0.2, 2});
  m.frame_dates = {"2022-01-01", "2022-01-03", "2022-01-05"};
  const TfidfConfig cfg{0.2, 2};
  const auto back =
      FeatureMatrixFromFiles(FeatureMatrixToCsv(m), FeatureSidecarJson(m, cfg));
  EXPECT_EQ(back.vocab, m.vocab);
  EXPECT_EQ(back.frame_indices, m.frame_indices);
  EXPECT_EQ(back.frame_dates, m.frame_dates);
  EXPECT_EQ(back.values, m.values);
}

std::vector<std::set<std::string>> Sets(
    std::initializer_list<std::set<std::string>> s) {
  return s;
}

int BucketWords(const OverlapReport& r, const std::string& label) {
  for (const auto& b : r.buckets) {
    if (b.label == label) return b.words;
  }
  return -1;
}

TEST(Overlap, IdenticalSetsAreAllInAll) {
  const auto r = OverlapDistribution(Sets({{"a", "b"}, {"a", "b"}}));
  EXPECT_EQ(BucketWords(r, "all"), 2);
  EXPECT_DOUBLE_EQ(r.buckets[0].share, 1.0);
}

TEST(Overlap, HandCounts) {
  const auto r = OverlapDistribution(Sets({{"a", "b"}, {"b", "c"}, {"b"}}));
  EXPECT_EQ(r.project_count.at("b"), 3);
  EXPECT_EQ(r.project_count.at("a"), 1);
  EXPECT_EQ(BucketWords(r, "all"), 1);
  EXPECT_EQ(BucketWords(r, "1"), 2);
  for (const auto& b : r.buckets) {
    if (b.label == "all") { EXPECT_DOUBLE_EQ(b.share, 1.0 / 3.0); }
    if (b.label == "1") { EXPECT_DOUBLE_EQ(b.share, 2.0 / 3.0); }
  }
}

TEST(Overlap, BucketSchemeAndPrecedence) {
  std::vector<std::set<std::string>> v(19, std::set<std::string>{"everywhere"});
  for (int i = 0; i < 16; ++i) v[static_cast<std::size_t>(i)].insert("sixteen");
  v[0].insert("once");
  const auto r = OverlapDistribution(v);
  std::vector<std::string> labels;
  for (const auto& b : r.buckets) labels.push_back(b.label);
  EXPECT_EQ(labels,
            (std::vector<std::string>{"all", "15-18", "10-14", "6-9", "2-5", "1"}));
  EXPECT_EQ(BucketWords(r, "all"), 1);
  EXPECT_EQ(BucketWords(r, "15-18"), 1);
  EXPECT_EQ(BucketWords(r, "1"), 1);
}

TEST(Overlap, NeedsTwoVocabularies) {
  EXPECT_THROW(OverlapDistribution(Sets({{"a"}})), std::invalid_argument);
}

}  // namespace
}  // namespace nftsignal
