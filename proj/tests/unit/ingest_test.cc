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

#include "nftsignal/ingest.h"

#include <algorithm>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "nftsignal/error.h"
#include "nftsignal/io.h"

namespace nftsignal {
namespace {

namespace fs = std::filesystem;

class IngestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nftsignal_ingest_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path Write(const std::string& name, const std::string& content) {
    io::WriteFileAtomic(dir_ / name, content);
    return dir_ / name;
  }

  static std::string TweetLine(int id, const std::string& ts, int likes) {
    return "{\"id\": \"" + std::to_string(id) + "\", \"created_at\": \"" + ts +
           "\", \"text\": \"gm\", \"like_count\": " + std::to_string(likes) +
           "}\n";
  }

  fs::path dir_;
};

constexpr const char* kTxHeader =
    "address_from,address_to,token_id,transaction_hash,value_eth,"
    "block_timestamp\n";

TEST_F(IngestTest, LikeThresholdFiveKeepsTwo) {
  const auto path = Write("t.jsonl", TweetLine(1, "2022-01-01T00:00:00Z", 0) +
                                         TweetLine(2, "2022-01-01T01:00:00Z", 4) +
                                         TweetLine(3, "2022-01-01T02:00:00Z", 5) +
                                         TweetLine(4, "2022-01-01T03:00:00Z", 9));
  ProjectManifest m;
  m.like_threshold = 5;
  const auto tweets = LoadTweets(path, m);
  ASSERT_EQ(tweets.size(), 2u);
  EXPECT_EQ(tweets[0].id, "3");
  EXPECT_EQ(tweets[1].id, "4");
}

TEST_F(IngestTest, ThresholdZeroKeepsEverything) {
  const auto path = Write("t.jsonl", TweetLine(1, "2022-01-01", 0) +
                                         TweetLine(2, "2022-01-02", 4));
  ProjectManifest m;
  m.like_threshold = 0;
  EXPECT_EQ(LoadTweets(path, m).size(), 2u);
}

TEST_F(IngestTest, DefaultThresholdsFollowOriginality) {
  EXPECT_EQ(DefaultLikeThreshold(Originality::kAuthentic), 5u);
  EXPECT_EQ(DefaultLikeThreshold(Originality::kCopycat), 1u);
}

TEST_F(IngestTest, BadTimestampCitesItsLine) {
  std::string content;
  for (int i = 1; i <= 6; ++i) content += TweetLine(i, "2022-01-01T00:00:00Z", 9);
  content += TweetLine(7, "yesterday", 9);
  const auto path = Write("t.jsonl", content);
  try {
    LoadTweets(path, ProjectManifest{});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 7u);
  }
}

TEST_F(IngestTest, EmptyResultWarns) {
  const auto path = Write("t.jsonl", TweetLine(1, "2022-01-01", 0));
  std::vector<std::string> warnings;
  EXPECT_TRUE(LoadTweets(path, ProjectManifest{}, &warnings).empty());
  EXPECT_EQ(warnings.size(), 1u);
}

TEST_F(IngestTest, DataWindowFiltersTweets) {
  const auto path = Write("t.jsonl", TweetLine(1, "2021-12-31T23:59:59Z", 9) +
                                         TweetLine(2, "2022-01-01T00:00:00Z", 9));
  ProjectManifest m;
  m.window_start = ParseTimestamp("2022-01-01");
  const auto tweets = LoadTweets(path, m);
  ASSERT_EQ(tweets.size(), 1u);
  EXPECT_EQ(tweets[0].id, "2");
}

TEST_F(IngestTest, TimestampOffsetsNormalizeToUtc) {
  EXPECT_EQ(ParseTimestamp("2022-01-01T05:00:00+05:00"),
            ParseTimestamp("2022-01-01T00:00:00Z"));
  EXPECT_EQ(ParseTimestamp("2022-01-01 00:00:00 UTC"),
            ParseTimestamp("2022-01-01"));
  EXPECT_FALSE(ParseTimestamp("2022-02-30"));
}

TEST_F(IngestTest, ThreeRowCsvGivesThreeSortedTransactions) {
  const auto path = Write("tx.csv", std::string(kTxHeader) +
                                        "a,b,1,h1,1.5,2022-01-03T00:00:00Z\n"
                                        "a,b,2,h2,0,2022-01-01T00:00:00Z\n"
                                        "a,b,3,h3,2,2022-01-02T00:00:00Z\n");
  const auto txs = LoadTransactions(path);
  ASSERT_EQ(txs.size(), 3u);
  auto sorted = txs;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return x.timestamp < y.timestamp;
  });
  EXPECT_EQ(txs, sorted);
  EXPECT_EQ(txs[0].token_id, "2");
  EXPECT_FALSE(txs[0].is_sale());
}

TEST_F(IngestTest, NegativeValueNamesTheRow) {
  const auto path = Write("tx.csv", std::string(kTxHeader) +
                                        "a,b,1,h1,1.5,2022-01-03\n"
                                        "a,b,2,h2,-1,2022-01-01\n");
  try {
    LoadTransactions(path);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST_F(IngestTest, DuplicateHashTokenPairRejected) {
  const auto path = Write("tx.csv", std::string(kTxHeader) +
                                        "a,b,1,h1,1.5,2022-01-03\n"
                                        "a,b,1,h1,1.5,2022-01-03\n");
  EXPECT_THROW(LoadTransactions(path), DataError);
}

Transaction Tx(std::string hash, std::string token, double value) {
  Transaction t;
  t.tx_hash = std::move(hash);
  t.token_id = std::move(token);
  t.value_eth = value;
  return t;
}

TEST(SplitMultiNft, TwoTokensShareTheTotal) {
  const auto out = SplitMultiNftValues(
      std::vector<Transaction>{Tx("h", "1", 3.0), Tx("h", "2", 0.0)});
  EXPECT_DOUBLE_EQ(out[0].value_eth, 1.5);
  EXPECT_DOUBLE_EQ(out[1].value_eth, 1.5);
}

TEST(SplitMultiNft, SingleTokenUnchanged) {
  const auto out = SplitMultiNftValues(std::vector<Transaction>{Tx("h", "1", 2.7)});
  EXPECT_EQ(out[0].value_eth, 2.7);
}

TEST(SplitMultiNft, ZeroValueBundleStaysZero) {
  const auto out = SplitMultiNftValues(std::vector<Transaction>{
      Tx("h", "1", 0.0), Tx("h", "2", 0.0), Tx("h", "3", 0.0)});
  for (const auto& t : out) EXPECT_EQ(t.value_eth, 0.0);
}

TEST(SplitMultiNft, TotalsPerHashAreConserved) {
  const std::vector<Transaction> in = {Tx("a", "1", 0.3), Tx("b", "1", 1.0),
                                       Tx("a", "2", 0.4), Tx("a", "3", 0.0)};
  const auto out = SplitMultiNftValues(in);
  EXPECT_NEAR(out[0].value_eth + out[2].value_eth + out[3].value_eth, 0.7, 1e-15);
  EXPECT_EQ(out[1].value_eth, 1.0);
  EXPECT_EQ(out[2].token_id, "2");  // order preserved
}

TEST_F(IngestTest, ManifestRoundTrip) {
  const auto path = Write("m.json", R"({
    "name": "Copy Punks", "originality": "copycat", "frame_len_days": 2,
    "markov_window": 5, "data_start": "2022-01-01", "tweets": "t.jsonl",
    "transactions": "tx.csv"})");
  const auto m = LoadManifest(path);
  EXPECT_EQ(m.name, "Copy Punks");
  EXPECT_EQ(m.originality, Originality::kCopycat);
  EXPECT_EQ(m.like_threshold, 1u);
  EXPECT_EQ(m.markov_window, 5);
  EXPECT_EQ(m.tweets_path, dir_ / "t.jsonl");
  const auto again = LoadManifest(Write("m2.json", ManifestToJson(m)));
  EXPECT_EQ(again.window_start, m.window_start);
  EXPECT_EQ(again.frame_len_days, 2);
}

TEST_F(IngestTest, ManifestRejectsUnknownOriginality) {
  const auto path = Write("m.json",
                          R"({"name": "x", "originality": "fake", "tweets": "a",
                              "transactions": "b"})");
  EXPECT_THROW(LoadManifest(path), ConfigError);
}

}  // namespace
}  // namespace nftsignal
