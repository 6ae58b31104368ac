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

// Loading and validation of tweet archives, transaction exports and project
// manifests.
#ifndef NFTSIGNAL_INGEST_H_
#define NFTSIGNAL_INGEST_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nftsignal {

using Timestamp = std::chrono::sys_seconds;

// Parses ISO-8601 date-times ("2021-06-01T12:00:00Z", "...+02:00",
// "2021-06-01 12:00:00 UTC", "2021-06-01"). Fractional seconds are truncated.
// A missing offset means UTC. Returns nullopt when unparseable.
std::optional<Timestamp> ParseTimestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatTimestamp(Timestamp t);
// "YYYY-MM-DD".
std::string FormatDate(std::chrono::sys_days d);

struct Tweet {
  std::string id;
  Timestamp timestamp;
  std::string text;
  std::uint64_t like_count = 0;

  bool operator==(const Tweet&) const = default;
};

// A value of exactly 0 is a transfer; a positive value is a sale.
struct Transaction {
  std::string from_address;
  std::string to_address;
  std::string token_id;
  std::string tx_hash;
  double value_eth = 0.0;
  Timestamp timestamp;

  bool is_sale() const { return value_eth > 0.0; }
  bool operator==(const Transaction&) const = default;
};

enum class Originality { kAuthentic, kCopycat };

std::string_view ToString(Originality o);

// Tweets below this like count are dropped: 5 for authentic collections and 1
// for copycats.
std::uint64_t DefaultLikeThreshold(Originality o);

struct ProjectManifest {
  std::string name;
  std::string contract_address;
  std::string twitter_handle;
  Originality originality = Originality::kAuthentic;
  std::uint64_t like_threshold = 5;
  int frame_len_days = 3;
  int markov_window = 3;
  // Inclusive data window; records outside it are discarded on load.
  std::optional<Timestamp> window_start;
  std::optional<Timestamp> window_end;
  // Resolved against the manifest's directory.
  std::filesystem::path tweets_path;
  std::filesystem::path transactions_path;

  bool InWindow(Timestamp t) const {
    return (!window_start || t >= *window_start) &&
           (!window_end || t <= *window_end);
  }
};

// Reads a JSON manifest document. Throws ConfigError on missing or invalid
// fields.
ProjectManifest LoadManifest(const std::filesystem::path& path);
std::string ManifestToJson(const ProjectManifest& manifest);

// Reads a JSONL tweet archive (keys id, created_at, text, like_count) and keeps
// tweets with like_count >= manifest.like_threshold inside the manifest's data
// window, sorted ascending by timestamp (stable for ties). Malformed records
// raise DataError with the line number. An empty result appends a message to
// `warnings` when given.
std::vector<Tweet> LoadTweets(const std::filesystem::path& path,
                              const ProjectManifest& manifest,
                              std::vector<std::string>* warnings = nullptr);

// Reads a transaction CSV with header
// address_from,address_to,token_id,transaction_hash,value_eth,block_timestamp.
// Negative or non-finite values and duplicate (transaction_hash, token_id)
// pairs raise DataError naming the row. Output is sorted by timestamp.
std::vector<Transaction> LoadTransactions(const std::filesystem::path& path);

// Distributes the total value of every multi-token transaction equally across
// its k token records; totals per tx_hash are conserved and record order is
// unchanged.
std::vector<Transaction> SplitMultiNftValues(
    std::span<const Transaction> transactions);

// Canonical serializations, used by the `ingest` command.
std::string TweetsToJsonl(std::span<const Tweet> tweets);
std::string TransactionsToCsv(std::span<const Transaction> transactions);

}  // namespace nftsignal

#endif  // NFTSIGNAL_INGEST_H_
