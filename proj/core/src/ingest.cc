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
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>
#include <utility>

#include <fmt/format.h>

#include "json.hpp"
#include "nftsignal/csv.h"
#include "nftsignal/error.h"
#include "nftsignal/io.h"

namespace nftsignal {
namespace {

using json = nlohmann::json;
using namespace std::chrono;

constexpr std::string_view kTransactionHeader[] = {
    "address_from",     "address_to", "token_id",
    "transaction_hash", "value_eth",  "block_timestamp"};

bool ParseFixedInt(std::string_view text, std::size_t pos, std::size_t width,
                   int& out) {
  if (pos + width > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
    value = value * 10 + (text[i] - '0');
  }
  out = value;
  return true;
}

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return std::string(s.substr(begin, end - begin + 1));
}

std::string JsonIdToString(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  throw std::invalid_argument("id must be a string or integer");
}

}  // namespace

std::optional<Timestamp> ParseTimestamp(std::string_view text) {
  const std::string trimmed = Trim(text);
  std::string_view s = trimmed;
  int y, mo, d;
  if (!ParseFixedInt(s, 0, 4, y) || s.size() < 10 || s[4] != '-' ||
      !ParseFixedInt(s, 5, 2, mo) || s[7] != '-' ||
      !ParseFixedInt(s, 8, 2, d)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  Timestamp result{sys_days{ymd}};
  if (s.size() == 10) return result;

  if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
  int hh, mm, ss = 0;
  if (!ParseFixedInt(s, 11, 2, hh) || s.size() < 16 || s[13] != ':' ||
      !ParseFixedInt(s, 14, 2, mm)) {
    return std::nullopt;
  }
  std::size_t pos = 16;
  if (pos < s.size() && s[pos] == ':') {
    if (!ParseFixedInt(s, pos + 1, 2, ss)) return std::nullopt;
    pos += 3;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
    ++pos;
    const std::size_t digits_start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == digits_start) return std::nullopt;
  }
  result += hours{hh} + minutes{mm} + seconds{ss};

  std::string_view zone = s.substr(pos);
  while (!zone.empty() && zone.front() == ' ') zone.remove_prefix(1);
  if (zone.empty() || zone == "Z" || zone == "z" || zone == "UTC" ||
      zone == "+00:00") {
    return result;
  }
  if (zone.front() == '+' || zone.front() == '-') {
    int oh, om = 0;
    if (!ParseFixedInt(zone, 1, 2, oh)) return std::nullopt;
    std::size_t zpos = 3;
    if (zpos < zone.size() && zone[zpos] == ':') ++zpos;
    if (zpos < zone.size()) {
      if (!ParseFixedInt(zone, zpos, 2, om)) return std::nullopt;
      zpos += 2;
    }
    if (zpos != zone.size() || oh > 23 || om > 59) return std::nullopt;
    const seconds offset = hours{oh} + minutes{om};
    // Local time = UTC + offset.
    return zone.front() == '+' ? result - offset : result + offset;
  }
  return std::nullopt;
}

std::string FormatTimestamp(Timestamp t) {
  const sys_days day_part = floor<days>(t);
  const hh_mm_ss<seconds> tod{t - day_part};
  return fmt::format("{}T{:02}:{:02}:{:02}Z", FormatDate(day_part),
                     tod.hours().count(), tod.minutes().count(),
                     tod.seconds().count());
}

std::string FormatDate(sys_days d) {
  const year_month_day ymd{d};
  return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()));
}

std::string_view ToString(Originality o) {
  return o == Originality::kAuthentic ? "authentic" : "copycat";
}

std::uint64_t DefaultLikeThreshold(Originality o) {
  return o == Originality::kAuthentic ? 5 : 1;
}

ProjectManifest LoadManifest(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(io::ReadFile(path));
  } catch (const json::exception& e) {
    throw ConfigError("manifest " + path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const auto base = path.parent_path();
  const auto context = [&](const std::string& what) {
    return ConfigError("manifest " + path.string() + ": " + what);
  };
  ProjectManifest m;
  try {
    m.name = doc.at("name").get<std::string>();
    m.contract_address = doc.value("contract_address", "");
    m.twitter_handle = doc.value("twitter_handle", "");
    const std::string originality = doc.value("originality", "authentic");
    if (originality == "authentic") {
      m.originality = Originality::kAuthentic;
    } else if (originality == "copycat") {
      m.originality = Originality::kCopycat;
    } else {
      throw context("originality must be 'authentic' or 'copycat'");
    }
    if (doc.contains("like_threshold")) {
      const auto threshold = doc.at("like_threshold").get<std::int64_t>();
      if (threshold < 0) throw context("like_threshold must be >= 0");
      m.like_threshold = static_cast<std::uint64_t>(threshold);
    } else {
      m.like_threshold = DefaultLikeThreshold(m.originality);
    }
    m.frame_len_days = doc.value("frame_len_days", 3);
    m.markov_window = doc.value("markov_window", 3);
    if (m.frame_len_days < 1) throw context("frame_len_days must be >= 1");
    if (m.markov_window < 1) throw context("markov_window must be >= 1");
    for (auto [key, slot] : {std::pair{"data_start", &m.window_start},
                             std::pair{"data_end", &m.window_end}}) {
      if (!doc.contains(key)) continue;
      const auto parsed = ParseTimestamp(doc.at(key).get<std::string>());
      if (!parsed) throw context(std::string("unparseable ") + key);
      *slot = parsed;
    }
    m.tweets_path = base / doc.at("tweets").get<std::string>();
    m.transactions_path = base / doc.at("transactions").get<std::string>();
  } catch (const json::exception& e) {
    throw context(e.what());
  }
  if (m.name.empty()) throw context("name must not be empty");
  return m;
}

std::string ManifestToJson(const ProjectManifest& m) {
  json doc = {
      {"name", m.name},
      {"contract_address", m.contract_address},
      {"twitter_handle", m.twitter_handle},
      {"originality", std::string(ToString(m.originality))},
      {"like_threshold", m.like_threshold},
      {"frame_len_days", m.frame_len_days},
      {"markov_window", m.markov_window},
      {"tweets", m.tweets_path.filename().string()},
      {"transactions", m.transactions_path.filename().string()},
  };
  if (m.window_start) doc["data_start"] = FormatTimestamp(*m.window_start);
  if (m.window_end) doc["data_end"] = FormatTimestamp(*m.window_end);
  return doc.dump(2) + "\n";
}

std::vector<Tweet> LoadTweets(const std::filesystem::path& path,
                              const ProjectManifest& manifest,
                              std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tweet archive " + path.string());
  std::vector<Tweet> tweets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Tweet tweet;
    try {
      const json record = json::parse(line);
      tweet.id = JsonIdToString(record.at("id"));
      const auto created = record.at("created_at").get<std::string>();
      const auto ts = ParseTimestamp(created);
      if (!ts) {
        throw DataError("unparseable created_at '" + created + "' in " +
                            path.string(),
                        line_no);
      }
      tweet.timestamp = *ts;
      tweet.text = record.at("text").get<std::string>();
      const json& likes = record.at("like_count");
      if (!likes.is_number_integer() || likes.get<std::int64_t>() < 0) {
        throw DataError("like_count must be a non-negative integer in " +
                            path.string(),
                        line_no);
      }
      tweet.like_count = likes.get<std::uint64_t>();
    } catch (const json::exception& e) {
      throw DataError("malformed tweet record in " + path.string() + ": " +
                          e.what(),
                      line_no);
    } catch (const std::invalid_argument& e) {
      throw DataError("malformed tweet record in " + path.string() + ": " +
                          e.what(),
                      line_no);
    }
    if (tweet.like_count < manifest.like_threshold) continue;
    if (!manifest.InWindow(tweet.timestamp)) continue;
    tweets.push_back(std::move(tweet));
  }
  std::stable_sort(tweets.begin(), tweets.end(),
                   [](const Tweet& a, const Tweet& b) {
                     return a.timestamp < b.timestamp;
                   });
  if (tweets.empty() && warnings != nullptr) {
    warnings->push_back("no tweets retained from " + path.string() +
                        " at like threshold " +
                        std::to_string(manifest.like_threshold));
  }
  return tweets;
}

std::vector<Transaction> LoadTransactions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open transaction log " + path.string());
  csv::Reader reader(in);
  std::vector<std::string> fields;
  if (!reader.Next(fields)) return {};

  std::vector<std::string> header;
  for (const auto& f : fields) header.push_back(Trim(f));
  std::array<std::size_t, 6> index{};
  for (std::size_t c = 0; c < 6; ++c) {
    const auto it = std::find(header.begin(), header.end(), kTransactionHeader[c]);
    if (it == header.end()) {
      throw DataError("transaction header missing column '" +
                          std::string(kTransactionHeader[c]) + "' in " +
                          path.string(),
                      reader.line());
    }
    index[c] = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<Transaction> out;
  std::set<std::pair<std::string, std::string>> seen;
  while (reader.Next(fields)) {
    const std::size_t row = reader.line();
    if (fields.size() != header.size()) {
      throw DataError(fmt::format("expected {} columns, found {} in {}",
                                  header.size(), fields.size(), path.string()),
                      row);
    }
    Transaction tx;
    tx.from_address = Trim(fields[index[0]]);
    tx.to_address = Trim(fields[index[1]]);
    tx.token_id = Trim(fields[index[2]]);
    tx.tx_hash = Trim(fields[index[3]]);
    const std::string value_text = Trim(fields[index[4]]);
    const char* first = value_text.data();
    const char* last = first + value_text.size();
    const auto [ptr, ec] = std::from_chars(first, last, tx.value_eth);
    if (value_text.empty() || ec != std::errc() || ptr != last ||
        !std::isfinite(tx.value_eth)) {
      throw DataError("invalid value_eth '" + value_text + "' in " +
                          path.string(),
                      row);
    }
    if (tx.value_eth < 0.0) {
      throw DataError("negative value_eth '" + value_text + "' rejected in " +
                          path.string(),
                      row);
    }
    const auto ts = ParseTimestamp(fields[index[5]]);
    if (!ts) {
      throw DataError("unparseable block_timestamp '" + fields[index[5]] +
                          "' in " + path.string(),
                      row);
    }
    tx.timestamp = *ts;
    if (!seen.emplace(tx.tx_hash, tx.token_id).second) {
      throw DataError("duplicate (transaction_hash, token_id) pair (" +
                          tx.tx_hash + ", " + tx.token_id + ") rejected in " +
                          path.string(),
                      row);
    }
    out.push_back(std::move(tx));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Transaction& a, const Transaction& b) {
                     return a.timestamp < b.timestamp;
                   });
  return out;
}

std::vector<Transaction> SplitMultiNftValues(
    std::span<const Transaction> transactions) {
  struct Group {
    double total = 0.0;
    std::size_t count = 0;
  };
  std::unordered_map<std::string, Group> groups;
  for (const auto& tx : transactions) {
    auto& g = groups[tx.tx_hash];
    g.total += tx.value_eth;
    ++g.count;
  }
  std::vector<Transaction> out(transactions.begin(), transactions.end());
  for (auto& tx : out) {
    const auto& g = groups.at(tx.tx_hash);
    tx.value_eth = g.total / static_cast<double>(g.count);
  }
  return out;
}

std::string TweetsToJsonl(std::span<const Tweet> tweets) {
  std::string out;
  for (const auto& t : tweets) {
    json record = {{"id", t.id},
                   {"created_at", FormatTimestamp(t.timestamp)},
                   {"text", t.text},
                   {"like_count", t.like_count}};
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

std::string TransactionsToCsv(std::span<const Transaction> transactions) {
  std::string out;
  std::vector<std::string> header(std::begin(kTransactionHeader),
                                  std::end(kTransactionHeader));
  out += csv::JoinRow(header) + "\n";
  for (const auto& tx : transactions) {
    out += csv::JoinRow({tx.from_address, tx.to_address, tx.token_id,
                         tx.tx_hash, io::FormatDouble(tx.value_eth),
                         FormatTimestamp(tx.timestamp)}) +
           "\n";
  }
  return out;
}

}  // namespace nftsignal
