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

#include "nftsignal/synth.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "nftsignal/csv.h"
#include "nftsignal/error.h"
#include "nftsignal/io.h"
#include "nftsignal/random.h"

namespace nftsignal {
namespace {

using std::chrono::days;
using std::chrono::seconds;
using std::chrono::sys_days;

constexpr double kPlantedOffset = 0.1;
constexpr double kTargetNoiseSd = 0.01;

const sys_days kFixtureEpoch{std::chrono::year{2022} / 1 / 1};

// Fixture vocabulary. Hype days draw from the first list, quiet days from
// the second; filler words appear on any day.
constexpr const char* kHypeWords[] = {"mint", "whitelist", "giveaway",
                                      "launch", "reveal", "airdrop"};
constexpr const char* kQuietWords[] = {"floor", "dump", "fud", "rug",
                                       "sellers", "panic"};
constexpr const char* kFillerWords[] = {"community", "holders", "artist",
                                        "collection", "roadmap", "wallet",
                                        "metaverse", "market"};
constexpr const char* kVerbs[] = {"join", "buy", "hold", "grab", "claim",
                                  "trade", "build", "watch"};
constexpr const char* kDecorations[] = {
    "", " https://t.co/x7Qm2", " @opensea", " #nft", " \xF0\x9F\x9A\x80",
    " \xF0\x9F\x94\xA5 #web3"};

template <std::size_t N>
const char* Pick(const char* const (&words)[N], CounterRng& rng) {
  return words[rng.Below(N)];
}

std::string HexId(CounterRng& rng, int hex_digits, std::uint64_t serial) {
  std::string out = "0x";
  while (static_cast<int>(out.size()) - 2 < hex_digits - 16) {
    out += fmt::format("{:016x}", rng.NextU64());
  }
  out += fmt::format("{:016x}", serial);
  out.resize(static_cast<std::size_t>(hex_digits) + 2);
  return out;
}

}  // namespace

void VarSpec::Validate() const {
  if (!(std::fabs(coupling) < 1.0)) throw ConfigError("|coupling| must be < 1");
  if (true_lag < 1) throw ConfigError("true_lag must be >= 1");
  if (length < 10 * true_lag) throw ConfigError("length must be >= 10 * true_lag");
  if (!(noise_sd > 0.0)) throw ConfigError("noise_sd must be positive");
}

VarPair GenVarPair(const VarSpec& spec) {
  spec.Validate();
  CounterRng x_rng(spec.seed, 0);
  CounterRng e_rng(spec.seed, 1);
  const auto n = static_cast<std::size_t>(spec.length);
  const auto lag = static_cast<std::size_t>(spec.true_lag);
  VarPair pair;
  pair.x.resize(n);
  pair.y.resize(n);
  for (auto& v : pair.x) v = x_rng.Normal();
  for (std::size_t t = 0; t < n; ++t) {
    const double noise = spec.noise_sd * e_rng.Normal();
    pair.y[t] = t >= lag ? spec.coupling * pair.x[t - lag] + noise : noise;
  }
  return pair;
}

std::string VarPairToCsv(const VarPair& pair) {
  std::string out = "t,x,y\n";
  for (std::size_t t = 0; t < pair.x.size(); ++t) {
    out += fmt::format("{},{},{}\n", t, io::FormatDouble(pair.x[t]),
                       io::FormatDouble(pair.y[t]));
  }
  return out;
}

void PlantedCorpusSpec::Validate() const {
  if (n_frames < 4) throw ConfigError("n_frames must be >= 4");
  if (vocab_size < 1) throw ConfigError("vocab_size must be >= 1");
  if (planted_word.empty()) throw ConfigError("planted_word must not be empty");
  if (!(effect_size >= 0.0)) throw ConfigError("effect_size must be >= 0");
  if (markov_window < 1) throw ConfigError("markov_window must be >= 1");
}

PlantedCorpus GenPlantedCorpus(const PlantedCorpusSpec& spec) {
  spec.Validate();
  std::vector<std::string> vocab = {spec.planted_word};
  for (int i = 0; static_cast<int>(vocab.size()) < spec.vocab_size; ++i) {
    std::string word = fmt::format("w{:03}", i);
    if (word != spec.planted_word) vocab.push_back(std::move(word));
  }
  std::sort(vocab.begin(), vocab.end());
  const auto planted = static_cast<Eigen::Index>(
      std::find(vocab.begin(), vocab.end(), spec.planted_word) - vocab.begin());

  const Eigen::Index n = spec.n_frames;
  const auto width = static_cast<Eigen::Index>(vocab.size());
  PlantedCorpus out;
  out.matrix.vocab = vocab;
  out.matrix.values = Eigen::MatrixXd::Zero(n, width);

  // Exactly half the frames contain the planted word, which fixes label
  // balance whenever the effect dominates the noise.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  CounterRng presence_rng(spec.seed, 0);
  Shuffle(std::span(order), presence_rng);
  std::vector<bool> present(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n / 2; ++i) {
    present[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
  }

  CounterRng value_rng(spec.seed, 1);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < width; ++c) {
      const bool on = c == planted ? present[static_cast<std::size_t>(r)]
                                   : value_rng.Uniform() < 0.5;
      const double value = value_rng.Uniform(0.2, 0.4);
      if (on) out.matrix.values(r, c) = value;
    }
  }

  CounterRng noise_rng(spec.seed, 2);
  out.target.markov_window = spec.markov_window;
  for (Eigen::Index r = 0; r < n; ++r) {
    const int frame = static_cast<int>(r);
    out.matrix.frame_indices.push_back(frame);
    out.matrix.frame_dates.push_back(FormatDate(kFixtureEpoch + days{frame}));
    const double x = out.matrix.values(r, planted);
    out.target.values.push_back(
        {frame, 1.0 + spec.effect_size * (x - kPlantedOffset) +
                    kTargetNoiseSd * noise_rng.Normal()});
  }
  return out;
}

std::string TargetToCsv(const NormalizedTarget& target) {
  std::string out = "index,value\n";
  for (const auto& v : target.values) {
    out += fmt::format("{},{}\n", v.index, io::FormatDouble(v.value));
  }
  return out;
}

NormalizedTarget TargetFromCsv(const std::string& text, int markov_window) {
  std::istringstream in(text);
  csv::Reader reader(in);
  std::vector<std::string> fields;
  NormalizedTarget target;
  target.markov_window = markov_window;
  if (!reader.Next(fields)) return target;
  while (reader.Next(fields)) {
    if (fields.size() != 2) {
      throw DataError("target CSV row must have 2 columns", reader.line());
    }
    try {
      target.values.push_back({std::stoi(fields[0]), std::stod(fields[1])});
    } catch (const std::logic_error&) {
      throw DataError("malformed target CSV row", reader.line());
    }
  }
  return target;
}

ProjectFixture GenProjectFixture(const ProjectFixtureSpec& spec) {
  if (spec.days < 10) throw ConfigError("fixture needs at least 10 days");
  ProjectFixture fx;
  auto& m = fx.manifest;
  m.name = spec.name;
  m.originality = spec.originality;
  m.like_threshold = DefaultLikeThreshold(spec.originality);
  m.frame_len_days = spec.frame_len_days;
  m.markov_window = spec.markov_window;
  m.window_start = kFixtureEpoch;
  m.window_end = kFixtureEpoch + days{spec.days} - seconds{1};
  m.tweets_path = "tweets.jsonl";
  m.transactions_path = "transactions.csv";

  CounterRng hype_rng(spec.seed, 0);
  CounterRng tweet_rng(spec.seed, 1);
  CounterRng tx_rng(spec.seed, 2);
  m.contract_address = HexId(tx_rng, 40, spec.seed);
  m.twitter_handle = "synthetic_" + std::to_string(spec.seed);

  std::vector<double> hype(static_cast<std::size_t>(spec.days));
  double h = 0.0;
  for (auto& v : hype) {
    h = 0.6 * h + hype_rng.Normal();
    v = h;
  }

  std::uint64_t tweet_serial = 1'000'000;
  std::uint64_t tx_serial = 1;
  std::uint64_t token_serial = 1;
  for (int d = 0; d < spec.days; ++d) {
    const double hd = hype[static_cast<std::size_t>(d)];
    const sys_days day = kFixtureEpoch + days{d};
    const int n_tweets = std::max(1, static_cast<int>(std::lround(8 + 4 * hd)));
    for (int k = 0; k < n_tweets; ++k) {
      const char* event = hd > 0.3    ? Pick(kHypeWords, tweet_rng)
                          : hd < -0.3 ? Pick(kQuietWords, tweet_rng)
                                      : Pick(kFillerWords, tweet_rng);
      Tweet t;
      t.id = std::to_string(tweet_serial++);
      t.timestamp = day + seconds{tweet_rng.Below(86400)};
      t.text = fmt::format("{} {} {} {}{}", Pick(kVerbs, tweet_rng), event,
                           Pick(kFillerWords, tweet_rng), event,
                           Pick(kDecorations, tweet_rng));
      t.like_count = tweet_rng.Below(40);
      fx.tweets.push_back(std::move(t));
    }

    // Prices follow the previous day's hype.
    const double lead = d > 0 ? hype[static_cast<std::size_t>(d - 1)] : 0.0;
    const double price = std::exp(0.25 * lead + 0.05 * tx_rng.Normal());
    const int n_sales = 1 + static_cast<int>(tx_rng.Below(4));
    const auto add = [&](const std::string& hash, double value) {
      Transaction tx;
      tx.from_address = HexId(tx_rng, 40, token_serial);
      tx.to_address = HexId(tx_rng, 40, token_serial + 1);
      tx.token_id = std::to_string(token_serial++);
      tx.tx_hash = hash;
      tx.value_eth = value;
      tx.timestamp = day + seconds{tx_rng.Below(86400)};
      fx.transactions.push_back(std::move(tx));
    };
    for (int s = 0; s < n_sales; ++s) {
      add(HexId(tx_rng, 64, tx_serial++), price * tx_rng.Uniform(0.9, 1.1));
    }
    add(HexId(tx_rng, 64, tx_serial++), 0.0);  // transfer
    if (d % 5 == 0) {
      // Bundle of three tokens; the transaction value sits on one row.
      const std::string hash = HexId(tx_rng, 64, tx_serial++);
      add(hash, 3.0 * price);
      add(hash, 0.0);
      add(hash, 0.0);
    }
  }
  return fx;
}

std::filesystem::path WriteProjectFixture(const ProjectFixture& fixture,
                                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  io::WriteFileAtomic(dir / "tweets.jsonl", TweetsToJsonl(fixture.tweets));
  io::WriteFileAtomic(dir / "transactions.csv",
                      TransactionsToCsv(fixture.transactions));
  const auto manifest_path = dir / "manifest.json";
  io::WriteFileAtomic(manifest_path, ManifestToJson(fixture.manifest));
  return manifest_path;
}

}  // namespace nftsignal
