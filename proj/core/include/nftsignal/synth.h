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

// Seeded synthetic data used as verification oracles: coupled series for the
// causality test, a feature matrix with one planted predictive word, and a
// small raw project (tweets, transactions, manifest) for end-to-end runs.
#ifndef NFTSIGNAL_SYNTH_H_
#define NFTSIGNAL_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nftsignal/ingest.h"
#include "nftsignal/textfeat.h"
#include "nftsignal/timeseries.h"

namespace nftsignal {

struct VarSpec {
  double coupling = 0.9;
  int true_lag = 1;
  int length = 200;
  double noise_sd = 0.1;
  std::uint64_t seed = 0;

  // Throws ConfigError unless |coupling| < 1, true_lag >= 1,
  // length >= 10 * true_lag and noise_sd > 0.
  void Validate() const;
};

struct VarPair {
  std::vector<double> x;
  std::vector<double> y;
};

// x_t ~ N(0, 1) i.i.d.; y_t = coupling * x_{t - true_lag} + e_t with
// e_t ~ N(0, noise_sd^2), and y_t = e_t for t < true_lag. x draws come from
// stream 0 and e from stream 1 of CounterRng(seed).
VarPair GenVarPair(const VarSpec& spec);

std::string VarPairToCsv(const VarPair& pair);

struct PlantedCorpusSpec {
  int n_frames = 200;
  int vocab_size = 30;
  std::string planted_word = "mint";
  double effect_size = 0.5;
  std::uint64_t seed = 0;
  int markov_window = 3;

  // effect_size 0 is accepted as the null case.
  void Validate() const;
};

struct PlantedCorpus {
  FeatureMatrix matrix;
  NormalizedTarget target;
};

// Every word occurs in a random half of the frames with a tfidf entry drawn
// from U(0.2, 0.4). The planted word occurs in exactly floor(n/2) frames and
// y'_i = 1 + effect_size * (x_i - 0.1) + N(0, 0.01^2), where x_i is its
// entry, so absent frames move down and present frames move up. Other
// columns are drawn independently of the target.
PlantedCorpus GenPlantedCorpus(const PlantedCorpusSpec& spec);

// `index,value` rows, one per target value.
std::string TargetToCsv(const NormalizedTarget& target);
NormalizedTarget TargetFromCsv(const std::string& text, int markov_window);

struct ProjectFixtureSpec {
  std::string name = "Synthetic Apes";
  int days = 240;
  int frame_len_days = 2;
  int markov_window = 3;
  std::uint64_t seed = 7;
  Originality originality = Originality::kAuthentic;
};

struct ProjectFixture {
  ProjectManifest manifest;
  std::vector<Tweet> tweets;
  std::vector<Transaction> transactions;
};

// A raw project whose daily tweet volume leads its sale prices by one day.
// Tweets mix event sentences with links, handles and emoji; transactions
// include transfers and multi-token sales.
ProjectFixture GenProjectFixture(const ProjectFixtureSpec& spec);

// Writes tweets.jsonl, transactions.csv and manifest.json into `dir` and
// returns the manifest path.
std::filesystem::path WriteProjectFixture(const ProjectFixture& fixture,
                                          const std::filesystem::path& dir);

}  // namespace nftsignal

#endif  // NFTSIGNAL_SYNTH_H_
