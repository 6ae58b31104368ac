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

// Permutation (mean decrease accuracy) feature importance and kernel density
// profiles of where words occur across timeframes.
#ifndef NFTSIGNAL_IMPORTANCE_H_
#define NFTSIGNAL_IMPORTANCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nftsignal/model.h"
#include "nftsignal/textfeat.h"

namespace nftsignal {

enum class MdaMetric {
  kAccuracy,  // importance = accuracy(baseline) - accuracy(permuted)
  kMae,       // importance = MAE(permuted) - MAE(baseline)
};

struct MdaOptions {
  int repeats = 5;
  std::uint64_t seed = 0;
  MdaMetric metric = MdaMetric::kAccuracy;
  // Negative control: score against a shuffled copy of the evaluation
  // target, which removes any real feature-target association.
  bool permute_labels = false;
  int threads = 1;
};

struct ImportanceScore {
  std::string word;
  double mean = 0.0;
  double variance = 0.0;  // population variance over the repeats
  int repeats = 0;
  std::vector<double> samples;
};

// Permutes each feature column of `eval` `repeats` times and records the
// metric degradation against the unpermuted baseline. Shuffle r of column j
// draws from CounterRng(seed, StreamId(j, r)), so results do not depend on
// thread count. `vocab` names the columns. Throws InsufficientDataError for
// fewer than 2 evaluation rows.
std::vector<ImportanceScore> Mda(const Mlp& network, const Dataset& eval,
                                 std::span<const std::string> vocab,
                                 const MdaOptions& options = {});

// Top k by mean descending and bottom k by mean ascending; ties by word.
std::pair<std::vector<ImportanceScore>, std::vector<ImportanceScore>>
TopBottom(std::span<const ImportanceScore> scores, int k = 20);

struct DensityProfile {
  std::string word;
  std::vector<double> grid;         // frame indices
  std::vector<double> raw_density;  // Gaussian KDE evaluated on the grid
  std::vector<double> density;      // raw_density / trapezoid integral
  double bandwidth = 0.0;
  int occurrences = 0;

  bool empty() const { return occurrences == 0; }
};

// Scott's rule, sigma * n^(-1/5) with the sample standard deviation. Falls
// back to 1 frame when fewer than two points or zero spread.
double ScottBandwidth(std::span<const double> points);

// Gaussian KDE over the frame indices where `word` has a nonzero entry,
// evaluated at every frame index of the matrix. A word with no occurrences
// gives an empty profile. Throws std::invalid_argument if `word` is not in
// the vocabulary.
DensityProfile KdeProfile(std::string_view word, const FeatureMatrix& matrix,
                          std::optional<double> bandwidth = std::nullopt);

// `word,mean,variance` rows: top list then bottom list.
std::string ImportanceToCsv(std::span<const ImportanceScore> top,
                            std::span<const ImportanceScore> bottom);

// Bar chart of means with +-1 standard deviation error bars.
std::string ImportanceChartSvg(std::span<const ImportanceScore> top,
                               std::span<const ImportanceScore> bottom,
                               std::string_view title);
std::string DensityProfileSvg(const DensityProfile& profile);

}  // namespace nftsignal

#endif  // NFTSIGNAL_IMPORTANCE_H_
