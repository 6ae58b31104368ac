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

// Fully connected regressor for the Markov-normalized price, trained with a
// direction-penalized mean absolute error.
//
// The loss over m samples is
//
//   L = (1/m) * sum_i delta_i * |y'_i - yhat_i|
//
// where delta_i = 1 when truth and prediction are both above 1 or both below
// 1, and 2 otherwise (including when either equals 1 exactly).
#ifndef NFTSIGNAL_MODEL_H_
#define NFTSIGNAL_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nftsignal/textfeat.h"
#include "nftsignal/timeseries.h"

namespace nftsignal {

struct MlpConfig {
  // Hidden layer widths from input to output. Empty gives a linear model.
  std::vector<int> hidden_units = {64, 256};
  int output_units = 1;
  std::uint64_t seed = 2022;
  double learning_rate = 1e-2;
  int epochs = 1000;
  int runs = 3;
  // 0 selects full-batch below kFullBatchRows training rows and 256 above.
  int batch_size = 0;

  static constexpr int kFullBatchRows = 1000;

  void Validate() const;
};

struct SplitSpec {
  // The latest (1 - train_fraction) of frames by date form the test set.
  double train_fraction = 0.8;
};

struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out

  bool operator==(const DenseLayer& o) const {
    return weights == o.weights && bias == o.bias;
  }
};

// Rectifier hidden layers and a linear output unit.
class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(std::vector<DenseLayer> layers);

  // Weights and biases drawn from U(-1/sqrt(fan_in), 1/sqrt(fan_in)) using
  // CounterRng(seed).
  static Mlp Initialize(int input_width, std::span<const int> hidden_units,
                        std::uint64_t seed);
  static Mlp Zeros(int input_width, std::span<const int> hidden_units);

  // Throws ShapeError on a width mismatch and DataError on non-finite input.
  double Forward(std::span<const double> features) const;
  // One prediction per row of `features`.
  Eigen::VectorXd Predict(const Eigen::MatrixXd& features) const;

  int input_width() const;
  std::vector<int> LayerSizes() const;
  std::size_t NumParameters() const;

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& mutable_layers() { return layers_; }

  bool operator==(const Mlp&) const = default;

 private:
  std::vector<DenseLayer> layers_;
};

// delta_i: 1 if both values are > 1 or both are < 1, otherwise 2.
double DirectionPenalty(double truth, double prediction);

// Throws ShapeError on a length mismatch or empty input.
double PenalizedMaeLoss(std::span<const double> truth,
                        std::span<const double> predictions);

// Gradients share the parameter layout of the network.
struct Gradients {
  std::vector<DenseLayer> layers;
};

// Gradient of PenalizedMaeLoss over the batch (rows of `features`) with
// respect to every parameter. delta_i is held fixed at its current value and
// the subgradient of |r| at r = 0 (and of the rectifier at 0) is taken as 0.
Gradients Backward(const Mlp& network, const Eigen::MatrixXd& features,
                   std::span<const double> truth);

// Feature rows paired with targets, in chronological order.
struct Dataset {
  Eigen::MatrixXd features;
  std::vector<double> target;
  std::vector<int> frame_index;

  std::size_t size() const { return target.size(); }
};

// Pairs every target value with the matrix row of the same frame index.
// Throws ShapeError when a target frame has no row.
Dataset AlignDataset(const FeatureMatrix& matrix,
                     const NormalizedTarget& target);

struct ChronologicalSplit {
  Dataset train;
  Dataset test;
};

// First floor(train_fraction * n) rows train, the rest test.
ChronologicalSplit SplitChronologically(const Dataset& data,
                                        const SplitSpec& split);

struct RunMetrics {
  double mae = 0.0;
  double accuracy = 0.0;
  double f1 = 0.0;
};

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation over runs
};

struct Metrics {
  MetricSummary mae;
  MetricSummary accuracy;
  MetricSummary f1;
  int n_train = 0;
  int n_test = 0;
  int runs = 0;
  std::vector<RunMetrics> per_run;
};

// Accuracy and binary F1 (class 1 = up-move is positive). F1 is 0 when there
// are no true or predicted positives.
double BinaryAccuracy(std::span<const int> truth, std::span<const int> pred);
double BinaryF1(std::span<const int> truth, std::span<const int> pred);

// MAE on the normalized scale plus accuracy and F1 after thresholding truth
// and prediction at 1. Throws InsufficientDataError on an empty set.
RunMetrics Evaluate(const Mlp& network, const Dataset& data);

Metrics Summarize(std::span<const RunMetrics> runs, int n_train, int n_test);

// Fits `network` in place with mini-batch gradient descent.
void Fit(Mlp& network, const Dataset& train, const MlpConfig& config,
         std::uint64_t seed);

struct TrainedModel {
  Mlp network;
  MlpConfig config;
  std::uint64_t seed = 0;  // config.seed + run
  int run = 0;
};

struct TrainResult {
  std::vector<TrainedModel> models;  // one per run
  Metrics metrics;
  ChronologicalSplit split;
};

// Chronological split, then `config.runs` independently seeded fits (seed +
// run) evaluated on the test split. Throws InsufficientDataError with fewer
// than 2 test rows or no training rows.
TrainResult Train(const FeatureMatrix& matrix, const NormalizedTarget& target,
                  const MlpConfig& config, const SplitSpec& split = {});
TrainResult Train(const Dataset& data, const MlpConfig& config,
                  const SplitSpec& split = {});

// Versioned JSON document: layer sizes, row-major weights, config and seed.
std::string ModelToJson(const TrainedModel& model);
TrainedModel ModelFromJson(const std::string& text);

}  // namespace nftsignal

#endif  // NFTSIGNAL_MODEL_H_
