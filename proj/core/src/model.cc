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

#include "nftsignal/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "nftsignal/error.h"
#include "nftsignal/random.h"
#include "nftsignal/stats.h"

namespace nftsignal {
namespace {

using json = nlohmann::json;

constexpr int kModelFormatVersion = 1;
constexpr int kDefaultMiniBatch = 256;

struct ForwardTrace {
  std::vector<Eigen::MatrixXd> pre;   // z_l, out x n
  std::vector<Eigen::MatrixXd> post;  // a_l; post[0] is the input
};

ForwardTrace RunForward(const std::vector<DenseLayer>& layers,
                        const Eigen::MatrixXd& inputs_by_column) {
  ForwardTrace trace;
  trace.post.push_back(inputs_by_column);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Eigen::MatrixXd z = layers[l].weights * trace.post.back();
    z.colwise() += layers[l].bias;
    const bool output = l + 1 == layers.size();
    Eigen::MatrixXd a = output ? z : Eigen::MatrixXd(z.cwiseMax(0.0));
    trace.pre.push_back(std::move(z));
    trace.post.push_back(std::move(a));
  }
  return trace;
}

double Sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

int ClampedLabel(double v) { return ToBinaryLabel(v); }

Dataset Slice(const Dataset& data, std::size_t begin, std::size_t end) {
  Dataset out;
  const auto rows = static_cast<Eigen::Index>(end - begin);
  out.features = data.features.middleRows(static_cast<Eigen::Index>(begin), rows);
  out.target.assign(data.target.begin() + static_cast<long>(begin),
                    data.target.begin() + static_cast<long>(end));
  out.frame_index.assign(data.frame_index.begin() + static_cast<long>(begin),
                         data.frame_index.begin() + static_cast<long>(end));
  return out;
}

json ConfigToJson(const MlpConfig& c) {
  return {{"hidden_units", c.hidden_units}, {"output_units", c.output_units},
          {"seed", c.seed},                 {"learning_rate", c.learning_rate},
          {"epochs", c.epochs},             {"runs", c.runs},
          {"batch_size", c.batch_size}};
}

MlpConfig ConfigFromJson(const json& j) {
  MlpConfig c;
  c.hidden_units = j.at("hidden_units").get<std::vector<int>>();
  c.output_units = j.at("output_units").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.epochs = j.at("epochs").get<int>();
  c.runs = j.at("runs").get<int>();
  c.batch_size = j.value("batch_size", 0);
  return c;
}

}  // namespace

void MlpConfig::Validate() const {
  for (int units : hidden_units) {
    if (units < 1) throw ConfigError("hidden layer sizes must be positive");
  }
  if (output_units != 1) throw ConfigError("output_units must be 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be positive");
  }
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (batch_size < 0) throw ConfigError("batch_size must be >= 0");
}

Mlp::Mlp(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (layers_[l].bias.size() != layers_[l].weights.rows()) {
      throw ShapeError("layer bias size differs from its output width");
    }
    if (l > 0 && layers_[l].weights.cols() != layers_[l - 1].weights.rows()) {
      throw ShapeError("consecutive layer widths do not match");
    }
  }
  if (!layers_.empty() && layers_.back().weights.rows() != 1) {
    throw ShapeError("output layer must have one unit");
  }
}

Mlp Mlp::Initialize(int input_width, std::span<const int> hidden_units,
                    std::uint64_t seed) {
  if (input_width < 1) throw ShapeError("input width must be positive");
  CounterRng rng(seed);
  std::vector<int> sizes = {input_width};
  sizes.insert(sizes.end(), hidden_units.begin(), hidden_units.end());
  sizes.push_back(1);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(sizes[l]));
    DenseLayer layer;
    layer.weights.resize(sizes[l + 1], sizes[l]);
    layer.bias.resize(sizes[l + 1]);
    // Row-major draw order keeps the stream layout independent of Eigen's
    // storage order.
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        layer.weights(r, c) = rng.Uniform(-bound, bound);
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      layer.bias(r) = rng.Uniform(-bound, bound);
    }
    layers.push_back(std::move(layer));
  }
  return Mlp(std::move(layers));
}

Mlp Mlp::Zeros(int input_width, std::span<const int> hidden_units) {
  std::vector<int> sizes = {input_width};
  sizes.insert(sizes.end(), hidden_units.begin(), hidden_units.end());
  sizes.push_back(1);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    layers.push_back({Eigen::MatrixXd::Zero(sizes[l + 1], sizes[l]),
                      Eigen::VectorXd::Zero(sizes[l + 1])});
  }
  return Mlp(std::move(layers));
}

int Mlp::input_width() const {
  return layers_.empty() ? 0 : static_cast<int>(layers_.front().weights.cols());
}

std::vector<int> Mlp::LayerSizes() const {
  std::vector<int> sizes;
  if (layers_.empty()) return sizes;
  sizes.push_back(input_width());
  for (const auto& layer : layers_) {
    sizes.push_back(static_cast<int>(layer.weights.rows()));
  }
  return sizes;
}

std::size_t Mlp::NumParameters() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    n += static_cast<std::size_t>(layer.weights.size() + layer.bias.size());
  }
  return n;
}

double Mlp::Forward(std::span<const double> features) const {
  if (static_cast<int>(features.size()) != input_width()) {
    throw ShapeError("expected " + std::to_string(input_width()) +
                     " features, got " + std::to_string(features.size()));
  }
  for (double v : features) {
    if (!std::isfinite(v)) throw DataError("feature vector contains NaN or inf");
  }
  const Eigen::Map<const Eigen::VectorXd> x(features.data(),
                                            static_cast<Eigen::Index>(features.size()));
  return RunForward(layers_, x).post.back()(0, 0);
}

Eigen::VectorXd Mlp::Predict(const Eigen::MatrixXd& features) const {
  if (features.cols() != input_width()) {
    throw ShapeError("expected " + std::to_string(input_width()) +
                     " feature columns, got " + std::to_string(features.cols()));
  }
  if (!features.allFinite()) {
    throw DataError("feature matrix contains NaN or inf");
  }
  return RunForward(layers_, features.transpose()).post.back().row(0).transpose();
}

double DirectionPenalty(double truth, double prediction) {
  const bool both_up = truth > 1.0 && prediction > 1.0;
  const bool both_down = truth < 1.0 && prediction < 1.0;
  return both_up || both_down ? 1.0 : 2.0;
}

double PenalizedMaeLoss(std::span<const double> truth,
                        std::span<const double> predictions) {
  if (truth.size() != predictions.size()) {
    throw ShapeError("truth and prediction lengths differ: " +
                     std::to_string(truth.size()) + " vs " +
                     std::to_string(predictions.size()));
  }
  if (truth.empty()) throw ShapeError("loss needs at least one sample");
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    sum += DirectionPenalty(truth[i], predictions[i]) *
           std::fabs(truth[i] - predictions[i]);
  }
  return sum / static_cast<double>(truth.size());
}

Gradients Backward(const Mlp& network, const Eigen::MatrixXd& features,
                   std::span<const double> truth) {
  if (static_cast<std::size_t>(features.rows()) != truth.size()) {
    throw ShapeError("batch rows differ from target length");
  }
  if (truth.empty()) throw ShapeError("empty batch");
  const auto& layers = network.layers();
  const ForwardTrace trace = RunForward(layers, features.transpose());
  const Eigen::Index n = features.rows();
  const Eigen::RowVectorXd yhat = trace.post.back().row(0);

  // dL/dz for the output layer.
  Eigen::MatrixXd delta(1, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = truth[static_cast<std::size_t>(i)];
    delta(0, i) = DirectionPenalty(t, yhat(i)) * Sign(yhat(i) - t) /
                  static_cast<double>(n);
  }
  Gradients grads;
  grads.layers.resize(layers.size());
  for (std::size_t l = layers.size(); l-- > 0;) {
    grads.layers[l].weights = delta * trace.post[l].transpose();
    grads.layers[l].bias = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd upstream = layers[l].weights.transpose() * delta;
    delta = upstream.cwiseProduct(
        (trace.pre[l - 1].array() > 0.0).cast<double>().matrix());
  }
  return grads;
}

Dataset AlignDataset(const FeatureMatrix& matrix,
                     const NormalizedTarget& target) {
  std::vector<Eigen::Index> row_of;
  for (std::size_t r = 0; r < matrix.frame_indices.size(); ++r) {
    const int f = matrix.frame_indices[r];
    if (f < 0) throw ShapeError("negative frame index in feature matrix");
    if (static_cast<std::size_t>(f) >= row_of.size()) {
      row_of.resize(static_cast<std::size_t>(f) + 1, -1);
    }
    row_of[static_cast<std::size_t>(f)] = static_cast<Eigen::Index>(r);
  }
  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(target.values.size()),
                       matrix.cols());
  for (std::size_t i = 0; i < target.values.size(); ++i) {
    const int f = target.values[i].index;
    if (f < 0 || static_cast<std::size_t>(f) >= row_of.size() ||
        row_of[static_cast<std::size_t>(f)] < 0) {
      throw ShapeError("target frame " + std::to_string(f) +
                       " has no feature row");
    }
    data.features.row(static_cast<Eigen::Index>(i)) =
        matrix.values.row(row_of[static_cast<std::size_t>(f)]);
    data.target.push_back(target.values[i].value);
    data.frame_index.push_back(f);
  }
  return data;
}

ChronologicalSplit SplitChronologically(const Dataset& data,
                                        const SplitSpec& split) {
  if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0, 1)");
  }
  for (std::size_t i = 1; i < data.frame_index.size(); ++i) {
    if (data.frame_index[i] <= data.frame_index[i - 1]) {
      throw DataError("dataset rows are not in chronological order");
    }
  }
  const auto n_train = static_cast<std::size_t>(
      std::floor(split.train_fraction * static_cast<double>(data.size())));
  return {Slice(data, 0, n_train), Slice(data, n_train, data.size())};
}

double BinaryAccuracy(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size()) throw ShapeError("label lengths differ");
  if (truth.empty()) throw InsufficientDataError("no labels to score");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) correct += truth[i] == pred[i];
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

double BinaryF1(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size()) throw ShapeError("label lengths differ");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (pred[i] == 1 && truth[i] == 1) ++tp;
    if (pred[i] == 1 && truth[i] == 0) ++fp;
    if (pred[i] == 0 && truth[i] == 1) ++fn;
  }
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

RunMetrics Evaluate(const Mlp& network, const Dataset& data) {
  if (data.size() == 0) throw InsufficientDataError("empty evaluation set");
  const Eigen::VectorXd pred = network.Predict(data.features);
  RunMetrics m;
  std::vector<int> truth_labels, pred_labels;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double p = pred(static_cast<Eigen::Index>(i));
    abs_sum += std::fabs(data.target[i] - p);
    truth_labels.push_back(ClampedLabel(data.target[i]));
    pred_labels.push_back(ClampedLabel(p));
  }
  m.mae = abs_sum / static_cast<double>(data.size());
  m.accuracy = BinaryAccuracy(truth_labels, pred_labels);
  m.f1 = BinaryF1(truth_labels, pred_labels);
  return m;
}

Metrics Summarize(std::span<const RunMetrics> runs, int n_train, int n_test) {
  Metrics metrics;
  metrics.n_train = n_train;
  metrics.n_test = n_test;
  metrics.runs = static_cast<int>(runs.size());
  metrics.per_run.assign(runs.begin(), runs.end());
  const auto summarize = [&](double RunMetrics::*field) {
    std::vector<double> values;
    for (const auto& r : runs) values.push_back(r.*field);
    return MetricSummary{stats::Mean(values),
                         std::sqrt(stats::Variance(values, 0))};
  };
  metrics.mae = summarize(&RunMetrics::mae);
  metrics.accuracy = summarize(&RunMetrics::accuracy);
  metrics.f1 = summarize(&RunMetrics::f1);
  return metrics;
}

void Fit(Mlp& network, const Dataset& train, const MlpConfig& config,
         std::uint64_t seed) {
  config.Validate();
  const auto n = static_cast<Eigen::Index>(train.size());
  if (n == 0) throw InsufficientDataError("no training rows");
  Eigen::Index batch = config.batch_size;
  if (batch == 0) {
    batch = n < MlpConfig::kFullBatchRows ? n : kDefaultMiniBatch;
  }
  batch = std::min(batch, n);
  CounterRng rng(seed, /*stream=*/1);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Eigen::MatrixXd batch_x;
  std::vector<double> batch_y;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (batch < n) Shuffle(std::span(order), rng);
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index size = std::min(batch, n - start);
      Gradients grads;
      if (batch == n) {
        grads = Backward(network, train.features, train.target);
      } else {
        batch_x.resize(size, train.features.cols());
        batch_y.resize(static_cast<std::size_t>(size));
        for (Eigen::Index i = 0; i < size; ++i) {
          const Eigen::Index row = order[static_cast<std::size_t>(start + i)];
          batch_x.row(i) = train.features.row(row);
          batch_y[static_cast<std::size_t>(i)] =
              train.target[static_cast<std::size_t>(row)];
        }
        grads = Backward(network, batch_x, batch_y);
      }
      auto& layers = network.mutable_layers();
      for (std::size_t l = 0; l < layers.size(); ++l) {
        layers[l].weights -= config.learning_rate * grads.layers[l].weights;
        layers[l].bias -= config.learning_rate * grads.layers[l].bias;
      }
    }
  }
}

TrainResult Train(const Dataset& data, const MlpConfig& config,
                  const SplitSpec& split) {
  config.Validate();
  TrainResult result;
  result.split = SplitChronologically(data, split);
  if (result.split.train.size() == 0) {
    throw InsufficientDataError("no training frames after the split");
  }
  if (result.split.test.size() < 2) {
    throw InsufficientDataError("need at least 2 test frames, got " +
                                std::to_string(result.split.test.size()));
  }
  const auto width = static_cast<int>(data.features.cols());
  if (width < 1) throw InsufficientDataError("feature matrix has no columns");
  std::vector<RunMetrics> runs;
  for (int run = 0; run < config.runs; ++run) {
    TrainedModel model;
    model.config = config;
    model.run = run;
    model.seed = config.seed + static_cast<std::uint64_t>(run);
    model.network = Mlp::Initialize(width, config.hidden_units, model.seed);
    Fit(model.network, result.split.train, config, model.seed);
    runs.push_back(Evaluate(model.network, result.split.test));
    result.models.push_back(std::move(model));
  }
  result.metrics = Summarize(runs, static_cast<int>(result.split.train.size()),
                             static_cast<int>(result.split.test.size()));
  return result;
}

TrainResult Train(const FeatureMatrix& matrix, const NormalizedTarget& target,
                  const MlpConfig& config, const SplitSpec& split) {
  return Train(AlignDataset(matrix, target), config, split);
}

std::string ModelToJson(const TrainedModel& model) {
  json layers = json::array();
  for (const auto& layer : model.network.layers()) {
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(layer.weights.size()));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        weights.push_back(layer.weights(r, c));
      }
    }
    std::vector<double> bias(layer.bias.data(),
                             layer.bias.data() + layer.bias.size());
    layers.push_back({{"rows", layer.weights.rows()},
                      {"cols", layer.weights.cols()},
                      {"weights", weights},
                      {"bias", bias}});
  }
  const json doc = {{"format", "nftsignal-mlp"},
                    {"version", kModelFormatVersion},
                    {"layer_sizes", model.network.LayerSizes()},
                    {"hidden_activation", "relu"},
                    {"output_activation", "linear"},
                    {"layers", layers},
                    {"config", ConfigToJson(model.config)},
                    {"seed", model.seed},
                    {"run", model.run}};
  return doc.dump(1) + "\n";
}

TrainedModel ModelFromJson(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != "nftsignal-mlp") {
      throw DataError("not an nftsignal model document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("unsupported model format version " +
                      std::to_string(version));
    }
    std::vector<DenseLayer> layers;
    for (const auto& l : doc.at("layers")) {
      const auto rows = l.at("rows").get<Eigen::Index>();
      const auto cols = l.at("cols").get<Eigen::Index>();
      const auto weights = l.at("weights").get<std::vector<double>>();
      const auto bias = l.at("bias").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(weights.size()) != rows * cols ||
          static_cast<Eigen::Index>(bias.size()) != rows) {
        throw DataError("model layer arrays do not match their shape");
      }
      DenseLayer layer;
      layer.weights.resize(rows, cols);
      for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
          layer.weights(r, c) = weights[static_cast<std::size_t>(r * cols + c)];
        }
      }
      layer.bias = Eigen::Map<const Eigen::VectorXd>(bias.data(), rows);
      layers.push_back(std::move(layer));
    }
    TrainedModel model;
    model.network = Mlp(std::move(layers));
    model.config = ConfigFromJson(doc.at("config"));
    model.seed = doc.at("seed").get<std::uint64_t>();
    model.run = doc.value("run", 0);
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model document: ") + e.what());
  }
}

}  // namespace nftsignal
