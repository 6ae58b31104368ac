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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gradcheck.h"
#include "nftsignal/error.h"
#include "nftsignal/random.h"
#include "nftsignal/synth.h"

namespace nftsignal {
namespace {

const std::vector<int> kSmallHidden = {4, 3};

TEST(Mlp, ZeroNetworkOutputsZero) {
  const auto net = Mlp::Zeros(3, kSmallHidden);
  const std::vector<double> x = {0.3, -1.0, 2.0};
  EXPECT_EQ(net.Forward(x), 0.0);
}

TEST(Mlp, NanInputRejected) {
  const auto net = Mlp::Initialize(2, kSmallHidden, 1);
  const std::vector<double> x = {0.1, std::nan("")};
  EXPECT_THROW(net.Forward(x), DataError);
  EXPECT_THROW(net.Predict(Eigen::MatrixXd::Constant(2, 2, INFINITY)), DataError);
}

TEST(Mlp, WidthMismatchRejected) {
  const auto net = Mlp::Initialize(2, kSmallHidden, 1);
  const std::vector<double> x = {0.1};
  EXPECT_THROW(net.Forward(x), ShapeError);
}

TEST(Mlp, DefaultArchitectureShape) {
  const MlpConfig config;
  const auto net = Mlp::Initialize(100, config.hidden_units, config.seed);
  EXPECT_EQ(net.LayerSizes(), (std::vector<int>{100, 64, 256, 1}));
  EXPECT_EQ(net.NumParameters(), 100u * 64 + 64 + 64 * 256 + 256 + 256 + 1);
}

TEST(Mlp, InitializationIsSeededAndBounded) {
  const auto a = Mlp::Initialize(16, kSmallHidden, 9);
  EXPECT_EQ(a, Mlp::Initialize(16, kSmallHidden, 9));
  EXPECT_NE(a, Mlp::Initialize(16, kSmallHidden, 10));
  EXPECT_LE(a.layers()[0].weights.cwiseAbs().maxCoeff(), 0.25);
}

TEST(PenalizedMae, WrongDirectionDoubles) {
  const std::vector<double> truth = {1.2}, pred = {0.9};
  EXPECT_EQ(DirectionPenalty(1.2, 0.9), 2.0);
  EXPECT_NEAR(PenalizedMaeLoss(truth, pred), 0.6, 1e-15);
}

TEST(PenalizedMae, ZeroResidual) {
  const std::vector<double> v = {0.8, 1.0, 1.3};
  EXPECT_EQ(PenalizedMaeLoss(v, v), 0.0);
}

TEST(PenalizedMae, RightDirectionUnpenalized) {
  const std::vector<double> truth = {1.2, 0.8}, pred = {1.1, 0.9};
  EXPECT_NEAR(PenalizedMaeLoss(truth, pred), 0.1, 1e-15);
}

TEST(PenalizedMae, ExactlyOneCountsAsWrongDirection) {
  EXPECT_EQ(DirectionPenalty(1.0, 1.0), 2.0);
  EXPECT_EQ(DirectionPenalty(1.1, 1.0), 2.0);
}

TEST(PenalizedMae, LengthMismatch) {
  const std::vector<double> a = {1.0}, b = {1.0, 2.0};
  EXPECT_THROW(PenalizedMaeLoss(a, b), ShapeError);
}

struct Batch {
  Eigen::MatrixXd x;
  std::vector<double> y;
};

Batch RandomBatch(CounterRng& rng, int rows, int cols) {
  Batch b{Eigen::MatrixXd(rows, cols), {}};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) b.x(r, c) = rng.Uniform(-1, 1);
    b.y.push_back(rng.Uniform(0.5, 1.5));
  }
  return b;
}

TEST(Backward, MatchesFiniteDifferences) {
  CounterRng rng(77);
  for (int point = 0; point < 25; ++point) {
    const auto net = Mlp::Initialize(5, kSmallHidden, 100 + point);
    const auto batch = RandomBatch(rng, 6, 5);
    EXPECT_LT(oracle::GradientRelativeError(net, batch.x, batch.y), 1e-4)
        << "point " << point;
  }
}

TEST(Backward, ZeroResidualGivesZeroGradient) {
  const auto net = Mlp::Initialize(3, kSmallHidden, 4);
  CounterRng rng(1);
  auto batch = RandomBatch(rng, 5, 3);
  const Eigen::VectorXd pred = net.Predict(batch.x);
  batch.y.assign(pred.data(), pred.data() + pred.size());
  const auto g = Backward(net, batch.x, batch.y);
  for (const auto& layer : g.layers) {
    EXPECT_EQ(layer.weights.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(layer.bias.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Backward, PenaltyDoublesASamplesContribution) {
  // Prediction 1.5 against truth 1.2 (same side of 1, delta 1) and truth
  // 0.9 (opposite side, delta 2): the residual sign is the same.
  auto net = Mlp::Zeros(1, {});
  net.mutable_layers()[0].bias(0) = 1.5;
  const Eigen::MatrixXd x = Eigen::MatrixXd::Zero(1, 1);
  const std::vector<double> same_side = {1.2}, opposite = {0.9};
  EXPECT_EQ(Backward(net, x, same_side).layers[0].bias(0), 1.0);
  EXPECT_EQ(Backward(net, x, opposite).layers[0].bias(0), 2.0);
}

TEST(Fit, SingleWeightLearnsIdentity) {
  Dataset d;
  d.features.resize(20, 1);
  for (int i = 0; i < 20; ++i) {
    d.features(i, 0) = 1.1 + 0.05 * i;
    d.target.push_back(d.features(i, 0));
    d.frame_index.push_back(i);
  }
  MlpConfig config;
  config.hidden_units = {};
  config.learning_rate = 1e-2;
  config.epochs = 3000;
  auto net = Mlp::Zeros(1, {});
  Fit(net, d, config, 1);
  // The least-absolute-deviation optimum is w = 1, b = 0 with zero loss.
  EXPECT_NEAR(net.layers()[0].weights(0, 0), 1.0, 0.05);
  for (int i = 0; i < 20; ++i) {
    EXPECT_NEAR(net.Forward(std::vector<double>{d.features(i, 0)}),
                d.features(i, 0), 0.05);
  }
}

TEST(Train, ConstantTargetReachesSmallMae) {
  auto pc = GenPlantedCorpus({120, 10, "mint", 0.5, 3, 3});
  for (auto& v : pc.target.values) v.value = 1.0;
  MlpConfig config;
  config.runs = 1;
  const auto result = Train(pc.matrix, pc.target, config);
  EXPECT_LE(result.metrics.mae.mean, 0.05);
}

TEST(Train, RunsAreSeededAndReproducible) {
  const auto pc = GenPlantedCorpus({80, 8, "mint", 0.5, 5, 3});
  MlpConfig config;
  config.epochs = 50;
  const auto a = Train(pc.matrix, pc.target, config);
  const auto b = Train(pc.matrix, pc.target, config);
  ASSERT_EQ(a.models.size(), 3u);
  EXPECT_EQ(a.models[2].seed, config.seed + 2);
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(a.models[r].network, b.models[r].network);
  }
  EXPECT_NE(a.models[0].network, a.models[1].network);
  EXPECT_EQ(a.metrics.n_train, 64);
  EXPECT_EQ(a.metrics.n_test, 16);
}

TEST(Train, TooFewTestRowsRejected) {
  const auto pc = GenPlantedCorpus({5, 4, "mint", 0.5, 1, 3});
  EXPECT_THROW(Train(pc.matrix, pc.target, MlpConfig{}), InsufficientDataError);
}

TEST(Split, EightyTwentyCounts) {
  for (auto [n, train] : {std::pair{188, 150}, {198, 158}, {25, 20}, {262, 209}}) {
    Dataset d;
    d.features = Eigen::MatrixXd::Zero(n, 1);
    for (int i = 0; i < n; ++i) {
      d.target.push_back(1.0);
      d.frame_index.push_back(i);
    }
    const auto s = SplitChronologically(d, {});
    EXPECT_EQ(static_cast<int>(s.train.size()), train);
    EXPECT_EQ(static_cast<int>(s.test.size()), n - train);
    EXPECT_LT(s.train.frame_index.back(), s.test.frame_index.front());
  }
}

TEST(Metrics, AllCorrectDirections) {
  const std::vector<int> t = {1, 0, 1};
  EXPECT_EQ(BinaryAccuracy(t, t), 1.0);
}

TEST(Metrics, HandConfusionMatrix) {
  const std::vector<int> truth = {1, 0, 1, 0}, pred = {1, 0, 0, 0};
  EXPECT_DOUBLE_EQ(BinaryAccuracy(truth, pred), 0.75);
  EXPECT_DOUBLE_EQ(BinaryF1(truth, pred), 2.0 / 3.0);
}

TEST(Metrics, F1WithoutPositivesIsZero) {
  const std::vector<int> zeros = {0, 0, 0};
  EXPECT_EQ(BinaryF1(zeros, zeros), 0.0);
}

TEST(Metrics, CoinFlipPredictor) {
  CounterRng rng(2024);
  std::vector<int> truth, pred;
  for (int i = 0; i < 10000; ++i) {
    truth.push_back(i % 2);
    pred.push_back(static_cast<int>(rng.Below(2)));
  }
  EXPECT_NEAR(BinaryAccuracy(truth, pred), 0.5, 0.02);
}

TEST(Metrics, SummaryUsesPopulationStd) {
  const std::vector<RunMetrics> runs = {{0.1, 0.5, 0.4}, {0.3, 0.7, 0.6}};
  const auto m = Summarize(runs, 10, 3);
  EXPECT_DOUBLE_EQ(m.accuracy.mean, 0.6);
  EXPECT_NEAR(m.accuracy.std, 0.1, 1e-15);
}

TEST(ModelJson, RoundTripIsExact) {
  TrainedModel m;
  m.network = Mlp::Initialize(7, kSmallHidden, 3);
  m.config.hidden_units = kSmallHidden;
  m.seed = 3;
  m.run = 1;
  const auto back = ModelFromJson(ModelToJson(m));
  EXPECT_EQ(back.network, m.network);
  EXPECT_EQ(back.seed, 3u);
  EXPECT_EQ(back.config.hidden_units, kSmallHidden);
  EXPECT_EQ(ModelToJson(back), ModelToJson(m));
}

TEST(ModelJson, RejectsForeignDocuments) {
  EXPECT_THROW(ModelFromJson(R"({"format": "other", "version": 1})"), Error);
  EXPECT_THROW(ModelFromJson("not json"), Error);
}

}  // namespace
}  // namespace nftsignal
