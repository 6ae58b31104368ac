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

#include "nftsignal/importance.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "nftsignal/error.h"
#include "nftsignal/io.h"
#include "nftsignal/random.h"
#include "nftsignal/stats.h"

namespace nftsignal {
namespace {

constexpr std::uint32_t kLabelShuffleStream = 0xFFFFFFFFu;

double Metric(MdaMetric metric, const Mlp& network, const Dataset& data) {
  const RunMetrics m = Evaluate(network, data);
  return metric == MdaMetric::kAccuracy ? m.accuracy : m.mae;
}

double Degradation(MdaMetric metric, double baseline, double permuted) {
  return metric == MdaMetric::kAccuracy ? baseline - permuted
                                        : permuted - baseline;
}

bool ByMeanDesc(const ImportanceScore& a, const ImportanceScore& b) {
  if (a.mean != b.mean) return a.mean > b.mean;
  return a.word < b.word;
}

bool ByMeanAsc(const ImportanceScore& a, const ImportanceScore& b) {
  if (a.mean != b.mean) return a.mean < b.mean;
  return a.word < b.word;
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::vector<ImportanceScore> Mda(const Mlp& network, const Dataset& eval,
                                 std::span<const std::string> vocab,
                                 const MdaOptions& options) {
  if (eval.size() < 2) {
    throw InsufficientDataError(
        "permutation importance needs at least 2 evaluation rows");
  }
  if (options.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (static_cast<Eigen::Index>(vocab.size()) != eval.features.cols()) {
    throw ShapeError("vocab size differs from feature width");
  }
  Dataset base = eval;
  if (options.permute_labels) {
    CounterRng rng(options.seed,
                   CounterRng::StreamId(kLabelShuffleStream, 0));
    Shuffle(std::span(base.target), rng);
  }
  const double baseline = Metric(options.metric, network, base);
  const auto n_features = static_cast<std::size_t>(eval.features.cols());
  std::vector<ImportanceScore> scores(n_features);

  const auto score_feature = [&](std::size_t j, Dataset& work) {
    ImportanceScore& s = scores[j];
    s.word = vocab[j];
    s.repeats = options.repeats;
    const Eigen::VectorXd original = base.features.col(static_cast<Eigen::Index>(j));
    std::vector<double> column(original.data(), original.data() + original.size());
    for (int r = 0; r < options.repeats; ++r) {
      std::vector<double> permuted = column;
      CounterRng rng(options.seed,
                     CounterRng::StreamId(static_cast<std::uint32_t>(j),
                                          static_cast<std::uint32_t>(r)));
      Shuffle(std::span(permuted), rng);
      work.features.col(static_cast<Eigen::Index>(j)) =
          Eigen::Map<const Eigen::VectorXd>(permuted.data(),
                                            static_cast<Eigen::Index>(permuted.size()));
      s.samples.push_back(Degradation(options.metric, baseline,
                                      Metric(options.metric, network, work)));
    }
    work.features.col(static_cast<Eigen::Index>(j)) = original;
    s.mean = stats::Mean(s.samples);
    s.variance = stats::Variance(s.samples, 0);
  };

  const int threads = std::max(1, std::min<int>(options.threads,
                                                static_cast<int>(n_features)));
  if (threads <= 1) {
    Dataset work = base;
    for (std::size_t j = 0; j < n_features; ++j) score_feature(j, work);
    return scores;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        Dataset work = base;
        for (std::size_t j = static_cast<std::size_t>(t); j < n_features;
             j += static_cast<std::size_t>(threads)) {
          score_feature(j, work);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return scores;
}

std::pair<std::vector<ImportanceScore>, std::vector<ImportanceScore>>
TopBottom(std::span<const ImportanceScore> scores, int k) {
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)),
                                       scores.size());
  std::vector<ImportanceScore> top(scores.begin(), scores.end());
  std::vector<ImportanceScore> bottom(scores.begin(), scores.end());
  std::sort(top.begin(), top.end(), ByMeanDesc);
  std::sort(bottom.begin(), bottom.end(), ByMeanAsc);
  top.resize(n);
  bottom.resize(n);
  return {std::move(top), std::move(bottom)};
}

double ScottBandwidth(std::span<const double> points) {
  if (points.size() < 2) return 1.0;
  const double sd = std::sqrt(stats::Variance(points, 1));
  if (!(sd > 0.0)) return 1.0;
  return sd * std::pow(static_cast<double>(points.size()), -0.2);
}

DensityProfile KdeProfile(std::string_view word, const FeatureMatrix& matrix,
                          std::optional<double> bandwidth) {
  const Eigen::Index col = matrix.ColumnOf(word);
  if (col < 0) {
    throw std::invalid_argument("word '" + std::string(word) +
                                "' is not in the vocabulary");
  }
  if (bandwidth && !(*bandwidth > 0.0)) {
    throw ConfigError("KDE bandwidth must be positive");
  }
  DensityProfile profile;
  profile.word = std::string(word);
  std::vector<double> points;
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    const double x = r < static_cast<Eigen::Index>(matrix.frame_indices.size())
                         ? matrix.frame_indices[static_cast<std::size_t>(r)]
                         : static_cast<double>(r);
    profile.grid.push_back(x);
    if (matrix.values(r, col) != 0.0) points.push_back(x);
  }
  profile.occurrences = static_cast<int>(points.size());
  if (points.empty()) {
    profile.grid.clear();
    return profile;
  }
  profile.bandwidth = bandwidth ? *bandwidth : ScottBandwidth(points);
  const double h = profile.bandwidth;
  const double norm = 1.0 / (static_cast<double>(points.size()) * h *
                             std::sqrt(2.0 * std::numbers::pi));
  for (double x : profile.grid) {
    double sum = 0.0;
    for (double p : points) {
      const double u = (x - p) / h;
      sum += std::exp(-0.5 * u * u);
    }
    profile.raw_density.push_back(norm * sum);
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < profile.grid.size(); ++i) {
    integral += 0.5 * (profile.raw_density[i] + profile.raw_density[i - 1]) *
                (profile.grid[i] - profile.grid[i - 1]);
  }
  profile.density = profile.raw_density;
  if (integral > 0.0) {
    for (double& d : profile.density) d /= integral;
  }
  return profile;
}

std::string ImportanceToCsv(std::span<const ImportanceScore> top,
                            std::span<const ImportanceScore> bottom) {
  std::string out = "word,mean,variance\n";
  for (const auto* list : {&top, &bottom}) {
    for (const auto& s : *list) {
      out += fmt::format("{},{},{}\n", s.word, io::FormatDouble(s.mean),
                         io::FormatDouble(s.variance));
    }
  }
  return out;
}

std::string ImportanceChartSvg(std::span<const ImportanceScore> top,
                               std::span<const ImportanceScore> bottom,
                               std::string_view title) {
  std::vector<const ImportanceScore*> bars;
  for (const auto& s : top) bars.push_back(&s);
  for (const auto& s : bottom) bars.push_back(&s);
  constexpr double kBarWidth = 18.0, kLeft = 50.0, kPlotHeight = 240.0,
                   kTop = 30.0;
  const double width = kLeft + kBarWidth * static_cast<double>(bars.size()) + 20;
  double extent = 1e-12;
  for (const auto* s : bars) {
    extent = std::max(extent, std::fabs(s->mean) + std::sqrt(s->variance));
  }
  const double zero_y = kTop + kPlotHeight / 2.0;
  const double scale = (kPlotHeight / 2.0) / extent;
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"10\">\n"
      "<text x=\"{:.0f}\" y=\"18\" font-size=\"12\">{}</text>\n"
      "<line x1=\"{:.0f}\" y1=\"{:.2f}\" x2=\"{:.0f}\" y2=\"{:.2f}\" "
      "stroke=\"black\"/>\n",
      width, kTop + kPlotHeight + 90, kLeft, XmlEscape(title), kLeft, zero_y,
      width - 20, zero_y);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const auto& s = *bars[i];
    const double x = kLeft + kBarWidth * static_cast<double>(i) + 2;
    const double y_mean = zero_y - s.mean * scale;
    const double sd = std::sqrt(s.variance) * scale;
    const bool is_top = i < top.size();
    svg += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
        "fill=\"{}\"/>\n"
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
        "stroke=\"black\"/>\n"
        "<text transform=\"translate({:.2f},{:.2f}) rotate(60)\">{}</text>\n",
        x, std::min(y_mean, zero_y), kBarWidth - 4, std::fabs(zero_y - y_mean),
        is_top ? "#3b75af" : "#c44e52", x + (kBarWidth - 4) / 2, y_mean - sd,
        x + (kBarWidth - 4) / 2, y_mean + sd, x + 4, kTop + kPlotHeight + 6,
        XmlEscape(s.word));
  }
  svg += "</svg>\n";
  return svg;
}

std::string DensityProfileSvg(const DensityProfile& profile) {
  constexpr double kWidth = 400, kHeight = 160, kPad = 20;
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"10\">\n"
      "<text x=\"{:.0f}\" y=\"14\">{} (bandwidth {:.3f}, n={})</text>\n",
      kWidth, kHeight, kPad, XmlEscape(profile.word), profile.bandwidth,
      profile.occurrences);
  if (profile.empty() || profile.grid.size() < 2) {
    svg += "<text x=\"20\" y=\"80\">no occurrences</text>\n</svg>\n";
    return svg;
  }
  const double x0 = profile.grid.front(), x1 = profile.grid.back();
  const double peak = *std::max_element(profile.density.begin(),
                                        profile.density.end());
  std::string points;
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    const double x = kPad + (profile.grid[i] - x0) / (x1 - x0) * (kWidth - 2 * kPad);
    const double y = kHeight - kPad -
                     (peak > 0 ? profile.density[i] / peak : 0.0) *
                         (kHeight - 2.5 * kPad);
    points += fmt::format("{:.2f},{:.2f} ", x, y);
  }
  svg += fmt::format(
      "<polyline fill=\"none\" stroke=\"#3b75af\" points=\"{}\"/>\n</svg>\n",
      points);
  return svg;
}

}  // namespace nftsignal
