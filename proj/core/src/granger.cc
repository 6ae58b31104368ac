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

#include "nftsignal/granger.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nftsignal/error.h"
#include "nftsignal/stats.h"

namespace nftsignal {
namespace {

// Exact fits leave SSR at rounding level relative to the target's spread.
constexpr double kDegenerateSsrRatio = 1e-24;

std::vector<double> Difference(std::span<const double> s) {
  std::vector<double> out;
  if (s.size() < 2) return out;
  out.reserve(s.size() - 1);
  for (std::size_t i = 1; i < s.size(); ++i) out.push_back(s[i] - s[i - 1]);
  return out;
}

void CheckSeries(std::span<const double> s, std::string_view name) {
  for (double v : s) {
    if (!std::isfinite(v)) {
      throw DataError(std::string(name) + " series contains non-finite values");
    }
  }
  if (stats::Variance(s) < kMinSeriesVariance) {
    throw SingularityError(std::string(name) +
                           " series is constant or near-constant");
  }
}

}  // namespace

std::string_view HypothesisLabel(GrangerDirection d) {
  return d == GrangerDirection::kTweetsToPrice ? "A" : "B";
}

LagDesign BuildLagMatrix(std::span<const double> y, std::span<const double> x,
                         int lags) {
  if (lags < 1) throw ConfigError("lags must be >= 1");
  if (y.size() != x.size()) {
    throw ShapeError("Granger series lengths differ: " +
                     std::to_string(y.size()) + " vs " +
                     std::to_string(x.size()));
  }
  const auto p = static_cast<Eigen::Index>(lags);
  const auto total = static_cast<Eigen::Index>(y.size());
  if (total < 2 * p + 2) {
    throw InsufficientDataError(
        "series of length " + std::to_string(total) + " too short for " +
        std::to_string(lags) + " lags (need " + std::to_string(2 * p + 2) +
        ")");
  }
  const Eigen::Index rows = total - p;
  LagDesign design;
  design.target.resize(rows);
  design.restricted.resize(rows, 1 + p);
  design.unrestricted.resize(rows, 1 + 2 * p);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index t = r + p;
    design.target(r) = y[t];
    design.restricted(r, 0) = 1.0;
    design.unrestricted(r, 0) = 1.0;
    for (Eigen::Index k = 1; k <= p; ++k) {
      design.restricted(r, k) = y[t - k];
      design.unrestricted(r, k) = y[t - k];
      design.unrestricted(r, p + k) = x[t - k];
    }
  }
  return design;
}

OlsFit OlsSsr(const Eigen::MatrixXd& design, const Eigen::VectorXd& target) {
  if (design.rows() != target.size()) {
    throw ShapeError("design has " + std::to_string(design.rows()) +
                     " rows but target has " + std::to_string(target.size()));
  }
  if (design.rows() <= design.cols()) {
    throw InsufficientDataError("least squares needs more rows than columns");
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols()) {
    throw SingularityError("design matrix is rank-deficient (rank " +
                           std::to_string(qr.rank()) + " of " +
                           std::to_string(design.cols()) + " columns)");
  }
  OlsFit fit;
  fit.coefficients = qr.solve(target);
  fit.ssr = (target - design * fit.coefficients).squaredNorm();
  return fit;
}

GrangerResult SsrFTest(std::span<const double> y, std::span<const double> x,
                       int lags, GrangerDirection direction,
                       const GrangerOptions& options) {
  std::vector<double> y_diff, x_diff;
  if (options.first_difference) {
    y_diff = Difference(y);
    x_diff = Difference(x);
    y = y_diff;
    x = x_diff;
  }
  CheckSeries(y, "response");
  CheckSeries(x, "cause");
  const LagDesign design = BuildLagMatrix(y, x, lags);
  const auto rows = static_cast<int>(design.target.size());
  const int df_den = rows - 2 * lags - 1;
  if (df_den < 1) {
    throw InsufficientDataError(
        "no residual degrees of freedom for " + std::to_string(lags) +
        " lags with " + std::to_string(rows) + " rows");
  }
  const OlsFit restricted = OlsSsr(design.restricted, design.target);
  const OlsFit unrestricted = OlsSsr(design.unrestricted, design.target);

  const double centered =
      (design.target.array() - design.target.mean()).square().sum();
  if (!(unrestricted.ssr > kDegenerateSsrRatio * centered)) {
    throw SingularityError("unrestricted model fits exactly (SSR_u = 0)");
  }

  GrangerResult result;
  result.direction = direction;
  result.lags = lags;
  result.df_num = lags;
  result.df_den = df_den;
  result.ssr_restricted = restricted.ssr;
  result.ssr_unrestricted = unrestricted.ssr;
  // SSR_u <= SSR_r mathematically; clamp rounding noise so F >= 0.
  const double reduction = std::max(0.0, restricted.ssr - unrestricted.ssr);
  result.f_stat = (reduction / lags) / (unrestricted.ssr / df_den);
  result.p_value = stats::FSurvival(result.f_stat, lags, df_den);
  result.rejected_at_0_05 = result.p_value < 0.05;
  return result;
}

std::vector<GrangerCell> RunBidirectional(std::span<const double> tweets,
                                          std::span<const double> prices,
                                          std::span<const LagSpec> lag_specs,
                                          const GrangerOptions& options) {
  if (tweets.size() != prices.size()) {
    throw ShapeError("tweet and price series lengths differ");
  }
  std::vector<GrangerCell> cells;
  cells.reserve(2 * lag_specs.size());
  for (const auto direction :
       {GrangerDirection::kTweetsToPrice, GrangerDirection::kPriceToTweets}) {
    const bool a = direction == GrangerDirection::kTweetsToPrice;
    const auto y = a ? prices : tweets;
    const auto x = a ? tweets : prices;
    for (const auto& spec : lag_specs) {
      GrangerCell cell{direction, spec.lags, std::nullopt};
      try {
        cell.result = SsrFTest(y, x, spec.lags, direction, options);
      } catch (const InsufficientDataError&) {
        // Reported as "-" in the table.
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

std::vector<GrangerCell> RunBidirectional(const TimeframeSeries& series,
                                          std::span<const LagSpec> lag_specs,
                                          const GrangerOptions& options) {
  std::vector<double> tweets, prices;
  for (const auto& f : series.frames) {
    if (!f.avg_price) continue;
    tweets.push_back(static_cast<double>(f.tweet_count));
    prices.push_back(*f.avg_price);
  }
  return RunBidirectional(tweets, prices, lag_specs, options);
}

}  // namespace nftsignal
