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

// SSR-based F tests of Granger causality between two aligned series.
//
// For a response y and a candidate cause x with p lags, the restricted model
// regresses y_t on [1, y_{t-1}, ..., y_{t-p}] and the unrestricted model adds
// [x_{t-1}, ..., x_{t-p}]. With T' = T - p usable rows,
//
//   F = ((SSR_r - SSR_u) / p) / (SSR_u / (T' - 2p - 1))
//
// and the p-value is the F(p, T' - 2p - 1) upper tail.
#ifndef NFTSIGNAL_GRANGER_H_
#define NFTSIGNAL_GRANGER_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "nftsignal/timeseries.h"

namespace nftsignal {

// A: tweets -> price (H0: tweet counts do not Granger-cause price).
// B: price -> tweets (H0: price does not Granger-cause tweet counts).
enum class GrangerDirection { kTweetsToPrice, kPriceToTweets };

std::string_view HypothesisLabel(GrangerDirection d);  // "A" or "B"

struct LagSpec {
  int lags = 1;
};

struct LagDesign {
  Eigen::MatrixXd restricted;    // [1, y lags]
  Eigen::MatrixXd unrestricted;  // [1, y lags, x lags]
  Eigen::VectorXd target;        // y_t for t in [lags, T)
};

// Requires y.size() == x.size() >= 2 * lags + 2; throws ShapeError or
// InsufficientDataError otherwise.
LagDesign BuildLagMatrix(std::span<const double> y, std::span<const double> x,
                         int lags);

struct OlsFit {
  Eigen::VectorXd coefficients;
  double ssr = 0.0;
};

// Least squares through column-pivoting Householder QR. Requires more rows
// than columns and full column rank; throws SingularityError when the design
// is rank-deficient.
OlsFit OlsSsr(const Eigen::MatrixXd& design, const Eigen::VectorXd& target);

struct GrangerResult {
  GrangerDirection direction = GrangerDirection::kTweetsToPrice;
  int lags = 1;
  double f_stat = 0.0;
  double p_value = 1.0;
  int df_num = 0;
  int df_den = 0;
  double ssr_restricted = 0.0;
  double ssr_unrestricted = 0.0;
  bool rejected_at_0_05 = false;
};

struct GrangerOptions {
  // Test first differences instead of levels.
  bool first_difference = false;
};

// Variance below this is treated as a constant series and rejected.
inline constexpr double kMinSeriesVariance = 1e-12;

// Tests H0 "x does not Granger-cause y". Throws InsufficientDataError when
// the series cannot support `lags` (fewer than 2 * lags + 2 points, or a
// non-positive denominator dof), SingularityError for constant series,
// rank-deficient designs and exact fits, and DataError for non-finite input.
GrangerResult SsrFTest(std::span<const double> y, std::span<const double> x,
                       int lags,
                       GrangerDirection direction =
                           GrangerDirection::kTweetsToPrice,
                       const GrangerOptions& options = {});

// One table cell: absent when the series is too short for the lag.
struct GrangerCell {
  GrangerDirection direction;
  int lags;
  std::optional<GrangerResult> result;
};

// Direction A for every lag spec, then direction B: 2 * lag_specs.size()
// cells.
std::vector<GrangerCell> RunBidirectional(std::span<const double> tweets,
                                          std::span<const double> prices,
                                          std::span<const LagSpec> lag_specs,
                                          const GrangerOptions& options = {});

// Uses the frames of `series` that have sales (tweet count and average price
// both defined).
std::vector<GrangerCell> RunBidirectional(const TimeframeSeries& series,
                                          std::span<const LagSpec> lag_specs,
                                          const GrangerOptions& options = {});

}  // namespace nftsignal

#endif  // NFTSIGNAL_GRANGER_H_
