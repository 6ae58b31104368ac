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

// Fixed-length timeframe bucketing of tweets and sales, and Markov
// normalization of the per-frame average price.
#ifndef NFTSIGNAL_TIMESERIES_H_
#define NFTSIGNAL_TIMESERIES_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nftsignal/ingest.h"

namespace nftsignal {

struct Frame {
  // Dense 0-based position within its series.
  int index = 0;
  // Original position in the bucketed series; survives
  // DropFramesWithoutSales.
  int source_index = 0;
  std::chrono::sys_days start;
  std::uint64_t tweet_count = 0;
  // Mean sale price; present iff n_sales > 0.
  std::optional<double> avg_price;
  std::uint64_t n_sales = 0;

  bool operator==(const Frame&) const = default;
};

struct TimeframeSeries {
  int frame_len_days = 1;
  std::vector<Frame> frames;

  bool empty() const { return frames.empty(); }
  std::size_t size() const { return frames.size(); }
};

// Buckets time-sorted tweets and transactions into consecutive frames of
// `frame_len_days` days. The first frame starts at the earliest event
// truncated to 00:00 UTC and frames run through the latest event. Transfers
// (value 0) are excluded from avg_price and n_sales. Empty input gives an
// empty series.
TimeframeSeries Bucketize(std::span<const Tweet> tweets,
                          std::span<const Transaction> transactions,
                          int frame_len_days);

// Keeps frames with at least one sale, reindexed densely. `source_index` and
// `start` keep the original position and date.
TimeframeSeries DropFramesWithoutSales(const TimeframeSeries& series);

struct NormalizedValue {
  int index = 0;
  double value = 0.0;

  bool operator==(const NormalizedValue&) const = default;
};

struct NormalizedTarget {
  int markov_window = 1;
  std::vector<NormalizedValue> values;
};

// y'_i = y_i / mean(y_{i-n} .. y_{i-1}) for i >= n, where n = markov_window.
// The window is exclusive of i; the first n positions have no target and are
// dropped. Throws InsufficientDataError if prices.size() <= n and DataError
// if any price is not strictly positive and finite.
NormalizedTarget MarkovNormalize(std::span<const double> prices,
                                 int markov_window);

// 1 for an up-move (y' > 1), else 0. y' == 1 maps to 0.
int ToBinaryLabel(double normalized);
std::vector<int> ToBinaryLabels(const NormalizedTarget& target);

// CSV `index,start_date,tweet_count,avg_price,n_sales`; avg_price is empty
// when absent.
std::string SeriesToCsv(const TimeframeSeries& series);
TimeframeSeries SeriesFromCsv(const std::string& text, int frame_len_days);

}  // namespace nftsignal

#endif  // NFTSIGNAL_TIMESERIES_H_
