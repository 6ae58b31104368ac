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

#include "nftsignal/timeseries.h"

#include <cmath>
#include <sstream>

#include "nftsignal/csv.h"
#include "nftsignal/error.h"
#include "nftsignal/io.h"

namespace nftsignal {

using std::chrono::days;
using std::chrono::floor;
using std::chrono::sys_days;

TimeframeSeries Bucketize(std::span<const Tweet> tweets,
                          std::span<const Transaction> transactions,
                          int frame_len_days) {
  if (frame_len_days < 1) throw ConfigError("frame_len_days must be >= 1");
  TimeframeSeries series;
  series.frame_len_days = frame_len_days;
  if (tweets.empty() && transactions.empty()) return series;

  std::optional<Timestamp> first, last;
  const auto extend = [&](Timestamp t) {
    if (!first || t < *first) first = t;
    if (!last || t > *last) last = t;
  };
  for (const auto& t : tweets) extend(t.timestamp);
  for (const auto& tx : transactions) extend(tx.timestamp);

  const sys_days origin = floor<days>(*first);
  const auto frame_of = [&](Timestamp t) {
    const auto elapsed = floor<days>(t) - origin;
    return static_cast<std::size_t>(elapsed.count() / frame_len_days);
  };
  const std::size_t n_frames = frame_of(*last) + 1;

  series.frames.resize(n_frames);
  std::vector<double> price_sum(n_frames, 0.0);
  for (std::size_t i = 0; i < n_frames; ++i) {
    auto& f = series.frames[i];
    f.index = static_cast<int>(i);
    f.source_index = f.index;
    f.start = origin + days{static_cast<long>(i) * frame_len_days};
  }
  for (const auto& t : tweets) ++series.frames[frame_of(t.timestamp)].tweet_count;
  for (const auto& tx : transactions) {
    if (!tx.is_sale()) continue;
    const std::size_t i = frame_of(tx.timestamp);
    price_sum[i] += tx.value_eth;
    ++series.frames[i].n_sales;
  }
  for (std::size_t i = 0; i < n_frames; ++i) {
    auto& f = series.frames[i];
    if (f.n_sales > 0) {
      f.avg_price = price_sum[i] / static_cast<double>(f.n_sales);
    }
  }
  return series;
}

TimeframeSeries DropFramesWithoutSales(const TimeframeSeries& series) {
  TimeframeSeries out;
  out.frame_len_days = series.frame_len_days;
  for (const auto& f : series.frames) {
    if (f.n_sales == 0) continue;
    Frame kept = f;
    kept.index = static_cast<int>(out.frames.size());
    out.frames.push_back(kept);
  }
  return out;
}

NormalizedTarget MarkovNormalize(std::span<const double> prices,
                                 int markov_window) {
  if (markov_window < 1) throw ConfigError("markov_window must be >= 1");
  const auto n = static_cast<std::size_t>(markov_window);
  if (prices.size() <= n) {
    throw InsufficientDataError(
        "Markov normalization needs more than " + std::to_string(n) +
        " prices, got " + std::to_string(prices.size()));
  }
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (!(prices[i] > 0.0) || !std::isfinite(prices[i])) {
      throw DataError("Markov normalization requires positive finite prices; "
                      "position " + std::to_string(i) + " is " +
                      io::FormatDouble(prices[i]));
    }
  }
  NormalizedTarget target;
  target.markov_window = markov_window;
  target.values.reserve(prices.size() - n);
  for (std::size_t i = n; i < prices.size(); ++i) {
    double window_sum = 0.0;
    for (std::size_t k = i - n; k < i; ++k) window_sum += prices[k];
    target.values.push_back(
        {static_cast<int>(i),
         prices[i] / (window_sum / static_cast<double>(n))});
  }
  return target;
}

int ToBinaryLabel(double normalized) { return normalized > 1.0 ? 1 : 0; }

std::vector<int> ToBinaryLabels(const NormalizedTarget& target) {
  std::vector<int> labels;
  labels.reserve(target.values.size());
  for (const auto& v : target.values) labels.push_back(ToBinaryLabel(v.value));
  return labels;
}

std::string SeriesToCsv(const TimeframeSeries& series) {
  std::string out = "index,start_date,tweet_count,avg_price,n_sales\n";
  for (const auto& f : series.frames) {
    out += csv::JoinRow({std::to_string(f.index), FormatDate(f.start),
                         std::to_string(f.tweet_count),
                         f.avg_price ? io::FormatDouble(*f.avg_price) : "",
                         std::to_string(f.n_sales)}) +
           "\n";
  }
  return out;
}

TimeframeSeries SeriesFromCsv(const std::string& text, int frame_len_days) {
  std::istringstream in(text);
  csv::Reader reader(in);
  std::vector<std::string> fields;
  TimeframeSeries series;
  series.frame_len_days = frame_len_days;
  if (!reader.Next(fields)) return series;
  while (reader.Next(fields)) {
    if (fields.size() != 5) {
      throw DataError("frame CSV row must have 5 columns", reader.line());
    }
    Frame f;
    try {
      f.index = std::stoi(fields[0]);
      f.source_index = f.index;
      const auto start = ParseTimestamp(fields[1]);
      if (!start) throw DataError("bad start_date", reader.line());
      f.start = floor<days>(*start);
      f.tweet_count = std::stoull(fields[2]);
      if (!fields[3].empty()) f.avg_price = std::stod(fields[3]);
      f.n_sales = std::stoull(fields[4]);
    } catch (const std::logic_error&) {
      throw DataError("malformed frame CSV row", reader.line());
    }
    series.frames.push_back(f);
  }
  return series;
}

}  // namespace nftsignal
