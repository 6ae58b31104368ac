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

// Per-project artifact tables and the combined Markdown/CSV report.
//
// Granger rows follow the layout of a two-hypothesis causality table: one A
// row and one B row per project, F-statistic and p-value for lags 1 to 3,
// significant cells (p < 0.05, strict) in bold and "-" where the series was
// too short for the lag.
#ifndef NFTSIGNAL_REPORT_H_
#define NFTSIGNAL_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nftsignal/granger.h"
#include "nftsignal/importance.h"
#include "nftsignal/ingest.h"
#include "nftsignal/model.h"
#include "nftsignal/textfeat.h"

namespace nftsignal {

inline constexpr double kSignificanceLevel = 0.05;

inline bool IsSignificant(double p_value) {
  return p_value < kSignificanceLevel;
}

// Per-project artifacts. Absent cells are written as "-".
std::string GrangerCellsToCsv(std::span<const GrangerCell> cells);
std::vector<GrangerCell> GrangerCellsFromCsv(const std::string& text);

struct MetricsRecord {
  Metrics metrics;
  int markov_window = 0;
};

// One row per run: run,n_train,n_test,markov_window,mae,accuracy,f1.
std::string MetricsToCsv(const MetricsRecord& record);
MetricsRecord MetricsFromCsv(const std::string& text);

struct ImportanceLists {
  std::vector<ImportanceScore> top;
  std::vector<ImportanceScore> bottom;

  bool empty() const { return top.empty() && bottom.empty(); }
};

// Inverse of ImportanceToCsv: the first half of the rows is the top list.
ImportanceLists ImportanceFromCsv(const std::string& text);

struct ExtractionSummary {
  int timeframes = 0;
  int frame_len_days = 0;
  int features = 0;
  double word_mean_tfs = 0.0;  // mean containment count over the vocab
  std::string first_date;
  std::string last_date;
};

std::string ExtractionToCsv(const ExtractionSummary& summary);
ExtractionSummary ExtractionFromCsv(const std::string& text);

struct ProjectReport {
  std::string project;
  Originality originality = Originality::kAuthentic;
  std::optional<std::vector<GrangerCell>> granger;
  std::optional<ExtractionSummary> extraction;
  std::optional<MetricsRecord> metrics;
  std::optional<ImportanceLists> importance;
};

struct Report {
  // Authentic projects are listed before copycats, otherwise input order.
  std::vector<ProjectReport> projects;
  std::optional<OverlapReport> overlap;
};

// "0.578 ± 0.027"
std::string FormatMeanStd(const MetricSummary& s, int digits = 3);

std::string GrangerTableCsv(const Report& report);
std::string GrangerTableMarkdown(const Report& report);
std::string ExtractionTableCsv(const Report& report);
std::string ExtractionTableMarkdown(const Report& report);
std::string MetricsTableCsv(const Report& report);
std::string MetricsTableMarkdown(const Report& report);
std::string OverlapTableCsv(const OverlapReport& overlap);
std::string OverlapTableMarkdown(const OverlapReport& overlap);
std::string ImportanceMarkdown(const Report& report);

// Every section present in `report`, in pipeline order.
std::string RenderMarkdown(const Report& report);

}  // namespace nftsignal

#endif  // NFTSIGNAL_REPORT_H_
