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

#include "nftsignal/report.h"

#include <algorithm>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "nftsignal/csv.h"
#include "nftsignal/error.h"
#include "nftsignal/io.h"

namespace nftsignal {
namespace {

constexpr std::string_view kAbsent = "-";

std::vector<std::vector<std::string>> ReadRows(const std::string& text,
                                               std::size_t width,
                                               std::string_view what) {
  std::istringstream in(text);
  csv::Reader reader(in);
  std::vector<std::string> fields;
  std::vector<std::vector<std::string>> rows;
  if (!reader.Next(fields)) throw DataError(std::string(what) + " is empty");
  while (reader.Next(fields)) {
    if (fields.size() != width) {
      throw DataError(fmt::format("{} row must have {} columns", what, width),
                      reader.line());
    }
    rows.push_back(fields);
  }
  return rows;
}

double ParseDouble(const std::string& s, std::string_view what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw DataError(fmt::format("{}: bad number '{}'", what, s));
  }
}

int ParseInt(const std::string& s, std::string_view what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw DataError(fmt::format("{}: bad integer '{}'", what, s));
  }
}

std::vector<const ProjectReport*> Ordered(const Report& report) {
  std::vector<const ProjectReport*> out;
  for (const auto& p : report.projects) out.push_back(&p);
  std::stable_sort(out.begin(), out.end(), [](const auto* a, const auto* b) {
    return a->originality == Originality::kAuthentic &&
           b->originality == Originality::kCopycat;
  });
  return out;
}

std::vector<int> LagColumns(const Report& report) {
  std::set<int> lags;
  for (const auto& p : report.projects) {
    if (!p.granger) continue;
    for (const auto& c : *p.granger) lags.insert(c.lags);
  }
  return {lags.begin(), lags.end()};
}

const GrangerCell* FindCell(const std::vector<GrangerCell>& cells,
                            GrangerDirection d, int lags) {
  for (const auto& c : cells) {
    if (c.direction == d && c.lags == lags) return &c;
  }
  return nullptr;
}

std::string FormatP(double p) {
  return p < 0.001 ? std::string("<0.001") : io::FormatFixed(p, 3);
}

std::string MarkdownRow(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) out += " " + c + " |";
  return out + "\n";
}

std::string MarkdownHeader(const std::vector<std::string>& cells) {
  std::string out = MarkdownRow(cells) + "|";
  for (std::size_t i = 0; i < cells.size(); ++i) out += " --- |";
  return out + "\n";
}

// Emits one copycat divider row before the first copycat project.
template <typename RowFn>
std::string ProjectRows(const Report& report, std::size_t width,
                        bool (*has)(const ProjectReport&), RowFn row) {
  std::string out;
  bool divided = false;
  for (const auto* p : Ordered(report)) {
    if (!has(*p)) continue;
    if (p->originality == Originality::kCopycat && !divided) {
      std::vector<std::string> divider(width);
      divider[0] = "*copycat projects*";
      out += MarkdownRow(divider);
      divided = true;
    }
    out += row(*p);
  }
  return out;
}

bool HasGranger(const ProjectReport& p) { return p.granger.has_value(); }
bool HasExtraction(const ProjectReport& p) { return p.extraction.has_value(); }
bool HasMetrics(const ProjectReport& p) { return p.metrics.has_value(); }

}  // namespace

std::string GrangerCellsToCsv(std::span<const GrangerCell> cells) {
  std::string out =
      "nh,lags,f_stat,p_value,df_num,df_den,ssr_restricted,"
      "ssr_unrestricted,significant\n";
  for (const auto& c : cells) {
    const std::string nh(HypothesisLabel(c.direction));
    if (!c.result) {
      out += fmt::format("{},{},-,-,-,-,-,-,-\n", nh, c.lags);
      continue;
    }
    const auto& r = *c.result;
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", nh, c.lags,
                       io::FormatDouble(r.f_stat), io::FormatDouble(r.p_value),
                       r.df_num, r.df_den, io::FormatDouble(r.ssr_restricted),
                       io::FormatDouble(r.ssr_unrestricted),
                       IsSignificant(r.p_value) ? 1 : 0);
  }
  return out;
}

std::vector<GrangerCell> GrangerCellsFromCsv(const std::string& text) {
  std::vector<GrangerCell> cells;
  for (const auto& f : ReadRows(text, 9, "granger CSV")) {
    GrangerCell cell;
    if (f[0] == "A") {
      cell.direction = GrangerDirection::kTweetsToPrice;
    } else if (f[0] == "B") {
      cell.direction = GrangerDirection::kPriceToTweets;
    } else {
      throw DataError("granger CSV: nh must be A or B");
    }
    cell.lags = ParseInt(f[1], "granger CSV");
    if (f[2] != kAbsent) {
      GrangerResult r;
      r.direction = cell.direction;
      r.lags = cell.lags;
      r.f_stat = ParseDouble(f[2], "granger CSV");
      r.p_value = ParseDouble(f[3], "granger CSV");
      r.df_num = ParseInt(f[4], "granger CSV");
      r.df_den = ParseInt(f[5], "granger CSV");
      r.ssr_restricted = ParseDouble(f[6], "granger CSV");
      r.ssr_unrestricted = ParseDouble(f[7], "granger CSV");
      r.rejected_at_0_05 = IsSignificant(r.p_value);
      cell.result = r;
    }
    cells.push_back(cell);
  }
  return cells;
}

std::string MetricsToCsv(const MetricsRecord& record) {
  std::string out = "run,n_train,n_test,markov_window,mae,accuracy,f1\n";
  const auto& m = record.metrics;
  for (std::size_t r = 0; r < m.per_run.size(); ++r) {
    const auto& run = m.per_run[r];
    out += fmt::format("{},{},{},{},{},{},{}\n", r, m.n_train, m.n_test,
                       record.markov_window, io::FormatDouble(run.mae),
                       io::FormatDouble(run.accuracy), io::FormatDouble(run.f1));
  }
  return out;
}

MetricsRecord MetricsFromCsv(const std::string& text) {
  const auto rows = ReadRows(text, 7, "metrics CSV");
  if (rows.empty()) throw DataError("metrics CSV has no runs");
  std::vector<RunMetrics> runs;
  MetricsRecord record;
  int n_train = 0, n_test = 0;
  for (const auto& f : rows) {
    n_train = ParseInt(f[1], "metrics CSV");
    n_test = ParseInt(f[2], "metrics CSV");
    record.markov_window = ParseInt(f[3], "metrics CSV");
    runs.push_back({ParseDouble(f[4], "metrics CSV"),
                    ParseDouble(f[5], "metrics CSV"),
                    ParseDouble(f[6], "metrics CSV")});
  }
  record.metrics = Summarize(runs, n_train, n_test);
  return record;
}

ImportanceLists ImportanceFromCsv(const std::string& text) {
  const auto rows = ReadRows(text, 3, "importance CSV");
  if (rows.size() % 2 != 0) {
    throw DataError("importance CSV must hold equal top and bottom lists");
  }
  ImportanceLists lists;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ImportanceScore s;
    s.word = rows[i][0];
    s.mean = ParseDouble(rows[i][1], "importance CSV");
    s.variance = ParseDouble(rows[i][2], "importance CSV");
    (i < rows.size() / 2 ? lists.top : lists.bottom).push_back(std::move(s));
  }
  return lists;
}

std::string ExtractionToCsv(const ExtractionSummary& s) {
  return fmt::format(
      "timeframes,frame_len_days,features,word_mean_tfs,first_date,"
      "last_date\n{},{},{},{},{},{}\n",
      s.timeframes, s.frame_len_days, s.features,
      io::FormatDouble(s.word_mean_tfs), s.first_date, s.last_date);
}

ExtractionSummary ExtractionFromCsv(const std::string& text) {
  const auto rows = ReadRows(text, 6, "extraction CSV");
  if (rows.size() != 1) throw DataError("extraction CSV must have one row");
  const auto& f = rows[0];
  ExtractionSummary s;
  s.timeframes = ParseInt(f[0], "extraction CSV");
  s.frame_len_days = ParseInt(f[1], "extraction CSV");
  s.features = ParseInt(f[2], "extraction CSV");
  s.word_mean_tfs = ParseDouble(f[3], "extraction CSV");
  s.first_date = f[4];
  s.last_date = f[5];
  return s;
}

std::string FormatMeanStd(const MetricSummary& s, int digits) {
  return io::FormatFixed(s.mean, digits) + " ± " +
         io::FormatFixed(s.std, digits);
}

std::string GrangerTableCsv(const Report& report) {
  const auto lags = LagColumns(report);
  std::vector<std::string> header = {"project", "originality", "nh"};
  for (int l : lags) {
    for (const char* col : {"f_lag", "p_lag", "sig_lag"}) {
      header.push_back(col + std::to_string(l));
    }
  }
  std::string out = csv::JoinRow(header) + "\n";
  for (const auto* p : Ordered(report)) {
    if (!p->granger) continue;
    for (auto d : {GrangerDirection::kTweetsToPrice,
                   GrangerDirection::kPriceToTweets}) {
      std::vector<std::string> row = {p->project,
                                      std::string(ToString(p->originality)),
                                      std::string(HypothesisLabel(d))};
      for (int l : lags) {
        const auto* cell = FindCell(*p->granger, d, l);
        if (cell == nullptr || !cell->result) {
          row.insert(row.end(), 3, std::string(kAbsent));
          continue;
        }
        row.push_back(io::FormatFixed(cell->result->f_stat, 3));
        row.push_back(io::FormatFixed(cell->result->p_value, 3));
        row.push_back(IsSignificant(cell->result->p_value) ? "1" : "0");
      }
      out += csv::JoinRow(row) + "\n";
    }
  }
  return out;
}

std::string GrangerTableMarkdown(const Report& report) {
  const auto lags = LagColumns(report);
  std::vector<std::string> header = {"Project (Collection)", "NH"};
  for (int l : lags) {
    header.push_back(fmt::format("F-statistic (Lags: {})", l));
    header.push_back(fmt::format("P-value (Lags: {})", l));
  }
  std::string out = MarkdownHeader(header);
  out += ProjectRows(report, header.size(), HasGranger, [&](const ProjectReport& p) {
    std::string rows;
    for (auto d : {GrangerDirection::kTweetsToPrice,
                   GrangerDirection::kPriceToTweets}) {
      std::vector<std::string> row = {
          d == GrangerDirection::kTweetsToPrice ? p.project : "",
          std::string(HypothesisLabel(d))};
      for (int l : lags) {
        const auto* cell = FindCell(*p.granger, d, l);
        if (cell == nullptr || !cell->result) {
          row.insert(row.end(), 2, std::string(kAbsent));
          continue;
        }
        std::string f = io::FormatFixed(cell->result->f_stat, 3);
        std::string pv = FormatP(cell->result->p_value);
        if (IsSignificant(cell->result->p_value)) {
          f = "**" + f + "**";
          pv = "**" + pv + "**";
        }
        row.push_back(f);
        row.push_back(pv);
      }
      rows += MarkdownRow(row);
    }
    return rows;
  });
  return out;
}

std::string ExtractionTableCsv(const Report& report) {
  std::string out =
      "project,timeframes,length_days,features,word_mean_tfs,date_range\n";
  for (const auto* p : Ordered(report)) {
    if (!p->extraction) continue;
    const auto& e = *p->extraction;
    out += csv::JoinRow({p->project, std::to_string(e.timeframes),
                         std::to_string(e.frame_len_days),
                         std::to_string(e.features),
                         io::FormatFixed(e.word_mean_tfs, 2),
                         e.first_date + " to " + e.last_date}) +
           "\n";
  }
  return out;
}

std::string ExtractionTableMarkdown(const Report& report) {
  const std::vector<std::string> header = {
      "Project (Collection)", "Timeframes", "Length (Days)",
      "Features (Words)", "Word Mean # tfs", "Date of Data Duration"};
  return MarkdownHeader(header) +
         ProjectRows(report, header.size(), HasExtraction,
                     [](const ProjectReport& p) {
                       const auto& e = *p.extraction;
                       return MarkdownRow(
                           {p.project, std::to_string(e.timeframes),
                            std::to_string(e.frame_len_days),
                            std::to_string(e.features),
                            io::FormatFixed(e.word_mean_tfs, 2),
                            e.first_date + " to " + e.last_date});
                     });
}

std::string MetricsTableCsv(const Report& report) {
  std::string out = "project,train,test,n,acc,f1,mae\n";
  for (const auto* p : Ordered(report)) {
    if (!p->metrics) continue;
    const auto& m = p->metrics->metrics;
    out += csv::JoinRow({p->project, std::to_string(m.n_train),
                         std::to_string(m.n_test),
                         std::to_string(p->metrics->markov_window),
                         FormatMeanStd(m.accuracy), FormatMeanStd(m.f1),
                         FormatMeanStd(m.mae)}) +
           "\n";
  }
  return out;
}

std::string MetricsTableMarkdown(const Report& report) {
  const std::vector<std::string> header = {"Project (Collection)", "Train",
                                           "Test", "n", "Acc", "F1", "MAE"};
  return MarkdownHeader(header) +
         ProjectRows(report, header.size(), HasMetrics,
                     [](const ProjectReport& p) {
                       const auto& m = p.metrics->metrics;
                       return MarkdownRow(
                           {p.project, std::to_string(m.n_train),
                            std::to_string(m.n_test),
                            std::to_string(p.metrics->markov_window),
                            FormatMeanStd(m.accuracy), FormatMeanStd(m.f1),
                            FormatMeanStd(m.mae)});
                     });
}

std::string OverlapTableCsv(const OverlapReport& overlap) {
  std::string out = "bucket,words,share\n";
  for (const auto& b : overlap.buckets) {
    out += fmt::format("{},{},{}\n", b.label, b.words,
                       io::FormatDouble(b.share));
  }
  return out;
}

std::string OverlapTableMarkdown(const OverlapReport& overlap) {
  std::string out = fmt::format(
      "{} vocabularies, {} distinct words.\n\n", overlap.num_vocabs,
      overlap.union_size);
  out += MarkdownHeader({"Projects containing the word", "Words", "Share"});
  for (const auto& b : overlap.buckets) {
    out += MarkdownRow({b.label, std::to_string(b.words),
                        io::FormatFixed(100.0 * b.share, 1) + "%"});
  }
  return out;
}

std::string ImportanceMarkdown(const Report& report) {
  std::string out;
  for (const auto* p : Ordered(report)) {
    if (!p->importance) continue;
    out += "### " + p->project + "\n\n";
    if (p->importance->empty()) {
      out += "no features\n\n";
      continue;
    }
    out += MarkdownHeader({"Rank", "Top word", "Mean", "Variance",
                           "Bottom word", "Mean", "Variance"});
    const auto& top = p->importance->top;
    const auto& bottom = p->importance->bottom;
    for (std::size_t i = 0; i < std::max(top.size(), bottom.size()); ++i) {
      std::vector<std::string> row = {std::to_string(i + 1)};
      for (const auto* list : {&top, &bottom}) {
        if (i < list->size()) {
          row.push_back((*list)[i].word);
          row.push_back(io::FormatFixed((*list)[i].mean, 4));
          row.push_back(io::FormatFixed((*list)[i].variance, 6));
        } else {
          row.insert(row.end(), 3, "");
        }
      }
      out += MarkdownRow(row);
    }
    out += "\n";
  }
  return out;
}

std::string RenderMarkdown(const Report& report) {
  const auto any = [&](bool (*has)(const ProjectReport&)) {
    return std::any_of(report.projects.begin(), report.projects.end(),
                       [&](const auto& p) { return has(p); });
  };
  std::string out = "# NFT social signal report\n\n";
  if (any(HasGranger)) {
    out +=
        "## Granger causality (SSR F-test)\n\n"
        "NH A: tweet counts do not Granger-cause prices. NH B: prices do not "
        "Granger-cause tweet counts. Bold marks p < 0.05; \"-\" marks a "
        "series too short for the lag.\n\n" +
        GrangerTableMarkdown(report) + "\n";
  }
  if (any(HasExtraction)) {
    out += "## Event words\n\n" + ExtractionTableMarkdown(report) + "\n";
  }
  if (any(HasMetrics)) {
    out += "## Markov-normalized price prediction\n\n" +
           MetricsTableMarkdown(report) + "\n";
  }
  if (report.overlap) {
    out += "## Word overlap across projects\n\n" +
           OverlapTableMarkdown(*report.overlap) + "\n";
  }
  const bool has_importance =
      std::any_of(report.projects.begin(), report.projects.end(),
                  [](const auto& p) { return p.importance.has_value(); });
  if (has_importance) {
    out += "## Feature importance\n\n" + ImportanceMarkdown(report);
  }
  return out;
}

}  // namespace nftsignal
