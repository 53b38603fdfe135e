// Copyright 2026 The hsd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hsd/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "hsd/csv.hpp"
#include "hsd/errors.hpp"

namespace hsd {

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (auto v : counts) t += v;
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t c) const {
  std::uint64_t t = 0;
  for (std::size_t j = 0; j < classes; ++j) t += at(c, j);
  return t;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t c) const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < classes; ++i) t += at(i, c);
  return t;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t c = 0; c < classes; ++c) t += at(c, c);
  return t;
}

ConfusionMatrix confusion(std::span<const std::size_t> truth,
                          std::span<const std::size_t> pred, std::size_t classes) {
  if (truth.size() != pred.size()) {
    throw DataError("confusion: " + std::to_string(truth.size()) + " true labels vs " +
                    std::to_string(pred.size()) + " predictions");
  }
  ConfusionMatrix m{classes, std::vector<std::uint64_t>(classes * classes, 0)};
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= classes || pred[i] >= classes) {
      throw DataError("confusion: class index out of range at row " + std::to_string(i + 1));
    }
    ++m.counts[truth[i] * classes + pred[i]];
  }
  return m;
}

EvaluationReport metrics(const ConfusionMatrix& matrix) {
  const std::size_t k = matrix.classes;
  if (matrix.total() == 0) throw DataError("metrics: confusion matrix is empty");
  EvaluationReport report;
  report.matrix = matrix;
  report.per_class.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::uint64_t tp = matrix.at(c, c);
    const std::uint64_t predicted = matrix.col_sum(c);
    const std::uint64_t actual = matrix.row_sum(c);
    ClassMetrics& m = report.per_class[c];
    m.support = actual;
    if (predicted > 0) {
      m.precision = static_cast<double>(tp) / static_cast<double>(predicted);
    } else {
      report.warnings.push_back("class " + std::to_string(c) +
                                ": no predictions, precision set to 0");
    }
    if (actual > 0) {
      m.recall = static_cast<double>(tp) / static_cast<double>(actual);
    } else {
      report.warnings.push_back("class " + std::to_string(c) + ": no support, recall set to 0");
    }
    // Harmonic mean of precision and recall, as an exact integer ratio.
    const std::uint64_t denom = predicted + actual;
    m.f1 = denom > 0 ? static_cast<double>(2 * tp) / static_cast<double>(denom) : 0.0;
  }
  for (const auto& m : report.per_class) {
    report.macro_precision += m.precision;
    report.macro_recall += m.recall;
    report.macro_f1 += m.f1;
  }
  report.macro_precision /= static_cast<double>(k);
  report.macro_recall /= static_cast<double>(k);
  report.macro_f1 /= static_cast<double>(k);
  report.accuracy = static_cast<double>(matrix.trace()) / static_cast<double>(matrix.total());
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "plain") return ReportFormat::kPlain;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown") return ReportFormat::kMarkdown;
  throw UsageError("unknown report format '" + std::string(name) +
                   "' (expected plain, csv or markdown)");
}

std::string_view file_extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kMarkdown: return "md";
    default: return "txt";
  }
}

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  // Avoid "-0.00" for tiny negatives.
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string exact(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

using Grid = std::vector<std::vector<std::string>>;

// First row is the header. `numeric_from` marks the first right-aligned
// column.
std::string render_grid(const Grid& grid, ReportFormat format, std::size_t numeric_from) {
  std::string out;
  if (format == ReportFormat::kCsv) {
    for (const auto& row : grid) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out += ',';
        out += csv::escape(row[c]);
      }
      out += '\n';
    }
    return out;
  }
  std::vector<std::size_t> width(grid.front().size(), 0);
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto pad = [&](const std::string& s, std::size_t c) {
    const std::string fill(width[c] - s.size(), ' ');
    return c >= numeric_from ? fill + s : s + fill;
  };
  if (format == ReportFormat::kMarkdown) {
    for (std::size_t r = 0; r < grid.size(); ++r) {
      out += '|';
      for (std::size_t c = 0; c < grid[r].size(); ++c) out += ' ' + pad(grid[r][c], c) + " |";
      out += '\n';
      if (r == 0) {
        out += '|';
        for (std::size_t c = 0; c < width.size(); ++c) {
          const std::size_t w = std::max<std::size_t>(width[c], 3);
          out += c >= numeric_from ? ' ' + std::string(w - 1, '-') + ": |"
                                   : ' ' + std::string(w, '-') + " |";
        }
        out += '\n';
      }
    }
    return out;
  }
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      if (c > 0) line += "  ";
      line += pad(grid[r][c], c);
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out += line + '\n';
    if (r == 0) {
      std::string rule;
      for (std::size_t c = 0; c < width.size(); ++c) {
        if (c > 0) rule += "  ";
        rule += std::string(width[c], '-');
      }
      out += rule + '\n';
    }
  }
  return out;
}

}  // namespace

std::string render_report(std::span<const NamedReport> reports, const LabelSchema& schema,
                          ReportFormat format) {
  const bool csv_out = format == ReportFormat::kCsv;
  auto value = [&](double v) { return csv_out ? exact(v) : fixed(v, 2); };

  Grid grid;
  std::vector<std::string> header = {"Metric", "Class"};
  for (const auto& r : reports) header.push_back(r.model);
  grid.push_back(header);

  struct Field {
    const char* name;
    double ClassMetrics::*member;
  };
  const Field fields[] = {{"Precision", &ClassMetrics::precision},
                          {"Recall", &ClassMetrics::recall},
                          {"F1 Score", &ClassMetrics::f1}};
  for (const auto& field : fields) {
    for (std::size_t c = 0; c < schema.size(); ++c) {
      std::vector<std::string> row = {field.name, schema.classes()[c]};
      for (const auto& r : reports) row.push_back(value(r.report.per_class.at(c).*field.member));
      grid.push_back(row);
    }
  }
  for (std::size_t c = 0; c < schema.size(); ++c) {
    std::vector<std::string> row = {"Support", schema.classes()[c]};
    for (const auto& r : reports) row.push_back(std::to_string(r.report.per_class.at(c).support));
    grid.push_back(row);
  }
  auto summary = [&](const char* name, double EvaluationReport::*member) {
    std::vector<std::string> row = {name, csv_out ? "all" : ""};
    for (const auto& r : reports) row.push_back(value(r.report.*member));
    grid.push_back(row);
  };
  summary("Accuracy", &EvaluationReport::accuracy);
  summary("Average Precision", &EvaluationReport::macro_precision);
  summary("Average Recall", &EvaluationReport::macro_recall);
  summary("Average F1 Score", &EvaluationReport::macro_f1);
  return render_grid(grid, format, 2);
}

std::string render_confusion(const ConfusionMatrix& matrix, const LabelSchema& schema,
                             ReportFormat format) {
  Grid grid;
  std::vector<std::string> header = {"true \\ predicted"};
  for (const auto& cls : schema.classes()) header.push_back(cls);
  grid.push_back(header);
  for (std::size_t i = 0; i < matrix.classes; ++i) {
    std::vector<std::string> row = {schema.classes().at(i)};
    for (std::size_t j = 0; j < matrix.classes; ++j) row.push_back(std::to_string(matrix.at(i, j)));
    grid.push_back(row);
  }
  return render_grid(grid, format, 1);
}

std::span<const BaselineRow> baseline_table() {
  static const BaselineRow rows[] = {
      {"english", 0.820, 0.825, 0.823},
      {"italian", 0.803, 0.806, 0.805},
      {"german", 0.754, 0.762, 0.758},
      {"bengali", std::nullopt, std::nullopt, std::nullopt},
  };
  return rows;
}

BaselineComparison compare_to_baseline(const EvaluationReport& report,
                                       std::string_view language) {
  for (const auto& row : baseline_table()) {
    if (row.language != language) continue;
    BaselineComparison cmp;
    cmp.language = row.language;
    cmp.available = row.f1.has_value();
    auto add = [&](const char* metric, double ours, std::optional<double> base) {
      DeltaRow d{metric, ours, base, std::nullopt};
      if (base) d.delta = ours - *base;
      cmp.rows.push_back(d);
    };
    add("Average Precision", report.macro_precision, row.precision);
    add("Average Recall", report.macro_recall, row.recall);
    add("Average F1 Score", report.macro_f1, row.f1);
    return cmp;
  }
  throw UsageError("no baseline entry for language '" + std::string(language) +
                   "' (expected english, italian, german or bengali)");
}

std::string render_comparison(const BaselineComparison& cmp, ReportFormat format) {
  const bool csv_out = format == ReportFormat::kCsv;
  Grid grid;
  grid.push_back({"Metric", "Ours", "Baseline", "Delta"});
  for (const auto& row : cmp.rows) {
    grid.push_back({row.metric, csv_out ? exact(row.ours) : fixed(row.ours, 2),
                    row.baseline ? (csv_out ? exact(*row.baseline) : fixed(*row.baseline, 3))
                                 : "unavailable",
                    row.delta ? (csv_out ? exact(*row.delta) : fixed(*row.delta, 3)) : ""});
  }
  if (csv_out) return render_grid(grid, format, 1);
  std::string title = "Baseline comparison (" + cmp.language + ")";
  if (!cmp.available) title += ": baseline unavailable";
  return title + "\n\n" + render_grid(grid, format, 1);
}

void write_predictions_csv(std::ostream& out, std::span<const PredictionRecord> records) {
  out << "id,true_label,pred_label\n";
  for (const auto& r : records) {
    const std::string fields[] = {r.id, r.true_label, r.pred_label};
    csv::write_row(out, fields);
  }
}

std::vector<PredictionRecord> read_predictions_csv(const std::filesystem::path& path) {
  const csv::Table table = csv::read_file(path);
  const auto id = table.column("id");
  const auto truth = table.column("true_label");
  const auto pred = table.column("pred_label");
  if (!id || !truth || !pred) {
    throw DataError(path.string() + ": expected columns id,true_label,pred_label");
  }
  std::vector<PredictionRecord> out;
  out.reserve(table.rows.size());
  for (const auto& rec : table.rows) out.push_back({rec[*id], rec[*truth], rec[*pred]});
  return out;
}

EvaluationReport evaluate_records(std::span<const PredictionRecord> records,
                                  const LabelSchema& schema) {
  std::vector<std::size_t> truth;
  std::vector<std::size_t> pred;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto t = schema.index_of(records[i].true_label);
    if (!t) throw UnknownLabelError(i + 1, records[i].true_label);
    const auto p = schema.index_of(records[i].pred_label);
    if (!p) throw UnknownLabelError(i + 1, records[i].pred_label);
    truth.push_back(*t);
    pred.push_back(*p);
  }
  return metrics(confusion(truth, pred, schema.size()));
}

}  // namespace hsd
