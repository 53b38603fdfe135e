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

#ifndef HSD_EVAL_HPP_
#define HSD_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsd/tokenize.hpp"

namespace hsd {

// counts[i * k + j]: rows of true class i predicted as class j.
struct ConfusionMatrix {
  std::size_t classes = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::size_t truth, std::size_t pred) const {
    return counts[truth * classes + pred];
  }
  std::uint64_t total() const;
  std::uint64_t row_sum(std::size_t c) const;
  std::uint64_t col_sum(std::size_t c) const;
  std::uint64_t trace() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const std::size_t> truth,
                          std::span<const std::size_t> pred, std::size_t classes);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct EvaluationReport {
  std::vector<ClassMetrics> per_class;
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  ConfusionMatrix matrix;
  // Zero-denominator notices; the affected metric is reported as 0.
  std::vector<std::string> warnings;
};

// Per-class precision/recall/F1 from the matrix, accuracy = trace/total and
// unweighted class means. Throws DataError on an empty matrix.
EvaluationReport metrics(const ConfusionMatrix& matrix);

enum class ReportFormat { kPlain, kCsv, kMarkdown };
ReportFormat parse_report_format(std::string_view name);
std::string_view file_extension(ReportFormat format);

struct NamedReport {
  std::string model;
  EvaluationReport report;
};

// Metric x class table with one column per model. Plain and markdown print
// two decimals; CSV prints shortest round-trip values.
std::string render_report(std::span<const NamedReport> reports, const LabelSchema& schema,
                          ReportFormat format);
std::string render_confusion(const ConfusionMatrix& matrix, const LabelSchema& schema,
                             ReportFormat format);

// Average precision/recall/F1 of the reference multilingual FastText+LSTM
// system. Bengali has no reference row.
struct BaselineRow {
  std::string language;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

std::span<const BaselineRow> baseline_table();

struct DeltaRow {
  std::string metric;
  double ours = 0.0;
  std::optional<double> baseline;
  std::optional<double> delta;
};

struct BaselineComparison {
  std::string language;
  bool available = false;
  std::vector<DeltaRow> rows;
};

// Throws UsageError for a language outside the built-in table.
BaselineComparison compare_to_baseline(const EvaluationReport& report, std::string_view language);
std::string render_comparison(const BaselineComparison& comparison, ReportFormat format);

// Predictions interchange file: `id,true_label,pred_label`.
struct PredictionRecord {
  std::string id;
  std::string true_label;
  std::string pred_label;
};

void write_predictions_csv(std::ostream& out, std::span<const PredictionRecord> records);
std::vector<PredictionRecord> read_predictions_csv(const std::filesystem::path& path);

// Maps labels through `schema`; unknown labels raise UnknownLabelError.
EvaluationReport evaluate_records(std::span<const PredictionRecord> records,
                                  const LabelSchema& schema);

}  // namespace hsd

#endif  // HSD_EVAL_HPP_
