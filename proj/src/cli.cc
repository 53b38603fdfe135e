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

#include "hsd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "hsd/checkpoint.hpp"
#include "hsd/csv.hpp"
#include "hsd/data.hpp"
#include "hsd/embed.hpp"
#include "hsd/errors.hpp"
#include "hsd/eval.hpp"
#include "hsd/kernels.hpp"
#include "hsd/keyvalue.hpp"
#include "hsd/model.hpp"
#include "hsd/preprocess.hpp"
#include "hsd/rng.hpp"
#include "hsd/tokenize.hpp"
#include "hsd/trainer.hpp"

namespace hsd::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSplitSalt = 4;
constexpr std::uint64_t kEmbeddingSalt = 5;

constexpr const char* kCheckpointFile = "model.ckpt";
constexpr const char* kVocabFile = "vocab.tsv";
constexpr const char* kHistoryFile = "history.csv";

// Re-raises a library error with the pipeline stage prepended, keeping the
// exit code.
template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

void require_file(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) {
    throw DataError(std::string(what) + " '" + path + "' does not exist");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

template <typename Writer>
void write_with(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  writer(out);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

// Fills every option the command line left unset from a key=value file.
// Keys are long option names without the leading dashes.
void apply_config_file(CLI::App& cmd, const std::string& path) {
  if (path.empty()) return;
  require_file(path, "config file");
  const kv::Entries entries = kv::read_file(path);
  for (const auto& [key, value] : entries.items()) {
    CLI::Option* opt = cmd.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw UsageError(path + ": unknown key '" + key + "' for '" + cmd.get_name() + "'");
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    try {
      opt->run_callback();
    } catch (const CLI::ParseError& e) {
      throw UsageError(path + ": bad value for '" + key + "': " + e.what());
    }
  }
}

struct Common {
  std::string config;
  std::string out_dir;
  int threads = 0;
  std::string exec = "parallel";
  bool quiet = false;

  kernels::Exec execution() const {
    return exec == "serial" ? kernels::Exec::kSerial : kernels::Exec::kParallel;
  }

  fs::path output_dir() const {
    fs::path dir = out_dir;
    if (dir.empty()) {
      const char* env = std::getenv(kOutputDirEnv);
      dir = env != nullptr && *env != '\0' ? fs::path(env) : fs::path("hsd-out");
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory '" + dir.string() + "'");
    return dir;
  }
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--config", c.config, "key=value file; command-line flags take precedence");
  cmd.add_option("--out-dir", c.out_dir,
                 std::string("output directory (default: $") + kOutputDirEnv + " or ./hsd-out)");
  cmd.add_option("--threads", c.threads, "OpenMP threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--exec", c.exec, "kernel execution")
      ->check(CLI::IsMember({"serial", "parallel"}));
  cmd.add_flag("--quiet", c.quiet, "suppress progress output");
}

// Texts come from the `text` column; labels from `label` when present.
struct TextTable {
  std::vector<std::string> texts;
  std::vector<std::string> labels;
};

TextTable read_text_table(const std::string& path, bool need_labels) {
  require_file(path, "input file");
  const csv::Table table = csv::read_file(path);
  const auto text_col = table.column("text");
  if (!text_col) throw DataError(path + ": missing column 'text'");
  const auto label_col = table.column("label");
  if (need_labels && !label_col) throw DataError(path + ": missing column 'label'");
  TextTable out;
  for (const auto& rec : table.rows) {
    out.texts.push_back(rec[*text_col]);
    if (label_col) out.labels.push_back(rec[*label_col]);
  }
  return out;
}

// ---------------------------------------------------------------- preprocess

struct PreprocessArgs {
  Common common;
  std::string in;
  std::string out;
  std::string dataset;
  std::string clean_mode = "basic";
};

void cmd_preprocess(const PreprocessArgs& a, std::ostream& out, std::ostream& err) {
  const CleanMode mode = parse_clean_mode(a.clean_mode);
  require_file(a.in, "input file");

  std::vector<RawTweet> raw;
  if (!a.dataset.empty()) {
    const DatasetManifest manifest = resolve_manifest(a.dataset);
    LoadedDataset loaded = load_csv(fs::path(a.in), manifest);
    for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
    raw = std::move(loaded.rows);
  } else {
    TextTable t = read_text_table(a.in, true);
    for (std::size_t i = 0; i < t.texts.size(); ++i) raw.push_back({t.texts[i], t.labels[i]});
  }
  const CleanedDataset cleaned = stage("clean", [&] { return clean_dataset(raw, mode); });

  const fs::path dest = a.out.empty() ? a.common.output_dir() / "clean.csv" : fs::path(a.out);
  write_with(dest, [&](std::ostream& o) { write_dataset_csv(o, cleaned.rows); });

  kv::Entries summary;
  summary.set("input", a.in);
  summary.set("output", dest.string());
  summary.set("clean_mode", std::string(to_string(mode)));
  summary.set("rows", std::to_string(cleaned.summary.rows));
  summary.set("emptied_rows", std::to_string(cleaned.summary.emptied.size()));
  std::vector<std::string> emptied;
  for (auto idx : cleaned.summary.emptied) emptied.push_back(std::to_string(idx + 1));
  summary.set("emptied", join(emptied, ','));
  const std::string text = kv::format(summary);
  write_text(dest.string() + ".summary", text);
  out << text;
}

// ---------------------------------------------------------------- fit-vocab

struct FitVocabArgs {
  Common common;
  std::string in;
  std::string out;
  std::size_t max_words = kDefaultMaxWords;
};

void cmd_fit_vocab(const FitVocabArgs& a, std::ostream& out) {
  const TextTable t = read_text_table(a.in, false);
  const Vocabulary vocab =
      stage("vocabulary", [&] { return Vocabulary::fit(t.texts, a.max_words); });
  const fs::path dest = a.out.empty() ? a.common.output_dir() / kVocabFile : fs::path(a.out);
  vocab.save(dest);
  out << "words=" << vocab.size() << "\nfingerprint=" << hex(vocab.fingerprint())
      << "\noutput=" << dest.string() << '\n';
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  Common common;
  std::string data;
  std::string dataset;
  std::string clean_mode = "basic";
  std::size_t max_words = kDefaultMaxWords;
  std::string embeddings;
  bool freeze_embedding = false;
  bool stratify = false;
  std::string arch = "lstm";
  std::string activation = "softmax";
  std::string loss;
  ModelConfig model;
};

LabeledSequences encode(const Vocabulary& vocab, const std::vector<CleanTweet>& rows,
                        const LabelSchema& schema, std::size_t max_len) {
  std::vector<std::string> texts;
  std::vector<std::string> labels;
  for (const auto& r : rows) {
    texts.push_back(r.text);
    labels.push_back(r.label);
  }
  LabeledSequences out;
  out.inputs = pad_sequences(texts_to_sequences(vocab, texts), max_len);
  out.labels = one_hot(labels, schema);
  return out;
}

void cmd_train(TrainArgs a, std::ostream& out, std::ostream& err) {
  require_file(a.data, "dataset file");
  if (!a.embeddings.empty()) require_file(a.embeddings, "embeddings file");
  if (a.dataset.empty()) throw UsageError("train: --dataset is required");
  const CleanMode mode = parse_clean_mode(a.clean_mode);
  const fs::path dir = a.common.output_dir();

  const DatasetManifest manifest = stage("load", [&] { return resolve_manifest(a.dataset); });
  LoadedDataset loaded = stage("load", [&] { return load_csv(fs::path(a.data), manifest); });
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';

  const CleanedDataset cleaned = stage("clean", [&] { return clean_dataset(loaded.rows, mode); });
  const DatasetSplit split = stage("split", [&] {
    return split_dataset(cleaned.rows, Rng::mix(a.model.seed, kSplitSalt), a.stratify);
  });
  write_with(dir / "train.csv", [&](std::ostream& o) { write_dataset_csv(o, split.train.rows); });
  write_with(dir / "val.csv", [&](std::ostream& o) { write_dataset_csv(o, split.val.rows); });
  write_with(dir / "test.csv", [&](std::ostream& o) { write_dataset_csv(o, split.test.rows); });

  std::vector<std::string> train_texts;
  for (const auto& r : split.train.rows) train_texts.push_back(r.text);
  const Vocabulary vocab =
      stage("vocabulary", [&] { return Vocabulary::fit(train_texts, a.max_words); });
  vocab.save(dir / kVocabFile);

  ModelConfig cfg = a.model;
  cfg.arch = parse_arch(a.arch);
  cfg.output_activation = parse_activation(a.activation);
  cfg.loss = a.loss.empty() ? (cfg.output_activation == OutputActivation::kSigmoid
                                   ? LossKind::kBinaryCrossEntropy
                                   : LossKind::kCategoricalCrossEntropy)
                            : parse_loss(a.loss);
  cfg.num_classes = manifest.schema.size();
  cfg.vocab_size = vocab.size();
  cfg.embedding_trainable = !a.freeze_embedding;

  const EmbeddingMatrix embedding = stage("embedding", [&] {
    if (a.embeddings.empty()) {
      return random_matrix(vocab, cfg.embedding_dim, Rng::mix(cfg.seed, kEmbeddingSalt));
    }
    const WordVectors vectors = load_vec_file(a.embeddings);
    return build_matrix(vocab, vectors);
  });
  cfg.embedding_dim = embedding.dim;
  if (!a.embeddings.empty() && !a.common.quiet) {
    err << "embedding coverage " << shortest(embedding.coverage) << " ("
        << embedding.words_not_found.size() << " words not found)\n";
  }
  stage("config", [&] { cfg.validate(); });

  const LabeledSequences train_set = stage("encode", [&] {
    return encode(vocab, split.train.rows, manifest.schema, cfg.max_len);
  });
  const LabeledSequences val_set = stage("encode", [&] {
    return encode(vocab, split.val.rows, manifest.schema, cfg.max_len);
  });

  TrainOptions options;
  options.exec = a.common.execution();
  if (!a.common.quiet) {
    options.on_epoch = [&](const EpochMetrics& m) {
      err << "epoch " << m.epoch << "/" << cfg.epochs << " loss " << shortest(m.train_loss)
          << " acc " << shortest(m.train_accuracy) << " val_loss " << shortest(m.val_loss)
          << " val_acc " << shortest(m.val_accuracy) << '\n';
    };
  }
  TrainResult result =
      stage("train", [&] { return train(cfg, embedding, train_set, val_set, options); });
  write_with(dir / kHistoryFile, [&](std::ostream& o) { write_history_csv(o, result.history); });
  if (result.failure) throw NumericError("train: " + *result.failure);

  Checkpoint ckpt;
  ckpt.config = cfg;
  ckpt.params = std::move(result.params);
  ckpt.metadata.set("dataset", manifest.name);
  ckpt.metadata.set("classes", join(manifest.schema.classes(), ','));
  ckpt.metadata.set("clean_mode", std::string(to_string(mode)));
  ckpt.metadata.set("vocab_hash", hex(vocab.fingerprint()));
  ckpt.metadata.set("max_words", std::to_string(a.max_words));
  save_checkpoint(dir / kCheckpointFile, ckpt);

  out << "rows=" << loaded.rows.size() << "\ntrain=" << split.train.rows.size()
      << "\nval=" << split.val.rows.size() << "\ntest=" << split.test.rows.size()
      << "\nvocabulary=" << vocab.size() << "\nparameters=" << parameter_count(ckpt.params, true)
      << "\noutput=" << dir.string() << '\n';
}

// ---------------------------------------------------------------- inference

struct ModelArgs {
  std::string model_dir;
  std::string checkpoint;
  std::string vocab;
};

void add_model_options(CLI::App& cmd, ModelArgs& m) {
  cmd.add_option("--model", m.model_dir, "directory holding model.ckpt and vocab.tsv");
  cmd.add_option("--checkpoint", m.checkpoint, "checkpoint path (overrides --model)");
  cmd.add_option("--vocab", m.vocab, "vocabulary path (overrides --model)");
}

struct LoadedModel {
  Checkpoint ckpt;
  Vocabulary vocab;
  LabelSchema schema;
  CleanMode clean_mode = CleanMode::kBasic;
};

LoadedModel load_model(const ModelArgs& m) {
  const fs::path base = m.model_dir.empty() ? fs::path(".") : fs::path(m.model_dir);
  const std::string ckpt_path =
      m.checkpoint.empty() ? (base / kCheckpointFile).string() : m.checkpoint;
  const std::string vocab_path = m.vocab.empty() ? (base / kVocabFile).string() : m.vocab;
  require_file(ckpt_path, "checkpoint");
  require_file(vocab_path, "vocabulary");

  LoadedModel lm;
  lm.ckpt = load_checkpoint(fs::path(ckpt_path));
  lm.vocab = Vocabulary::load(fs::path(vocab_path));
  const kv::Entries& meta = lm.ckpt.metadata;
  const std::string expected = meta.require("vocab_hash");
  const std::string actual = hex(lm.vocab.fingerprint());
  if (expected != actual) {
    throw DataError("vocabulary '" + vocab_path + "' (hash " + actual +
                    ") does not match checkpoint '" + ckpt_path + "' (hash " + expected + ")");
  }
  lm.schema = LabelSchema(meta.require("dataset"), split(meta.require("classes"), ','));
  if (lm.schema.size() != lm.ckpt.config.num_classes) {
    throw DataError(ckpt_path + ": class list does not match the output layer");
  }
  lm.clean_mode = parse_clean_mode(meta.require("clean_mode"));
  return lm;
}

// Applies the training-time cleaning and vocabulary, then runs the model.
Prediction run_model(const LoadedModel& lm, const std::vector<std::string>& texts,
                     kernels::Exec exec) {
  std::vector<std::string> cleaned;
  cleaned.reserve(texts.size());
  for (const auto& t : texts) cleaned.push_back(clean(t, lm.clean_mode));
  const SequenceBatch batch =
      pad_sequences(texts_to_sequences(lm.vocab, cleaned), lm.ckpt.config.max_len);
  return predict(lm.ckpt.params, lm.ckpt.config, batch, exec);
}

struct EvaluateArgs {
  Common common;
  ModelArgs model;
  std::string test;
  std::vector<std::string> formats = {"plain"};
  std::string language;
  std::string name;
};

void cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const LoadedModel lm = stage("load model", [&] { return load_model(a.model); });
  const std::string test_path =
      a.test.empty()
          ? ((a.model.model_dir.empty() ? fs::path(".") : fs::path(a.model.model_dir)) / "test.csv")
                .string()
          : a.test;
  const TextTable t = stage("load test set", [&] { return read_text_table(test_path, true); });
  if (t.texts.empty()) throw DataError(test_path + ": no rows to evaluate");

  const Prediction pred = stage("predict", [&] { return run_model(lm, t.texts, a.common.execution()); });
  std::vector<PredictionRecord> records;
  for (std::size_t i = 0; i < t.texts.size(); ++i) {
    records.push_back({std::to_string(i + 1), t.labels[i], lm.schema.classes()[pred.labels[i]]});
  }
  const EvaluationReport report =
      stage("evaluate", [&] { return evaluate_records(records, lm.schema); });

  const std::string model_name =
      a.name.empty() ? std::string(to_string(lm.ckpt.config.arch)) : a.name;
  const std::string language = a.language.empty() ? lm.schema.name() : a.language;
  std::optional<BaselineComparison> comparison;
  if (find_builtin_manifest(language)) {
    comparison = compare_to_baseline(report, language);
  } else if (!a.language.empty()) {
    comparison = compare_to_baseline(report, language);  // raises UsageError
  }

  const fs::path dir = a.common.output_dir();
  write_with(dir / "predictions.csv", [&](std::ostream& o) { write_predictions_csv(o, records); });
  const NamedReport named[] = {{model_name, report}};
  for (const auto& f : a.formats) {
    const ReportFormat format = parse_report_format(f);
    const std::string ext(file_extension(format));
    write_text(dir / ("report." + ext), render_report(named, lm.schema, format));
    write_text(dir / ("confusion." + ext), render_confusion(report.matrix, lm.schema, format));
    if (comparison) write_text(dir / ("baseline." + ext), render_comparison(*comparison, format));
  }
  out << render_report(named, lm.schema, ReportFormat::kPlain) << '\n'
      << render_confusion(report.matrix, lm.schema, ReportFormat::kPlain);
  if (comparison) out << '\n' << render_comparison(*comparison, ReportFormat::kPlain);
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
}

struct PredictArgs {
  Common common;
  ModelArgs model;
  std::string in;
  std::string out;
};

void cmd_predict(const PredictArgs& a, std::ostream& out) {
  const LoadedModel lm = stage("load model", [&] { return load_model(a.model); });
  const TextTable t = stage("load input", [&] { return read_text_table(a.in, false); });
  const Prediction pred = stage("predict", [&] { return run_model(lm, t.texts, a.common.execution()); });

  const fs::path dest =
      a.out.empty() ? a.common.output_dir() / "predictions.csv" : fs::path(a.out);
  write_with(dest, [&](std::ostream& o) {
    std::vector<std::string> header = {"text", "pred_label"};
    for (const auto& cls : lm.schema.classes()) header.push_back("p_" + cls);
    csv::write_row(o, header);
    for (std::size_t i = 0; i < t.texts.size(); ++i) {
      std::vector<std::string> row = {t.texts[i], lm.schema.classes()[pred.labels[i]]};
      for (std::size_t c = 0; c < lm.schema.size(); ++c) row.push_back(shortest(pred.probs.at(i, c)));
      csv::write_row(o, row);
    }
  });
  out << "rows=" << t.texts.size() << "\noutput=" << dest.string() << '\n';
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  Common common;
  std::vector<std::string> predictions;  // NAME=PATH or PATH
  std::string dataset;
  std::string format = "plain";
  std::string language;
  std::string out;
};

void cmd_report(const ReportArgs& a, std::ostream& out) {
  if (a.dataset.empty()) throw UsageError("report: --dataset is required");
  const DatasetManifest manifest = resolve_manifest(a.dataset);
  const ReportFormat format = parse_report_format(a.format);

  std::vector<NamedReport> reports;
  for (const auto& arg : a.predictions) {
    const auto eq = arg.find('=');
    std::string name = eq == std::string::npos ? fs::path(arg).stem().string() : arg.substr(0, eq);
    const std::string path = eq == std::string::npos ? arg : arg.substr(eq + 1);
    require_file(path, "predictions file");
    const auto records = read_predictions_csv(path);
    if (records.empty()) throw DataError(path + ": no predictions");
    reports.push_back({name, stage("evaluate", [&] {
                         return evaluate_records(records, manifest.schema);
                       })});
  }
  std::string text = render_report(reports, manifest.schema, format);
  if (!a.language.empty()) {
    for (const auto& r : reports) {
      BaselineComparison cmp = compare_to_baseline(r.report, a.language);
      text += '\n';
      if (format != ReportFormat::kCsv) text += r.model + ": ";
      text += render_comparison(cmp, format);
    }
  }
  if (a.out.empty()) {
    out << text;
  } else {
    write_text(a.out, text);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hate speech classification pipeline", "hsd"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every command");

  PreprocessArgs pre;
  auto* pre_cmd = app.add_subcommand("preprocess", "clean a raw text,label CSV");
  add_common(*pre_cmd, pre.common);
  pre_cmd->add_option("--in", pre.in, "raw CSV with text and label columns")->required();
  pre_cmd->add_option("--out", pre.out, "cleaned CSV (default: <out-dir>/clean.csv)");
  pre_cmd->add_option("--dataset", pre.dataset, "built-in dataset name or manifest file");
  pre_cmd->add_option("--clean-mode", pre.clean_mode, "basic or rich");

  FitVocabArgs fit;
  auto* fit_cmd = app.add_subcommand("fit-vocab", "fit a vocabulary on a CSV text column");
  add_common(*fit_cmd, fit.common);
  fit_cmd->add_option("--in", fit.in, "CSV with a text column")->required();
  fit_cmd->add_option("--out", fit.out, "vocabulary TSV (default: <out-dir>/vocab.tsv)");
  fit_cmd->add_option("--max-words", fit.max_words, "vocabulary cap")->check(CLI::PositiveNumber);

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "split, fit vocabulary, embed and train");
  add_common(*train_cmd, tr.common);
  train_cmd->add_option("--data", tr.data, "raw CSV with text and label columns");
  train_cmd->add_option("--dataset", tr.dataset, "built-in dataset name or manifest file");
  train_cmd->add_option("--clean-mode", tr.clean_mode, "basic or rich");
  train_cmd->add_option("--max-words", tr.max_words, "vocabulary cap")->check(CLI::PositiveNumber);
  train_cmd->add_option("--max-len", tr.model.max_len, "sequence length")->check(CLI::PositiveNumber);
  train_cmd->add_option("--embeddings", tr.embeddings, "pretrained .vec file");
  train_cmd->add_option("--embedding-dim", tr.model.embedding_dim,
                        "random embedding width when no .vec file is given")
      ->check(CLI::PositiveNumber);
  train_cmd->add_flag("--freeze-embedding", tr.freeze_embedding, "keep the embedding fixed");
  train_cmd->add_option("--arch", tr.arch, "lstm or bilstm");
  train_cmd->add_option("--hidden", tr.model.hidden_units, "LSTM units")->check(CLI::PositiveNumber);
  train_cmd->add_option("--dropout", tr.model.dropout_rate, "input dropout rate");
  train_cmd->add_option("--recurrent-dropout", tr.model.recurrent_dropout_rate,
                        "recurrent dropout rate");
  train_cmd->add_option("--activation", tr.activation, "softmax or sigmoid");
  train_cmd->add_option("--loss", tr.loss, "categorical-ce or binary-ce");
  train_cmd->add_option("--epochs", tr.model.epochs, "training epochs");
  train_cmd->add_option("--batch-size", tr.model.batch_size, "minibatch size")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", tr.model.learning_rate, "Adam learning rate");
  train_cmd->add_option("--seed", tr.model.seed, "seed for split, init, shuffle and dropout");
  train_cmd->add_flag("--stratify", tr.stratify, "split each class separately");

  EvaluateArgs ev;
  auto* eval_cmd = app.add_subcommand("evaluate", "score a trained model on its test split");
  add_common(*eval_cmd, ev.common);
  add_model_options(*eval_cmd, ev.model);
  eval_cmd->add_option("--test", ev.test, "text,label CSV (default: <model>/test.csv)");
  eval_cmd->add_option("--format", ev.formats, "plain, csv and/or markdown")->delimiter(',');
  eval_cmd->add_option("--language", ev.language, "baseline row to compare against");
  eval_cmd->add_option("--name", ev.name, "model column name (default: architecture)");

  PredictArgs pr;
  auto* pred_cmd = app.add_subcommand("predict", "label texts with a trained model");
  add_common(*pred_cmd, pr.common);
  add_model_options(*pred_cmd, pr.model);
  pred_cmd->add_option("--in", pr.in, "CSV with a text column")->required();
  pred_cmd->add_option("--out", pr.out, "output CSV (default: <out-dir>/predictions.csv)");

  ReportArgs rep;
  auto* rep_cmd = app.add_subcommand("report", "compare prediction files side by side");
  add_common(*rep_cmd, rep.common);
  rep_cmd->add_option("predictions", rep.predictions, "[NAME=]predictions.csv")->required();
  rep_cmd->add_option("--dataset", rep.dataset, "built-in dataset name or manifest file");
  rep_cmd->add_option("--format", rep.format, "plain, csv or markdown");
  rep_cmd->add_option("--language", rep.language, "append a baseline comparison");
  rep_cmd->add_option("--out", rep.out, "write to a file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 1;
  }

  try {
    const std::pair<CLI::App*, Common*> commands[] = {{pre_cmd, &pre.common},
                                                      {fit_cmd, &fit.common},
                                                      {train_cmd, &tr.common},
                                                      {eval_cmd, &ev.common},
                                                      {pred_cmd, &pr.common},
                                                      {rep_cmd, &rep.common}};
    for (const auto& [cmd, common] : commands) {
      if (!cmd->parsed()) continue;
      apply_config_file(*cmd, common->config);
      if (common->threads > 0) kernels::set_threads(common->threads);
    }
    if (pre_cmd->parsed()) {
      cmd_preprocess(pre, out, err);
    } else if (fit_cmd->parsed()) {
      cmd_fit_vocab(fit, out);
    } else if (train_cmd->parsed()) {
      if (tr.data.empty()) throw UsageError("train: --data is required");
      cmd_train(tr, out, err);
    } else if (eval_cmd->parsed()) {
      cmd_evaluate(ev, out);
    } else if (pred_cmd->parsed()) {
      cmd_predict(pr, out);
    } else if (rep_cmd->parsed()) {
      cmd_report(rep, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return static_cast<int>(ErrorKind::kData);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kData);
  }
  return 0;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace hsd::cli
