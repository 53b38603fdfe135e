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

#include "hsd/trainer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "hsd/errors.hpp"
#include "hsd/layers.hpp"
#include "hsd/rng.hpp"

namespace hsd {

namespace {

constexpr std::uint64_t kShuffleSalt = 2;
constexpr std::uint64_t kDropoutSalt = 3;
constexpr std::size_t kEvalChunk = 256;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[best]) best = j;
  }
  return best;
}

LabeledSequences select_rows(const LabeledSequences& data, std::span<const std::size_t> rows) {
  LabeledSequences out;
  const std::size_t T = data.inputs.max_len;
  const std::size_t k = data.labels.classes;
  out.inputs.rows = rows.size();
  out.inputs.max_len = T;
  out.inputs.ids.resize(rows.size() * T);
  std::vector<std::size_t> indices(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(data.inputs.ids.begin() + rows[i] * T, T, out.inputs.ids.begin() + i * T);
    indices[i] = data.labels.indices[rows[i]];
  }
  out.labels = one_hot_indices(indices, k);
  return out;
}

void write_history_csv(std::ostream& out, const TrainHistory& history) {
  out << "epoch,train_loss,train_acc,val_loss,val_acc\n";
  for (const auto& e : history.epochs) {
    out << e.epoch << ',' << format_double(e.train_loss) << ',' << format_double(e.train_accuracy)
        << ',' << format_double(e.val_loss) << ',' << format_double(e.val_accuracy) << '\n';
  }
}

LossAccuracy evaluate_loss(const ModelParams& params, const ModelConfig& config,
                           const LabeledSequences& data, kernels::Exec exec) {
  const std::size_t n = data.size();
  if (n == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  double loss_sum = 0.0;
  std::size_t correct = 0;
  std::vector<std::size_t> rows;
  for (std::size_t start = 0; start < n; start += kEvalChunk) {
    const std::size_t end = std::min(n, start + kEvalChunk);
    rows.resize(end - start);
    std::iota(rows.begin(), rows.end(), start);
    const LabeledSequences chunk = select_rows(data, rows);
    const Tensor probs = model_forward(params, config, chunk.inputs, DropoutPlan{}, exec);
    for (std::size_t r = 0; r < chunk.size(); ++r) {
      loss_sum += row_cross_entropy(probs.row(r), chunk.labels.row(r), config.loss);
      if (argmax(probs.row(r)) == chunk.labels.indices[r]) ++correct;
    }
  }
  return {loss_sum / static_cast<double>(n),
          static_cast<double>(correct) / static_cast<double>(n)};
}

TrainResult train(const ModelConfig& config, const EmbeddingMatrix& embedding,
                  const LabeledSequences& train_set, const LabeledSequences& val_set,
                  const TrainOptions& options) {
  config.validate();
  if (train_set.inputs.max_len != config.max_len) {
    throw UsageError("training sequences are not padded to max_len");
  }
  if (train_set.size() == 0) throw UsageError("training set is empty");
  if (train_set.labels.classes != config.num_classes) {
    throw UsageError("label width does not match num_classes");
  }
  TrainResult result;
  result.params = init_params(config, embedding);
  AdamState state = adam_init(result.params, config.embedding_trainable);
  const AdamOptions adam{config.learning_rate};

  Rng shuffle_rng(Rng::mix(config.seed, kShuffleSalt));
  Rng dropout_rng(Rng::mix(config.seed, kDropoutSalt));
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    try {
      shuffle_rng.shuffle(std::span<std::size_t>(order));
      for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
        const std::size_t end = std::min(order.size(), start + config.batch_size);
        const LabeledSequences batch =
            select_rows(train_set, std::span<const std::size_t>(order).subspan(start, end - start));
        ForwardCache cache;
        model_forward(result.params, config, batch.inputs,
                      DropoutPlan{true, dropout_rng.next()}, options.exec, &cache);
        const ModelParams grads =
            backward(result.params, config, cache, batch.labels, options.exec);
        adam_step(result.params, grads, state, adam, options.exec);
      }
      EpochMetrics metrics;
      metrics.epoch = epoch;
      const auto tr = evaluate_loss(result.params, config, train_set, options.exec);
      const auto va = evaluate_loss(result.params, config, val_set, options.exec);
      metrics.train_loss = tr.loss;
      metrics.train_accuracy = tr.accuracy;
      metrics.val_loss = va.loss;
      metrics.val_accuracy = va.accuracy;
      if (!std::isfinite(metrics.train_loss)) {
        throw NumericError("non-finite training loss at epoch " + std::to_string(epoch));
      }
      result.history.epochs.push_back(metrics);
      if (options.on_epoch) options.on_epoch(metrics);
    } catch (const NumericError& e) {
      result.failure = e.what();
      break;
    }
  }
  return result;
}

Prediction predict(const ModelParams& params, const ModelConfig& config,
                   const SequenceBatch& batch, kernels::Exec exec) {
  Prediction out;
  out.probs = model_forward(params, config, batch, DropoutPlan{}, exec);
  out.labels.reserve(batch.rows);
  for (std::size_t r = 0; r < batch.rows; ++r) out.labels.push_back(argmax(out.probs.row(r)));
  return out;
}

}  // namespace hsd
