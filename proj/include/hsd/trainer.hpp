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

#ifndef HSD_TRAINER_HPP_
#define HSD_TRAINER_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hsd/embed.hpp"
#include "hsd/kernels.hpp"
#include "hsd/model.hpp"
#include "hsd/optimizer.hpp"
#include "hsd/tokenize.hpp"

namespace hsd {

struct LabeledSequences {
  SequenceBatch inputs;
  OneHotLabels labels;

  std::size_t size() const { return inputs.rows; }
};

LabeledSequences select_rows(const LabeledSequences& data, std::span<const std::size_t> rows);

struct EpochMetrics {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainHistory {
  std::vector<EpochMetrics> epochs;
};

// CSV with header `epoch,train_loss,train_acc,val_loss,val_acc`, values in
// shortest round-trip form.
void write_history_csv(std::ostream& out, const TrainHistory& history);

struct TrainOptions {
  kernels::Exec exec = kernels::Exec::kParallel;
  std::function<void(const EpochMetrics&)> on_epoch;
};

struct TrainResult {
  ModelParams params;
  TrainHistory history;
  // Set when training stopped on a numeric failure; `history` then holds
  // the epochs completed before it.
  std::optional<std::string> failure;
};

// Minibatch Adam over shuffled training rows. Epoch metrics are measured
// in inference mode after each epoch. Deterministic for a fixed seed.
TrainResult train(const ModelConfig& config, const EmbeddingMatrix& embedding,
                  const LabeledSequences& train_set, const LabeledSequences& val_set,
                  const TrainOptions& options = {});

struct LossAccuracy {
  double loss = 0.0;
  double accuracy = 0.0;
};

// Inference-mode loss and accuracy; NaN for an empty set.
LossAccuracy evaluate_loss(const ModelParams& params, const ModelConfig& config,
                           const LabeledSequences& data,
                           kernels::Exec exec = kernels::Exec::kParallel);

struct Prediction {
  Tensor probs;                     // n x k
  std::vector<std::size_t> labels;  // argmax, lowest index on ties
};

Prediction predict(const ModelParams& params, const ModelConfig& config,
                   const SequenceBatch& batch, kernels::Exec exec = kernels::Exec::kParallel);

std::size_t argmax(std::span<const double> values);

}  // namespace hsd

#endif  // HSD_TRAINER_HPP_
