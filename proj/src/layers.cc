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

#include "hsd/layers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsd/errors.hpp"

namespace hsd {

Tensor embedding_forward(const Tensor& table, const SequenceBatch& batch) {
  const std::size_t rows = table.dim(0);
  const std::size_t D = table.dim(1);
  Tensor out({batch.rows, batch.max_len, D});
  for (std::size_t k = 0; k < batch.ids.size(); ++k) {
    const auto id = batch.ids[k];
    if (id < 0 || static_cast<std::size_t>(id) >= rows) {
      throw DataError("token id " + std::to_string(id) + " outside embedding table of " +
                      std::to_string(rows) + " rows");
    }
    std::copy_n(table.data.begin() + id * D, D, out.data.begin() + k * D);
  }
  return out;
}

std::vector<double> draw_dropout_mask(Rng& rng, std::size_t n, double rate) {
  if (rate <= 0.0) return {};
  const double scale = 1.0 / (1.0 - rate);
  std::vector<double> mask(n);
  for (auto& m : mask) m = rng.bernoulli(rate) ? 0.0 : scale;
  return mask;
}

DropoutResult dropout_forward(const Tensor& x, double rate, bool training, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) throw UsageError("dropout rate must be in [0, 1)");
  DropoutResult result{x, Tensor(x.shape, 1.0)};
  if (!training || rate == 0.0) return result;
  result.mask.data = draw_dropout_mask(rng, x.size(), rate);
  for (std::size_t i = 0; i < x.size(); ++i) result.output[i] = x[i] * result.mask[i];
  return result;
}

namespace {

void run_direction(const LstmWeights& weights, const Tensor& inputs, const ModelConfig& config,
                   bool training, Rng& rng, bool reverse, std::size_t offset,
                   LstmResult& result) {
  const std::size_t n = inputs.dim(0);
  const std::size_t T = inputs.dim(1);
  const std::size_t D = inputs.dim(2);
  const std::size_t H = weights.hidden();
  const std::size_t width = result.hidden.dim(1);
  for (std::size_t r = 0; r < n; ++r) {
    SequenceMasks masks;
    if (training) {
      masks.input = draw_dropout_mask(rng, D, config.dropout_rate);
      masks.recurrent = draw_dropout_mask(rng, H, config.recurrent_dropout_rate);
    }
    LstmTrace trace;
    lstm_sequence_forward(weights, {inputs.data.data() + r * T * D, T * D}, T, masks, reverse,
                          trace);
    std::copy(trace.h.begin(), trace.h.end(), result.hidden.data.begin() + r * width + offset);
    result.traces.push_back(std::move(trace));
    result.masks.push_back(std::move(masks));
  }
}

void check_input(const Tensor& inputs, const LstmWeights& weights) {
  if (inputs.shape.size() != 3 || inputs.dim(2) != weights.input_dim()) {
    throw UsageError("LSTM input must be n x T x D with D matching the kernel");
  }
}

}  // namespace

LstmResult lstm_forward(const LstmWeights& weights, const Tensor& inputs,
                        const ModelConfig& config, bool training, Rng& rng) {
  check_input(inputs, weights);
  LstmResult result;
  result.hidden = Tensor({inputs.dim(0), weights.hidden()});
  run_direction(weights, inputs, config, training, rng, false, 0, result);
  return result;
}

LstmResult bilstm_forward(const LstmWeights& forward, const LstmWeights& backward,
                          const Tensor& inputs, const ModelConfig& config, bool training,
                          Rng& rng) {
  check_input(inputs, forward);
  check_input(inputs, backward);
  LstmResult result;
  result.hidden = Tensor({inputs.dim(0), forward.hidden() + backward.hidden()});
  run_direction(forward, inputs, config, training, rng, false, 0, result);
  run_direction(backward, inputs, config, training, rng, true, forward.hidden(), result);
  return result;
}

void softmax_inplace(std::span<double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& v : logits) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : logits) v /= total;
}

Tensor dense_forward(const Tensor& w, const Tensor& b, const Tensor& x,
                     OutputActivation activation) {
  const std::size_t n = x.dim(0);
  const std::size_t F = w.dim(0);
  const std::size_t k = w.dim(1);
  if (x.size() != n * F) throw UsageError("dense input width does not match the kernel");
  Tensor out({n, k});
  for (std::size_t r = 0; r < n; ++r) {
    auto z = out.row(r);
    std::copy(b.data.begin(), b.data.end(), z.begin());
    for (std::size_t f = 0; f < F; ++f) {
      const double xf = x[r * F + f];
      for (std::size_t j = 0; j < k; ++j) z[j] += xf * w.at(f, j);
    }
    if (activation == OutputActivation::kSoftmax) {
      softmax_inplace(z);
    } else {
      for (double& v : z) v = sigmoid(v);
    }
  }
  return out;
}

double row_cross_entropy(std::span<const double> probs, std::span<const double> onehot,
                         LossKind kind) {
  double loss = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    const double p = std::clamp(probs[j], kProbabilityClip, 1.0 - kProbabilityClip);
    if (kind == LossKind::kCategoricalCrossEntropy) {
      if (onehot[j] != 0.0) loss -= onehot[j] * std::log(p);
    } else {
      loss -= onehot[j] * std::log(p) + (1.0 - onehot[j]) * std::log(1.0 - p);
    }
  }
  if (kind == LossKind::kBinaryCrossEntropy) loss /= static_cast<double>(probs.size());
  return loss;
}

double cross_entropy(const Tensor& probs, const OneHotLabels& labels, LossKind kind) {
  const std::size_t n = probs.dim(0);
  if (n == 0) return 0.0;
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) total += row_cross_entropy(probs.row(r), labels.row(r), kind);
  return total / static_cast<double>(n);
}

}  // namespace hsd
