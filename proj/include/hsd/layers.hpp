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

#ifndef HSD_LAYERS_HPP_
#define HSD_LAYERS_HPP_

#include <span>
#include <vector>

#include "hsd/model.hpp"
#include "hsd/rng.hpp"

// Layer-at-a-time forward operations over whole batches. The training path
// in model.hpp fuses these per row; both share the same kernels.
namespace hsd {

inline constexpr double kProbabilityClip = 1e-7;

// n x T x D lookup; id 0 maps to the (zero) padding row. Throws DataError for
// ids outside the table.
Tensor embedding_forward(const Tensor& table, const SequenceBatch& batch);

struct DropoutResult {
  Tensor output;
  Tensor mask;  // 0 or 1/(1-rate); all ones at inference
};

// n keep-scales of 1/(1-rate) or 0; empty when rate is 0.
std::vector<double> draw_dropout_mask(Rng& rng, std::size_t n, double rate);

// Inverted dropout; identity when `training` is false or rate is 0.
DropoutResult dropout_forward(const Tensor& x, double rate, bool training, Rng& rng);

struct LstmResult {
  Tensor hidden;  // n x H (n x 2H for BiLSTM)
  std::vector<LstmTrace> traces;
  std::vector<SequenceMasks> masks;
};

// Final hidden state per sequence of `inputs` (n x T x D). In training mode
// the input and recurrent masks are drawn once per sequence from `rng`.
LstmResult lstm_forward(const LstmWeights& weights, const Tensor& inputs,
                        const ModelConfig& config, bool training, Rng& rng);

// [h_forward ; h_backward], the backward direction reading the reversed
// sequence. Traces hold the forward direction's rows first.
LstmResult bilstm_forward(const LstmWeights& forward, const LstmWeights& backward,
                          const Tensor& inputs, const ModelConfig& config, bool training,
                          Rng& rng);

// Affine map followed by a row softmax (max-subtracted) or an elementwise
// sigmoid.
Tensor dense_forward(const Tensor& w, const Tensor& b, const Tensor& x,
                     OutputActivation activation);

void softmax_inplace(std::span<double> logits);

// Mean loss over rows; probabilities are clipped to [1e-7, 1 - 1e-7].
double cross_entropy(const Tensor& probs, const OneHotLabels& labels, LossKind kind);
double row_cross_entropy(std::span<const double> probs, std::span<const double> onehot,
                         LossKind kind);

}  // namespace hsd

#endif  // HSD_LAYERS_HPP_
