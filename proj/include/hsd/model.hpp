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

#ifndef HSD_MODEL_HPP_
#define HSD_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsd/embed.hpp"
#include "hsd/kernels.hpp"
#include "hsd/keyvalue.hpp"
#include "hsd/lstm.hpp"
#include "hsd/tensor.hpp"
#include "hsd/tokenize.hpp"

namespace hsd {

enum class Arch { kLstm, kBiLstm };
enum class OutputActivation { kSoftmax, kSigmoid };
enum class LossKind { kCategoricalCrossEntropy, kBinaryCrossEntropy };

std::string_view to_string(Arch arch);
std::string_view to_string(OutputActivation activation);
std::string_view to_string(LossKind loss);
Arch parse_arch(std::string_view name);
OutputActivation parse_activation(std::string_view name);
LossKind parse_loss(std::string_view name);

// Architecture and training hyperparameters. The embedding table itself is
// supplied separately; only its shape and trainability live here.
struct ModelConfig {
  Arch arch = Arch::kLstm;
  std::size_t hidden_units = 100;
  double dropout_rate = 0.2;
  double recurrent_dropout_rate = 0.2;
  std::size_t max_len = kDefaultMaxLen;
  std::size_t vocab_size = 0;  // embedding rows - 1
  std::size_t embedding_dim = 100;
  bool embedding_trainable = true;
  std::size_t num_classes = 2;
  OutputActivation output_activation = OutputActivation::kSoftmax;
  LossKind loss = LossKind::kCategoricalCrossEntropy;
  std::size_t epochs = 10;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;

  std::size_t directions() const { return arch == Arch::kBiLstm ? 2 : 1; }
  std::size_t feature_width() const { return directions() * hidden_units; }

  // Throws UsageError on out-of-range values or an invalid
  // activation/loss pairing.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// Shortest round-trip text for every field.
kv::Entries to_entries(const ModelConfig& config);
// Reads the fields written by to_entries; unknown keys are ignored.
ModelConfig config_from_entries(const kv::Entries& entries);

struct ModelParams {
  Tensor embedding;                    // (V+1) x D
  LstmWeights forward;
  std::optional<LstmWeights> backward;  // BiLSTM only
  Tensor dense_w;                      // F x k
  Tensor dense_b;                      // k

  // Declaration order: embedding, lstm_fwd.{W,U,b}, lstm_bwd.{W,U,b},
  // dense.W, dense.b.
  std::vector<std::pair<std::string, Tensor*>> tensors();
  std::vector<std::pair<std::string, const Tensor*>> tensors() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Glorot-uniform kernels, zero biases except forget gate = 1. The embedding
// table is copied from `embedding`.
ModelParams init_params(const ModelConfig& config, const EmbeddingMatrix& embedding);

// Same shapes as `params`, all zero. The embedding gradient is left empty
// unless `with_embedding`.
ModelParams zeros_like(const ModelParams& params, bool with_embedding);

std::size_t parameter_count(const ModelParams& params, bool include_embedding);

// Dropout state for a forward pass. In training mode every row draws its
// masks from a generator seeded by (seed, row position), so a fixed seed
// reproduces the same masks.
struct DropoutPlan {
  bool training = false;
  std::uint64_t seed = 0;
};

// Per-row activations kept for the backward pass.
struct RowCache {
  std::vector<double> inputs;  // T x D embedded inputs after dropout
  std::vector<double> embed_mask;
  SequenceMasks masks[2];
  LstmTrace traces[2];
  std::vector<double> features;  // F
  std::vector<double> probs;     // k
};

struct ForwardCache {
  std::vector<std::int32_t> ids;  // n x T
  std::size_t rows = 0;
  std::size_t steps = 0;
  std::vector<RowCache> row;
  Tensor probs;  // n x k
};

// Embedding -> dropout -> (Bi)LSTM -> dense. Returns n x k probabilities and
// fills `cache` when given. Throws NumericError on non-finite activations
// and DataError on ids outside the embedding table.
Tensor model_forward(const ModelParams& params, const ModelConfig& config,
                     const SequenceBatch& batch, const DropoutPlan& dropout,
                     kernels::Exec exec, ForwardCache* cache = nullptr);

// Gradients of the mean batch loss with respect to every trainable tensor.
// The embedding gradient is empty for a frozen embedding; the padding row
// never receives gradient.
ModelParams backward(const ModelParams& params, const ModelConfig& config,
                     const ForwardCache& cache, const OneHotLabels& labels,
                     kernels::Exec exec);

}  // namespace hsd

#endif  // HSD_MODEL_HPP_
