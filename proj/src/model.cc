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

#include "hsd/model.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "hsd/errors.hpp"
#include "hsd/layers.hpp"
#include "hsd/rng.hpp"

namespace hsd {

namespace {

constexpr std::uint64_t kInitSalt = 1;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw DataError("invalid number for '" + key + "': '" + text + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw DataError("invalid integer for '" + key + "': '" + text + "'");
  }
  return v;
}

void glorot(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (double& v : t.data) v = rng.uniform(-limit, limit);
}

LstmWeights make_lstm(std::size_t D, std::size_t H, Rng& rng) {
  LstmWeights w{Tensor({D, 4 * H}), Tensor({H, 4 * H}), Tensor({4 * H})};
  glorot(w.w, D, 4 * H, rng);
  glorot(w.u, H, 4 * H, rng);
  for (std::size_t j = H; j < 2 * H; ++j) w.b[j] = 1.0;
  return w;
}

LstmWeights zero_lstm(const LstmWeights& like) {
  return {Tensor(like.w.shape), Tensor(like.u.shape), Tensor(like.b.shape)};
}

}  // namespace

std::string_view to_string(Arch arch) { return arch == Arch::kBiLstm ? "bilstm" : "lstm"; }

std::string_view to_string(OutputActivation activation) {
  return activation == OutputActivation::kSigmoid ? "sigmoid" : "softmax";
}

std::string_view to_string(LossKind loss) {
  return loss == LossKind::kBinaryCrossEntropy ? "binary-ce" : "categorical-ce";
}

Arch parse_arch(std::string_view name) {
  if (name == "lstm") return Arch::kLstm;
  if (name == "bilstm") return Arch::kBiLstm;
  throw UsageError("unknown architecture '" + std::string(name) + "' (expected lstm or bilstm)");
}

OutputActivation parse_activation(std::string_view name) {
  if (name == "softmax") return OutputActivation::kSoftmax;
  if (name == "sigmoid") return OutputActivation::kSigmoid;
  throw UsageError("unknown output activation '" + std::string(name) + "'");
}

LossKind parse_loss(std::string_view name) {
  if (name == "categorical-ce") return LossKind::kCategoricalCrossEntropy;
  if (name == "binary-ce") return LossKind::kBinaryCrossEntropy;
  throw UsageError("unknown loss '" + std::string(name) + "'");
}

void ModelConfig::validate() const {
  auto fail = [](const std::string& what) { throw UsageError("invalid model config: " + what); };
  if (hidden_units == 0) fail("hidden_units must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) fail("dropout_rate must be in [0, 1)");
  if (!(recurrent_dropout_rate >= 0.0 && recurrent_dropout_rate < 1.0)) {
    fail("recurrent_dropout_rate must be in [0, 1)");
  }
  if (max_len == 0) fail("max_len must be >= 1");
  if (embedding_dim == 0) fail("embedding_dim must be >= 1");
  if (num_classes < 2) fail("num_classes must be >= 2");
  if (batch_size == 0) fail("batch_size must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate must be > 0");
  const bool softmax_ce = output_activation == OutputActivation::kSoftmax &&
                          loss == LossKind::kCategoricalCrossEntropy;
  const bool sigmoid_bce = output_activation == OutputActivation::kSigmoid &&
                           loss == LossKind::kBinaryCrossEntropy;
  if (num_classes >= 3 && !softmax_ce) fail("3+ classes require softmax with categorical-ce");
  if (num_classes == 2 && !softmax_ce && !sigmoid_bce) {
    fail("2 classes require softmax/categorical-ce or sigmoid/binary-ce");
  }
}

kv::Entries to_entries(const ModelConfig& c) {
  kv::Entries e;
  e.set("arch", std::string(to_string(c.arch)));
  e.set("hidden_units", std::to_string(c.hidden_units));
  e.set("dropout_rate", format_double(c.dropout_rate));
  e.set("recurrent_dropout_rate", format_double(c.recurrent_dropout_rate));
  e.set("max_len", std::to_string(c.max_len));
  e.set("vocab_size", std::to_string(c.vocab_size));
  e.set("embedding_dim", std::to_string(c.embedding_dim));
  e.set("embedding_trainable", c.embedding_trainable ? "true" : "false");
  e.set("num_classes", std::to_string(c.num_classes));
  e.set("output_activation", std::string(to_string(c.output_activation)));
  e.set("loss", std::string(to_string(c.loss)));
  e.set("epochs", std::to_string(c.epochs));
  e.set("batch_size", std::to_string(c.batch_size));
  e.set("learning_rate", format_double(c.learning_rate));
  e.set("seed", std::to_string(c.seed));
  return e;
}

ModelConfig config_from_entries(const kv::Entries& e) {
  auto u = [&](const char* key) { return parse_uint(key, e.require(key)); };
  auto d = [&](const char* key) { return parse_double(key, e.require(key)); };
  ModelConfig c;
  c.arch = parse_arch(e.require("arch"));
  c.hidden_units = u("hidden_units");
  c.dropout_rate = d("dropout_rate");
  c.recurrent_dropout_rate = d("recurrent_dropout_rate");
  c.max_len = u("max_len");
  c.vocab_size = u("vocab_size");
  c.embedding_dim = u("embedding_dim");
  c.embedding_trainable = e.require("embedding_trainable") == "true";
  c.num_classes = u("num_classes");
  c.output_activation = parse_activation(e.require("output_activation"));
  c.loss = parse_loss(e.require("loss"));
  c.epochs = u("epochs");
  c.batch_size = u("batch_size");
  c.learning_rate = d("learning_rate");
  c.seed = u("seed");
  return c;
}

std::vector<std::pair<std::string, Tensor*>> ModelParams::tensors() {
  std::vector<std::pair<std::string, Tensor*>> out;
  out.emplace_back("embedding", &embedding);
  out.emplace_back("lstm_fwd.W", &forward.w);
  out.emplace_back("lstm_fwd.U", &forward.u);
  out.emplace_back("lstm_fwd.b", &forward.b);
  if (backward) {
    out.emplace_back("lstm_bwd.W", &backward->w);
    out.emplace_back("lstm_bwd.U", &backward->u);
    out.emplace_back("lstm_bwd.b", &backward->b);
  }
  out.emplace_back("dense.W", &dense_w);
  out.emplace_back("dense.b", &dense_b);
  return out;
}

std::vector<std::pair<std::string, const Tensor*>> ModelParams::tensors() const {
  std::vector<std::pair<std::string, const Tensor*>> out;
  for (auto& [name, t] : const_cast<ModelParams*>(this)->tensors()) out.emplace_back(name, t);
  return out;
}

ModelParams init_params(const ModelConfig& config, const EmbeddingMatrix& embedding) {
  config.validate();
  if (embedding.rows != config.vocab_size + 1 || embedding.dim != config.embedding_dim) {
    throw UsageError("embedding matrix shape does not match the model config");
  }
  Rng rng(Rng::mix(config.seed, kInitSalt));
  const std::size_t D = config.embedding_dim;
  const std::size_t H = config.hidden_units;
  ModelParams p;
  p.embedding = Tensor({embedding.rows, embedding.dim});
  p.embedding.data = embedding.values;
  p.forward = make_lstm(D, H, rng);
  if (config.arch == Arch::kBiLstm) p.backward = make_lstm(D, H, rng);
  p.dense_w = Tensor({config.feature_width(), config.num_classes});
  glorot(p.dense_w, config.feature_width(), config.num_classes, rng);
  p.dense_b = Tensor({config.num_classes});
  return p;
}

ModelParams zeros_like(const ModelParams& params, bool with_embedding) {
  ModelParams g;
  if (with_embedding) g.embedding = Tensor(params.embedding.shape);
  g.forward = zero_lstm(params.forward);
  if (params.backward) g.backward = zero_lstm(*params.backward);
  g.dense_w = Tensor(params.dense_w.shape);
  g.dense_b = Tensor(params.dense_b.shape);
  return g;
}

std::size_t parameter_count(const ModelParams& params, bool include_embedding) {
  std::size_t total = 0;
  for (const auto& [name, t] : params.tensors()) {
    if (name == "embedding" && !include_embedding) continue;
    total += t->size();
  }
  return total;
}

Tensor model_forward(const ModelParams& params, const ModelConfig& config,
                     const SequenceBatch& batch, const DropoutPlan& dropout,
                     kernels::Exec exec, ForwardCache* cache) {
  const std::size_t n = batch.rows;
  const std::size_t T = batch.max_len;
  const std::size_t D = params.embedding.dim(1);
  const std::size_t V1 = params.embedding.dim(0);
  const std::size_t H = params.forward.hidden();
  const std::size_t F = params.dense_w.dim(0);
  const std::size_t k = params.dense_w.dim(1);
  const std::size_t dirs = params.backward ? 2 : 1;

  Tensor probs({n, k});
  if (cache) {
    cache->ids = batch.ids;
    cache->rows = n;
    cache->steps = T;
    cache->row.assign(n, RowCache{});
  }

  kernels::for_rows(exec, n, [&](std::size_t r) {
    RowCache local;
    RowCache& rc = cache ? cache->row[r] : local;
    rc.inputs.assign(T * D, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
      const auto id = batch.ids[r * T + t];
      if (id < 0 || static_cast<std::size_t>(id) >= V1) {
        throw DataError("token id " + std::to_string(id) + " outside embedding table");
      }
      std::copy_n(params.embedding.data.begin() + id * D, D, rc.inputs.begin() + t * D);
    }
    if (dropout.training) {
      Rng rng(Rng::mix(dropout.seed, r));
      rc.embed_mask = draw_dropout_mask(rng, T * D, config.dropout_rate);
      for (std::size_t i = 0; i < rc.embed_mask.size(); ++i) rc.inputs[i] *= rc.embed_mask[i];
      for (std::size_t dir = 0; dir < dirs; ++dir) {
        rc.masks[dir].input = draw_dropout_mask(rng, D, config.dropout_rate);
        rc.masks[dir].recurrent = draw_dropout_mask(rng, H, config.recurrent_dropout_rate);
      }
    }
    rc.features.assign(F, 0.0);
    for (std::size_t dir = 0; dir < dirs; ++dir) {
      const LstmWeights& w = dir == 0 ? params.forward : *params.backward;
      lstm_sequence_forward(w, rc.inputs, T, rc.masks[dir], dir == 1, rc.traces[dir]);
      std::copy(rc.traces[dir].h.begin(), rc.traces[dir].h.end(), rc.features.begin() + dir * H);
    }
    rc.probs.assign(params.dense_b.data.begin(), params.dense_b.data.end());
    for (std::size_t f = 0; f < F; ++f) {
      const double x = rc.features[f];
      for (std::size_t j = 0; j < k; ++j) rc.probs[j] += x * params.dense_w.at(f, j);
    }
    if (config.output_activation == OutputActivation::kSoftmax) {
      softmax_inplace(rc.probs);
    } else {
      for (double& v : rc.probs) v = sigmoid(v);
    }
    for (double v : rc.probs) {
      if (!std::isfinite(v)) throw NumericError("non-finite output probability");
    }
    std::copy(rc.probs.begin(), rc.probs.end(), probs.row(r).begin());
  });

  if (cache) cache->probs = probs;
  return probs;
}

ModelParams backward(const ModelParams& params, const ModelConfig& config,
                     const ForwardCache& cache, const OneHotLabels& labels,
                     kernels::Exec exec) {
  const std::size_t n = cache.rows;
  const std::size_t T = cache.steps;
  const std::size_t D = params.embedding.dim(1);
  const std::size_t H = params.forward.hidden();
  const std::size_t F = params.dense_w.dim(0);
  const std::size_t k = params.dense_w.dim(1);
  const std::size_t dirs = params.backward ? 2 : 1;
  const bool train_embedding = config.embedding_trainable;
  if (labels.rows != n || labels.classes != k) {
    throw UsageError("label matrix does not match the forward batch");
  }

  const double scale = config.loss == LossKind::kBinaryCrossEntropy
                           ? 1.0 / static_cast<double>(n * k)
                           : 1.0 / static_cast<double>(n);

  std::vector<ModelParams> row_grads(n);
  std::vector<std::vector<double>> row_dinputs(train_embedding ? n : 0);

  kernels::for_rows(exec, n, [&](std::size_t r) {
    const RowCache& rc = cache.row[r];
    ModelParams& g = row_grads[r];
    g = zeros_like(params, false);

    std::vector<double> dz(k);
    for (std::size_t j = 0; j < k; ++j) dz[j] = (rc.probs[j] - labels.values[r * k + j]) * scale;
    std::vector<double> dfeat(F, 0.0);
    for (std::size_t f = 0; f < F; ++f) {
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        g.dense_w.at(f, j) += rc.features[f] * dz[j];
        acc += params.dense_w.at(f, j) * dz[j];
      }
      dfeat[f] = acc;
    }
    for (std::size_t j = 0; j < k; ++j) g.dense_b[j] += dz[j];

    std::vector<double> d_inputs(T * D, 0.0);
    for (std::size_t dir = 0; dir < dirs; ++dir) {
      const LstmWeights& w = dir == 0 ? params.forward : *params.backward;
      LstmWeights& gw = dir == 0 ? g.forward : *g.backward;
      lstm_sequence_backward(w, rc.traces[dir], {dfeat.data() + dir * H, H}, rc.masks[dir],
                             dir == 1, gw, d_inputs);
    }
    if (train_embedding) {
      if (!rc.embed_mask.empty()) {
        for (std::size_t i = 0; i < d_inputs.size(); ++i) d_inputs[i] *= rc.embed_mask[i];
      }
      row_dinputs[r] = std::move(d_inputs);
    }
  });

  ModelParams grads = zeros_like(params, train_embedding);
  auto out_tensors = grads.tensors();
  std::vector<std::vector<std::pair<std::string, Tensor*>>> row_tensors;
  row_tensors.reserve(n);
  for (auto& g : row_grads) row_tensors.push_back(g.tensors());
  std::vector<const double*> parts(n);
  for (std::size_t ti = 1; ti < out_tensors.size(); ++ti) {
    for (std::size_t r = 0; r < n; ++r) parts[r] = row_tensors[r][ti].second->data.data();
    kernels::sum_parts(exec, parts, out_tensors[ti].second->data);
  }

  if (train_embedding) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t t = 0; t < T; ++t) {
        const auto id = cache.ids[r * T + t];
        if (id == 0) continue;
        double* dst = grads.embedding.data.data() + id * D;
        const double* src = row_dinputs[r].data() + t * D;
        for (std::size_t d = 0; d < D; ++d) dst[d] += src[d];
      }
    }
  }

  for (const auto& [name, t] : grads.tensors()) {
    if (!t->all_finite()) throw NumericError("non-finite gradient in " + name);
  }
  return grads;
}

}  // namespace hsd
