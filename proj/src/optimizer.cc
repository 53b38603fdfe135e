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

#include "hsd/optimizer.hpp"

#include <cmath>

#include "hsd/errors.hpp"

namespace hsd {

AdamState adam_init(const ModelParams& params, bool train_embedding) {
  return AdamState{zeros_like(params, train_embedding), zeros_like(params, train_embedding), 0};
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               const AdamOptions& options, kernels::Exec exec) {
  ++state.t;
  const double t = static_cast<double>(state.t);
  const kernels::AdamCoefficients k{options.learning_rate,
                                    options.beta1,
                                    options.beta2,
                                    options.epsilon,
                                    1.0 - std::pow(options.beta1, t),
                                    1.0 - std::pow(options.beta2, t)};
  auto p = params.tensors();
  auto g = grads.tensors();
  auto m = state.m.tensors();
  auto v = state.v.tensors();
  if (p.size() != g.size() || p.size() != m.size()) {
    throw UsageError("adam_step: gradient layout does not match the parameters");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (g[i].second->empty()) continue;
    if (m[i].second->size() != p[i].second->size() || g[i].second->size() != p[i].second->size()) {
      throw UsageError("adam_step: shape mismatch on " + p[i].first);
    }
    kernels::adam_update(exec, p[i].second->data, g[i].second->data, m[i].second->data,
                         v[i].second->data, k);
  }
}

}  // namespace hsd
