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

#ifndef HSD_OPTIMIZER_HPP_
#define HSD_OPTIMIZER_HPP_

#include <cstdint>

#include "hsd/kernels.hpp"
#include "hsd/model.hpp"

namespace hsd {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First and second moments mirror the trainable tensors of the model; a
// frozen embedding has empty moments.
struct AdamState {
  ModelParams m;
  ModelParams v;
  std::uint64_t t = 0;
};

AdamState adam_init(const ModelParams& params, bool train_embedding);

// Bias-corrected Adam step on every tensor that has a gradient. Tensors
// whose gradient is empty are left untouched.
void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               const AdamOptions& options, kernels::Exec exec = kernels::Exec::kParallel);

}  // namespace hsd

#endif  // HSD_OPTIMIZER_HPP_
