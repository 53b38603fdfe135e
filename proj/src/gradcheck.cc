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

#include "hsd/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hsd/layers.hpp"
#include "hsd/rng.hpp"

namespace hsd {

bool GradientCheckReport::passed() const { return failing().empty(); }

std::vector<std::string> GradientCheckReport::failing() const {
  std::vector<std::string> names;
  for (const auto& t : tensors) {
    if (!(t.max_relative_error < tolerance)) names.push_back(t.name);
  }
  return names;
}

namespace {

std::string describe(const GradientCheckReport& report) {
  std::string msg = "gradient check failed on:";
  for (const auto& t : report.tensors) {
    if (!(t.max_relative_error < report.tolerance)) {
      msg += " " + t.name + " (max rel err " + std::to_string(t.max_relative_error) + ")";
    }
  }
  return msg;
}

}  // namespace

GradientCheckFailed::GradientCheckFailed(GradientCheckReport report)
    : NumericError(describe(report)), report_(std::move(report)) {}

GradientCheckReport gradient_check(const ModelParams& params, const ModelConfig& config,
                                   const SequenceBatch& batch, const OneHotLabels& labels,
                                   const GradientCheckOptions& options) {
  const bool train_embedding = config.embedding_trainable;
  if (parameter_count(params, train_embedding) > options.max_parameters) {
    throw UsageError("gradient_check: model has more than " +
                     std::to_string(options.max_parameters) + " trainable parameters");
  }
  const DropoutPlan dropout{options.dropout_seed.has_value(), options.dropout_seed.value_or(0)};
  constexpr auto exec = kernels::Exec::kSerial;

  ForwardCache cache;
  model_forward(params, config, batch, dropout, exec, &cache);
  ModelParams grads = backward(params, config, cache, labels, exec);
  if (options.tamper) options.tamper(grads);

  ModelParams probe = params;
  auto loss_at = [&]() {
    return cross_entropy(model_forward(probe, config, batch, dropout, exec), labels, config.loss);
  };

  GradientCheckReport report;
  report.tolerance = options.tolerance;
  Rng rng(options.sample_seed);
  auto probe_tensors = probe.tensors();
  auto grad_tensors = grads.tensors();
  for (std::size_t ti = 0; ti < probe_tensors.size(); ++ti) {
    const auto& [name, tensor] = probe_tensors[ti];
    const bool is_embedding = ti == 0;
    if (is_embedding && !train_embedding) continue;
    const Tensor& grad = *grad_tensors[ti].second;

    // The padding row is pinned at zero and receives no gradient.
    const std::size_t first = is_embedding ? tensor->dim(1) : 0;
    std::vector<std::size_t> coords(tensor->size() - first);
    std::iota(coords.begin(), coords.end(), first);
    if (coords.size() > options.coordinates_per_tensor) {
      for (std::size_t i = 0; i < options.coordinates_per_tensor; ++i) {
        std::swap(coords[i], coords[i + rng.below(coords.size() - i)]);
      }
      coords.resize(options.coordinates_per_tensor);
    }

    TensorCheck check{name, coords.size(), 0.0};
    for (std::size_t c : coords) {
      const double saved = (*tensor)[c];
      (*tensor)[c] = saved + options.step;
      const double plus = loss_at();
      (*tensor)[c] = saved - options.step;
      const double minus = loss_at();
      (*tensor)[c] = saved;
      const double numeric = (plus - minus) / (2.0 * options.step);
      const double analytic = grad[c];
      const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
      check.max_relative_error = std::max(check.max_relative_error,
                                          std::abs(analytic - numeric) / denom);
    }
    report.tensors.push_back(std::move(check));
  }
  if (!report.passed()) throw GradientCheckFailed(report);
  return report;
}

}  // namespace hsd
