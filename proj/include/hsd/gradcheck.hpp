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

#ifndef HSD_GRADCHECK_HPP_
#define HSD_GRADCHECK_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hsd/errors.hpp"
#include "hsd/model.hpp"

namespace hsd {

struct TensorCheck {
  std::string name;
  std::size_t coordinates = 0;
  double max_relative_error = 0.0;
};

struct GradientCheckReport {
  double tolerance = 0.0;
  std::vector<TensorCheck> tensors;

  bool passed() const;
  std::vector<std::string> failing() const;
};

class GradientCheckFailed : public NumericError {
 public:
  explicit GradientCheckFailed(GradientCheckReport report);
  const GradientCheckReport& report() const { return report_; }

 private:
  GradientCheckReport report_;
};

struct GradientCheckOptions {
  double tolerance = 1e-4;
  double step = 1e-5;
  std::size_t coordinates_per_tensor = 50;
  std::uint64_t sample_seed = 0;
  // When set, dropout runs in training mode with masks fixed by this seed.
  std::optional<std::uint64_t> dropout_seed;
  std::size_t max_parameters = 10000;
  // Applied to the analytic gradients before comparison (fault injection).
  std::function<void(ModelParams&)> tamper;
};

// Compares backward() against central differences of the batch loss,
// |a - n| / max(|a|, |n|, 1e-8) per sampled coordinate. Frozen tensors are
// excluded. Throws GradientCheckFailed if any tensor exceeds the tolerance.
GradientCheckReport gradient_check(const ModelParams& params, const ModelConfig& config,
                                   const SequenceBatch& batch, const OneHotLabels& labels,
                                   const GradientCheckOptions& options = {});

}  // namespace hsd

#endif  // HSD_GRADCHECK_HPP_
