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

#include "hsd/kernels.hpp"

#include <cmath>

#include <omp.h>

namespace hsd::kernels {

void sum_parts_serial(std::span<const double* const> parts, std::span<double> out) {
  for (std::size_t e = 0; e < out.size(); ++e) {
    double acc = 0.0;
    for (const double* part : parts) acc += part[e];
    out[e] = acc;
  }
}

void sum_parts_parallel(std::span<const double* const> parts, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t e = 0; e < n; ++e) {
    double acc = 0.0;
    for (const double* part : parts) acc += part[e];
    out[e] = acc;
  }
}

void sum_parts(Exec exec, std::span<const double* const> parts, std::span<double> out) {
  if (exec == Exec::kParallel) {
    sum_parts_parallel(parts, out);
  } else {
    sum_parts_serial(parts, out);
  }
}

namespace {

inline void adam_element(double& p, double g, double& m, double& v,
                         const AdamCoefficients& k) {
  m = k.beta1 * m + (1.0 - k.beta1) * g;
  v = k.beta2 * v + (1.0 - k.beta2) * g * g;
  const double m_hat = m / k.bias_correction1;
  const double v_hat = v / k.bias_correction2;
  p -= k.learning_rate * m_hat / (std::sqrt(v_hat) + k.epsilon);
}

}  // namespace

void adam_update_serial(std::span<double> param, std::span<const double> grad,
                        std::span<double> m, std::span<double> v,
                        const AdamCoefficients& k) {
  for (std::size_t i = 0; i < param.size(); ++i) adam_element(param[i], grad[i], m[i], v[i], k);
}

void adam_update_parallel(std::span<double> param, std::span<const double> grad,
                          std::span<double> m, std::span<double> v,
                          const AdamCoefficients& k) {
  const auto n = static_cast<std::ptrdiff_t>(param.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) adam_element(param[i], grad[i], m[i], v[i], k);
}

void adam_update(Exec exec, std::span<double> param, std::span<const double> grad,
                 std::span<double> m, std::span<double> v, const AdamCoefficients& k) {
  if (exec == Exec::kParallel) {
    adam_update_parallel(param, grad, m, v, k);
  } else {
    adam_update_serial(param, grad, m, v, k);
  }
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace hsd::kernels
