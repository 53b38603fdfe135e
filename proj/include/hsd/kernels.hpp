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

#ifndef HSD_KERNELS_HPP_
#define HSD_KERNELS_HPP_

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

// Data-parallel building blocks. Each kernel has a serial reference and an
// OpenMP variant; both perform the same floating-point operations in the
// same order, so their results are bitwise identical for any thread count.
namespace hsd::kernels {

enum class Exec { kSerial, kParallel };

// Calls body(i) for every i in [0, n). Under kParallel, iterations run on
// the OpenMP team; an exception from any iteration is rethrown after the
// loop (the one from the lowest index wins).
template <typename Body>
void for_rows(Exec exec, std::size_t n, Body&& body) {
  if (exec == Exec::kSerial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// out[e] = parts[0][e] + parts[1][e] + ... summed in part order.
void sum_parts_serial(std::span<const double* const> parts, std::span<double> out);
void sum_parts_parallel(std::span<const double* const> parts, std::span<double> out);
void sum_parts(Exec exec, std::span<const double* const> parts, std::span<double> out);

struct AdamCoefficients {
  double learning_rate;
  double beta1;
  double beta2;
  double epsilon;
  double bias_correction1;  // 1 - beta1^t
  double bias_correction2;  // 1 - beta2^t
};

// One Adam update over a flat parameter block.
void adam_update_serial(std::span<double> param, std::span<const double> grad,
                        std::span<double> m, std::span<double> v,
                        const AdamCoefficients& k);
void adam_update_parallel(std::span<double> param, std::span<const double> grad,
                          std::span<double> m, std::span<double> v,
                          const AdamCoefficients& k);
void adam_update(Exec exec, std::span<double> param, std::span<const double> grad,
                 std::span<double> m, std::span<double> v, const AdamCoefficients& k);

// Number of threads an OpenMP region would use.
int max_threads();
void set_threads(int n);

}  // namespace hsd::kernels

#endif  // HSD_KERNELS_HPP_
