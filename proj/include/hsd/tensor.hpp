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

#ifndef HSD_TENSOR_HPP_
#define HSD_TENSOR_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

namespace hsd {

// Dense row-major array of doubles. An empty shape denotes an absent
// tensor (e.g. the gradient of a frozen parameter).
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> dims, double fill = 0.0)
      : shape(std::move(dims)),
        data(std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                             std::multiplies<>()),
             fill) {}

  bool empty() const { return shape.empty(); }
  std::size_t size() const { return data.size(); }
  std::size_t dim(std::size_t axis) const { return shape.at(axis); }

  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }

  double& at(std::size_t i, std::size_t j) { return data[i * shape[1] + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * shape[1] + j]; }

  std::span<double> row(std::size_t i) {
    const std::size_t w = size() / shape[0];
    return {data.data() + i * w, w};
  }
  std::span<const double> row(std::size_t i) const {
    const std::size_t w = size() / shape[0];
    return {data.data() + i * w, w};
  }

  bool all_finite() const {
    for (double v : data) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

}  // namespace hsd

#endif  // HSD_TENSOR_HPP_
