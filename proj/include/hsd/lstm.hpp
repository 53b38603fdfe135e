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

#ifndef HSD_LSTM_HPP_
#define HSD_LSTM_HPP_

#include <cstddef>
#include <cmath>
#include <span>
#include <vector>

#include "hsd/tensor.hpp"

namespace hsd {

// Packed LSTM weights, gate order [i, f, g, o]:
//   z_t = x_t W + h_{t-1} U + b
//   i, f, o = sigmoid(z_i, z_f, z_o);  g = tanh(z_g)
//   c_t = f * c_{t-1} + i * g;  h_t = o * tanh(c_t)
struct LstmWeights {
  Tensor w;  // D x 4H
  Tensor u;  // H x 4H
  Tensor b;  // 4H

  std::size_t input_dim() const { return w.dim(0); }
  std::size_t hidden() const { return u.dim(0); }

  friend bool operator==(const LstmWeights&, const LstmWeights&) = default;
};

// Inverted-dropout masks shared by every timestep of one sequence. Empty
// vectors mean no dropout.
struct SequenceMasks {
  std::vector<double> input;      // D
  std::vector<double> recurrent;  // H
};

// Activations of one sequence in processing order (reversed for the
// backward direction of a BiLSTM).
struct LstmTrace {
  std::size_t steps = 0;
  std::vector<double> x;       // T x D, masked inputs
  std::vector<double> h_prev;  // T x H, masked previous hidden state
  std::vector<double> gates;   // T x 4H, activated
  std::vector<double> c;       // (T+1) x H, c[0] = 0
  std::vector<double> h;       // H, final hidden state
};

// Runs the recurrence over `inputs` (T x D, time-major). Throws
// NumericError naming the step if an activation is not finite.
void lstm_sequence_forward(const LstmWeights& weights, std::span<const double> inputs,
                           std::size_t steps, const SequenceMasks& masks, bool reverse,
                           LstmTrace& trace);

// Backpropagation through time from dL/dh_T. Adds weight gradients into
// `grad` and input gradients into `d_inputs` (T x D, original time order).
void lstm_sequence_backward(const LstmWeights& weights, const LstmTrace& trace,
                            std::span<const double> d_hidden, const SequenceMasks& masks,
                            bool reverse, LstmWeights& grad, std::span<double> d_inputs);

inline double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace hsd

#endif  // HSD_LSTM_HPP_
