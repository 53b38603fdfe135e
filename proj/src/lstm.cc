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

#include "hsd/lstm.hpp"

#include <cmath>
#include <string>

#include "hsd/errors.hpp"

namespace hsd {

void lstm_sequence_forward(const LstmWeights& weights, std::span<const double> inputs,
                           std::size_t steps, const SequenceMasks& masks, bool reverse,
                           LstmTrace& trace) {
  const std::size_t D = weights.input_dim();
  const std::size_t H = weights.hidden();
  const std::size_t G = 4 * H;
  const double* W = weights.w.data.data();
  const double* U = weights.u.data.data();
  const double* b = weights.b.data.data();

  trace.steps = steps;
  trace.x.assign(steps * D, 0.0);
  trace.h_prev.assign(steps * H, 0.0);
  trace.gates.assign(steps * G, 0.0);
  trace.c.assign((steps + 1) * H, 0.0);
  trace.h.assign(H, 0.0);

  std::vector<double> z(G);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t t = reverse ? steps - 1 - s : s;
    double* x = trace.x.data() + s * D;
    double* hp = trace.h_prev.data() + s * H;
    for (std::size_t d = 0; d < D; ++d) {
      x[d] = inputs[t * D + d] * (masks.input.empty() ? 1.0 : masks.input[d]);
    }
    for (std::size_t j = 0; j < H; ++j) {
      hp[j] = trace.h[j] * (masks.recurrent.empty() ? 1.0 : masks.recurrent[j]);
    }

    std::copy(b, b + G, z.begin());
    for (std::size_t d = 0; d < D; ++d) {
      const double xd = x[d];
      if (xd == 0.0) continue;
      const double* row = W + d * G;
      for (std::size_t g = 0; g < G; ++g) z[g] += xd * row[g];
    }
    for (std::size_t k = 0; k < H; ++k) {
      const double hk = hp[k];
      if (hk == 0.0) continue;
      const double* row = U + k * G;
      for (std::size_t g = 0; g < G; ++g) z[g] += hk * row[g];
    }

    double* act = trace.gates.data() + s * G;
    const double* c_prev = trace.c.data() + s * H;
    double* c = trace.c.data() + (s + 1) * H;
    for (std::size_t j = 0; j < H; ++j) {
      const double i = sigmoid(z[j]);
      const double f = sigmoid(z[H + j]);
      const double g = std::tanh(z[2 * H + j]);
      const double o = sigmoid(z[3 * H + j]);
      act[j] = i;
      act[H + j] = f;
      act[2 * H + j] = g;
      act[3 * H + j] = o;
      c[j] = f * c_prev[j] + i * g;
      trace.h[j] = o * std::tanh(c[j]);
      if (!std::isfinite(trace.h[j]) || !std::isfinite(c[j])) {
        throw NumericError("non-finite LSTM activation at timestep " + std::to_string(s + 1));
      }
    }
  }
}

void lstm_sequence_backward(const LstmWeights& weights, const LstmTrace& trace,
                            std::span<const double> d_hidden, const SequenceMasks& masks,
                            bool reverse, LstmWeights& grad, std::span<double> d_inputs) {
  const std::size_t D = weights.input_dim();
  const std::size_t H = weights.hidden();
  const std::size_t G = 4 * H;
  const std::size_t steps = trace.steps;
  const double* W = weights.w.data.data();
  const double* U = weights.u.data.data();
  double* dW = grad.w.data.data();
  double* dU = grad.u.data.data();
  double* db = grad.b.data.data();

  std::vector<double> dh(d_hidden.begin(), d_hidden.end());
  std::vector<double> dc(H, 0.0);
  std::vector<double> dz(G);

  for (std::size_t s = steps; s-- > 0;) {
    const std::size_t t = reverse ? steps - 1 - s : s;
    const double* act = trace.gates.data() + s * G;
    const double* c_prev = trace.c.data() + s * H;
    const double* c = trace.c.data() + (s + 1) * H;

    for (std::size_t j = 0; j < H; ++j) {
      const double i = act[j];
      const double f = act[H + j];
      const double g = act[2 * H + j];
      const double o = act[3 * H + j];
      const double tc = std::tanh(c[j]);
      dc[j] += dh[j] * o * (1.0 - tc * tc);
      dz[j] = dc[j] * g * i * (1.0 - i);
      dz[H + j] = dc[j] * c_prev[j] * f * (1.0 - f);
      dz[2 * H + j] = dc[j] * i * (1.0 - g * g);
      dz[3 * H + j] = dh[j] * tc * o * (1.0 - o);
      dc[j] *= f;
    }

    const double* x = trace.x.data() + s * D;
    const double* hp = trace.h_prev.data() + s * H;
    for (std::size_t g = 0; g < G; ++g) db[g] += dz[g];
    for (std::size_t d = 0; d < D; ++d) {
      const double xd = x[d];
      double* row = dW + d * G;
      const double* w_row = W + d * G;
      double acc = 0.0;
      for (std::size_t g = 0; g < G; ++g) {
        row[g] += xd * dz[g];
        acc += w_row[g] * dz[g];
      }
      d_inputs[t * D + d] += acc * (masks.input.empty() ? 1.0 : masks.input[d]);
    }
    for (std::size_t k = 0; k < H; ++k) {
      const double hk = hp[k];
      double* row = dU + k * G;
      const double* u_row = U + k * G;
      double acc = 0.0;
      for (std::size_t g = 0; g < G; ++g) {
        row[g] += hk * dz[g];
        acc += u_row[g] * dz[g];
      }
      dh[k] = acc * (masks.recurrent.empty() ? 1.0 : masks.recurrent[k]);
    }
  }
}

}  // namespace hsd
