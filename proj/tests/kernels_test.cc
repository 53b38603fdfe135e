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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hsd/kernels.hpp"
#include "hsd/model.hpp"
#include "hsd/optimizer.hpp"
#include "oracle/naive_model.hpp"

namespace hsd {
namespace {

class ThreadCount : public ::testing::Test {
 protected:
  void SetUp() override { saved_ = kernels::max_threads(); }
  void TearDown() override { kernels::set_threads(saved_); }

 private:
  int saved_ = 1;
};

std::vector<double> random_values(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  std::vector<double> out(n);
  for (double& v : out) v = dist(gen) * std::pow(10.0, double(gen() % 9) - 4.0);
  return out;
}

TEST_F(ThreadCount, SumPartsSerialEqualsParallel) {
  std::mt19937_64 gen(1);
  for (int threads : {1, 2, 3, 8}) {
    kernels::set_threads(threads);
    std::vector<std::vector<double>> parts(13);
    for (auto& p : parts) p = random_values(gen, 1001);
    std::vector<const double*> ptrs;
    for (const auto& p : parts) ptrs.push_back(p.data());
    std::vector<double> serial(1001), parallel(1001, 5.0);
    kernels::sum_parts_serial(ptrs, serial);
    kernels::sum_parts_parallel(ptrs, parallel);
    EXPECT_EQ(serial, parallel);
    double manual = 0.0;
    for (const auto& p : parts) manual += p[17];
    EXPECT_EQ(serial[17], manual);
  }
}

TEST_F(ThreadCount, AdamSerialEqualsParallel) {
  std::mt19937_64 gen(2);
  for (int threads : {1, 4}) {
    kernels::set_threads(threads);
    auto p1 = random_values(gen, 5000);
    auto g = random_values(gen, 5000);
    auto p2 = p1;
    std::vector<double> m1(5000, 0.0), v1(5000, 0.0), m2 = m1, v2 = v1;
    for (int t = 1; t <= 3; ++t) {
      const kernels::AdamCoefficients k{1e-3, 0.9, 0.999, 1e-8, 1.0 - std::pow(0.9, t),
                                        1.0 - std::pow(0.999, t)};
      kernels::adam_update_serial(p1, g, m1, v1, k);
      kernels::adam_update_parallel(p2, g, m2, v2, k);
    }
    EXPECT_EQ(p1, p2);
    EXPECT_EQ(m1, m2);
    EXPECT_EQ(v1, v2);
  }
}

TEST(Adam, FirstStepMovesByLearningRate) {
  std::vector<double> p = {1.0}, g = {0.1}, m = {0.0}, v = {0.0};
  kernels::adam_update_serial(p, g, m, v, {0.001, 0.9, 0.999, 1e-8, 0.1, 0.001});
  EXPECT_NEAR(p[0] - 1.0, -0.001 * (0.1 / (0.1 + 1e-8)), 1e-15);
}

TEST(Adam, ZeroGradientLeavesParametersUnchanged) {
  const oracle::Problem prob = oracle::random_problem(1, Arch::kBiLstm, 3, 2, 2, 2, 2);
  ModelParams params = prob.params;
  AdamState state = adam_init(params, true);
  const ModelParams zero = zeros_like(params, true);
  for (int i = 0; i < 5; ++i) adam_step(params, zero, state, {});
  EXPECT_EQ(params, prob.params);
  EXPECT_EQ(state.t, 5u);
}

TEST(Adam, TensorsUpdateIndependently) {
  const oracle::Problem prob = oracle::random_problem(2, Arch::kLstm, 3, 2, 2, 2, 2);
  ModelParams params = prob.params;
  AdamState state = adam_init(params, true);
  ModelParams grad = zeros_like(params, true);
  grad.dense_b.data[0] = 0.5;
  adam_step(params, grad, state, {});
  EXPECT_NEAR(params.dense_b[0], prob.params.dense_b[0] - 1e-3, 1e-10);
  EXPECT_EQ(params.dense_b[1], prob.params.dense_b[1]);
  EXPECT_EQ(params.dense_w, prob.params.dense_w);
  EXPECT_EQ(params.forward, prob.params.forward);
}

TEST(Adam, FrozenEmbeddingUntouched) {
  const oracle::Problem prob = oracle::random_problem(3, Arch::kLstm, 3, 2, 2, 2, 2);
  ModelParams params = prob.params;
  AdamState state = adam_init(params, false);
  EXPECT_TRUE(state.m.embedding.empty());
  ModelParams grad = zeros_like(params, false);
  for (double& v : grad.dense_w.data) v = 1.0;
  adam_step(params, grad, state, {});
  EXPECT_EQ(params.embedding, prob.params.embedding);
  EXPECT_NE(params.dense_w, prob.params.dense_w);
}

TEST(Adam, MatchesHandRolledMultiStep) {
  std::vector<double> p = {0.3, -0.7}, m = {0, 0}, v = {0, 0};
  double rp[2] = {0.3, -0.7}, rm[2] = {0, 0}, rv[2] = {0, 0};
  const double grads[3][2] = {{0.1, -0.2}, {0.05, 0.4}, {-0.3, 0.0}};
  for (int t = 1; t <= 3; ++t) {
    std::vector<double> g(grads[t - 1], grads[t - 1] + 2);
    kernels::adam_update_serial(
        p, g, m, v, {0.01, 0.9, 0.999, 1e-8, 1.0 - std::pow(0.9, t), 1.0 - std::pow(0.999, t)});
    for (int i = 0; i < 2; ++i) {
      rm[i] = 0.9 * rm[i] + 0.1 * g[i];
      rv[i] = 0.999 * rv[i] + 0.001 * g[i] * g[i];
      const double mh = rm[i] / (1.0 - std::pow(0.9, t));
      const double vh = rv[i] / (1.0 - std::pow(0.999, t));
      rp[i] -= 0.01 * mh / (std::sqrt(vh) + 1e-8);
    }
  }
  EXPECT_NEAR(p[0], rp[0], 1e-15);
  EXPECT_NEAR(p[1], rp[1], 1e-15);
}

TEST_F(ThreadCount, ModelForwardBackwardSerialEqualsParallel) {
  oracle::Problem prob = oracle::random_problem(21, Arch::kBiLstm, 6, 5, 4, 3, 37);
  prob.config.dropout_rate = 0.2;
  prob.config.recurrent_dropout_rate = 0.2;
  const DropoutPlan plan{true, 1234};
  ForwardCache sc;
  const Tensor sp = model_forward(prob.params, prob.config, prob.batch, plan, kernels::Exec::kSerial, &sc);
  const ModelParams sg = backward(prob.params, prob.config, sc, prob.labels, kernels::Exec::kSerial);
  for (int threads : {1, 2, 5}) {
    kernels::set_threads(threads);
    ForwardCache pc;
    const Tensor pp =
        model_forward(prob.params, prob.config, prob.batch, plan, kernels::Exec::kParallel, &pc);
    const ModelParams pg =
        backward(prob.params, prob.config, pc, prob.labels, kernels::Exec::kParallel);
    EXPECT_EQ(sp, pp);
    EXPECT_EQ(sg, pg);
  }
}

TEST(Dropout, TrainingMasksDependOnSeed) {
  oracle::Problem prob = oracle::random_problem(22, Arch::kLstm, 4, 3, 3, 2, 4);
  prob.config.dropout_rate = 0.5;
  const Tensor a = model_forward(prob.params, prob.config, prob.batch, {true, 1}, kernels::Exec::kSerial);
  const Tensor b = model_forward(prob.params, prob.config, prob.batch, {true, 1}, kernels::Exec::kSerial);
  const Tensor c = model_forward(prob.params, prob.config, prob.batch, {true, 2}, kernels::Exec::kSerial);
  const Tensor inference = model_forward(prob.params, prob.config, prob.batch, {}, kernels::Exec::kSerial);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_NE(a, inference);
}

}  // namespace
}  // namespace hsd
