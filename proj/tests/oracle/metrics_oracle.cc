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

#include "oracle/metrics_oracle.hpp"

namespace oracle {

Metrics brute_force_metrics(const std::vector<std::size_t>& truth,
                            const std::vector<std::size_t>& pred, std::size_t classes) {
  Metrics m;
  m.counts.resize(classes);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == pred[i]) {
      ++correct;
      ++m.counts[truth[i]].tp;
    } else {
      ++m.counts[pred[i]].fp;
      ++m.counts[truth[i]].fn;
    }
  }
  for (const auto& c : m.counts) {
    const double p = c.tp + c.fp == 0 ? 0.0 : double(c.tp) / double(c.tp + c.fp);
    const double r = c.tp + c.fn == 0 ? 0.0 : double(c.tp) / double(c.tp + c.fn);
    const std::size_t f_den = 2 * c.tp + c.fp + c.fn;
    const double f = f_den == 0 ? 0.0 : double(2 * c.tp) / double(f_den);
    m.precision.push_back(p);
    m.recall.push_back(r);
    m.f1.push_back(f);
  }
  for (std::size_t c = 0; c < classes; ++c) {
    m.macro_precision += m.precision[c];
    m.macro_recall += m.recall[c];
    m.macro_f1 += m.f1[c];
  }
  m.macro_precision /= double(classes);
  m.macro_recall /= double(classes);
  m.macro_f1 /= double(classes);
  m.accuracy = double(correct) / double(truth.size());
  return m;
}

}  // namespace oracle
