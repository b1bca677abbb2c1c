// Copyright 2026 The TriageKit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "triagekit/model/anova.hpp"

#include <algorithm>
#include <numeric>

#include "triagekit/common/error.hpp"

namespace triagekit {

double AnovaF(std::span<const double> column, std::span<const int> classes) {
  if (column.size() != classes.size()) {
    throw DataError("anova: column and class vectors differ in length");
  }
  if (classes.empty()) throw DataError("anova: no observations");
  const int max_class = *std::max_element(classes.begin(), classes.end());
  if (*std::min_element(classes.begin(), classes.end()) < 0) {
    throw DataError("anova: negative class code");
  }
  std::vector<double> sums(static_cast<std::size_t>(max_class) + 1, 0.0);
  std::vector<std::size_t> counts(sums.size(), 0);
  double total = 0.0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    sums[static_cast<std::size_t>(classes[i])] += column[i];
    ++counts[static_cast<std::size_t>(classes[i])];
    total += column[i];
  }
  const std::size_t k = static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
  const std::size_t n = column.size();
  if (k < 2) throw DataError("anova: need at least two classes");
  if (n <= k) throw DataError("anova: need more observations than classes");

  const double grand = total / static_cast<double>(n);
  std::vector<double> means(sums.size(), 0.0);
  double between = 0.0;
  for (std::size_t g = 0; g < sums.size(); ++g) {
    if (counts[g] == 0) continue;
    means[g] = sums[g] / static_cast<double>(counts[g]);
    const double d = means[g] - grand;
    between += static_cast<double>(counts[g]) * d * d;
  }
  double within = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = column[i] - means[static_cast<std::size_t>(classes[i])];
    within += d * d;
  }
  if (within == 0.0) return between > 0.0 ? kInfiniteF : 0.0;
  return (between / static_cast<double>(k - 1)) /
         (within / static_cast<double>(n - k));
}

std::vector<double> AnovaFColumns(const Matrix& x, std::span<const int> classes) {
  std::vector<double> scores(x.cols);
  std::vector<double> column(x.rows);
  for (std::size_t c = 0; c < x.cols; ++c) {
    for (std::size_t r = 0; r < x.rows; ++r) column[r] = x(r, c);
    scores[c] = AnovaF(column, classes);
  }
  return scores;
}

std::vector<std::size_t> SelectTopK(std::span<const double> scores, std::size_t k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace triagekit
