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

#include "triagekit/eval/cv.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "triagekit/common/error.hpp"
#include "triagekit/common/parallel.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/eval/metrics.hpp"
#include "triagekit/model/pipeline.hpp"

namespace triagekit {

FoldAssignments StratifiedRepeatedCV(const CVPlan& plan, std::span<const int> y) {
  if (plan.folds < 2) throw UsageError("cross-validation needs at least 2 folds");
  if (plan.repeats < 1) throw UsageError("cross-validation needs at least 1 repeat");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
  for (const auto& [c, rows] : by_class) {
    if (rows.size() < plan.folds) {
      throw DataError("class " + std::to_string(c) + " has " +
                      std::to_string(rows.size()) + " members, fewer than " +
                      std::to_string(plan.folds) + " folds");
    }
  }
  FoldAssignments out(plan.repeats, std::vector<std::vector<std::size_t>>(plan.folds));
  for (std::size_t r = 0; r < plan.repeats; ++r) {
    Rng rng(plan.seed, "cv", r);
    std::size_t position = 0;
    for (auto [c, rows] : by_class) {
      rng.Shuffle(std::span<std::size_t>(rows));
      for (std::size_t row : rows) out[r][position++ % plan.folds].push_back(row);
    }
    for (auto& fold : out[r]) std::sort(fold.begin(), fold.end());
  }
  return out;
}

FoldAssignments StratifiedRepeatedCV(const CVPlan& plan, std::span<const Coarse> y) {
  std::vector<int> codes;
  codes.reserve(y.size());
  for (Coarse c : y) codes.push_back(Ordinal(c));
  return StratifiedRepeatedCV(plan, codes);
}

CVResult CrossValidate(const PipelineSpec& spec, const Matrix& x,
                       std::span<const std::string> y_granular,
                       const LabelMap& label_map, const CVPlan& plan, int threads,
                       Deadline deadline) {
  if (x.rows != y_granular.size()) {
    throw DataError("feature rows and labels differ in length");
  }
  std::vector<Coarse> coarse;
  coarse.reserve(y_granular.size());
  for (const auto& tag : y_granular) coarse.push_back(label_map.Map(tag));
  const FoldAssignments folds = StratifiedRepeatedCV(plan, coarse);

  const std::size_t n_tasks = plan.repeats * plan.folds;
  std::vector<double> scores(n_tasks, 0.0);
  std::vector<char> done(n_tasks, 0);
  std::vector<std::vector<std::string>> warnings(n_tasks);
  ParallelFor(n_tasks, threads, [&](std::size_t task) {
    if (deadline && std::chrono::steady_clock::now() >= *deadline) return;
    const auto& test = folds[task / plan.folds][task % plan.folds];
    std::vector<char> in_test(x.rows, 0);
    for (std::size_t row : test) in_test[row] = 1;
    Matrix train(x.rows - test.size(), x.cols);
    Matrix held(test.size(), x.cols);
    std::vector<std::string> y_train;
    std::vector<Coarse> y_held;
    std::size_t ti = 0;
    std::size_t hi = 0;
    for (std::size_t row = 0; row < x.rows; ++row) {
      const auto src = x.row(row);
      if (in_test[row]) {
        std::copy(src.begin(), src.end(), held.row(hi++).begin());
        y_held.push_back(coarse[row]);
      } else {
        std::copy(src.begin(), src.end(), train.row(ti++).begin());
        y_train.push_back(y_granular[row]);
      }
    }
    const FittedPipeline fp =
        FitMatrix(spec, train, y_train, label_map, DeriveSeed(plan.seed, "fit", task));
    std::vector<Coarse> pred;
    for (int code : fp.PredictCodes(held)) pred.push_back(fp.CoarseOf(code));
    scores[task] = MacroF1ExclGreen(y_held, pred);
    warnings[task] = fp.warnings();
    done[task] = 1;
  });

  CVResult result;
  for (std::size_t task = 0; task < n_tasks; ++task) {
    if (!done[task]) {
      result.timed_out = true;
      continue;
    }
    ++result.fits;
    result.fold_scores.push_back(scores[task]);
    for (const auto& w : warnings[task]) {
      if (std::find(result.warnings.begin(), result.warnings.end(), w) ==
          result.warnings.end()) {
        result.warnings.push_back(w);
      }
    }
  }
  if (!result.fold_scores.empty()) {
    double sum = 0.0;
    for (double s : result.fold_scores) sum += s;
    result.mean = sum / static_cast<double>(result.fold_scores.size());
    double ss = 0.0;
    for (double s : result.fold_scores) ss += (s - result.mean) * (s - result.mean);
    result.std = std::sqrt(ss / static_cast<double>(result.fold_scores.size()));
  }
  return result;
}

}  // namespace triagekit
