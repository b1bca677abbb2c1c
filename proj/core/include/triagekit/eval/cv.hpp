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

#ifndef TRIAGEKIT_EVAL_CV_HPP_
#define TRIAGEKIT_EVAL_CV_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "triagekit/corpus/labels.hpp"
#include "triagekit/model/matrix.hpp"
#include "triagekit/model/pipeline_spec.hpp"

namespace triagekit {

struct CVPlan {
  std::size_t folds = 10;
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
};

// assignments[repeat][fold] holds the ascending test-row indices of that fold.
using FoldAssignments = std::vector<std::vector<std::vector<std::size_t>>>;

// Within each repeat every class is shuffled on stream (seed, "cv", repeat);
// the classes are then laid end to end and position p goes to fold p mod K.
// Throws UsageError for folds < 2 or repeats < 1, DataError when a class has
// fewer members than folds.
FoldAssignments StratifiedRepeatedCV(const CVPlan& plan, std::span<const int> y);
FoldAssignments StratifiedRepeatedCV(const CVPlan& plan, std::span<const Coarse> y);

struct CVResult {
  // One score per (repeat, fold), repeat-major.
  std::vector<double> fold_scores;
  double mean = 0.0;
  double std = 0.0;  // population
  bool timed_out = false;
  std::vector<std::string> warnings;  // distinct, in first-seen order
  std::size_t fits = 0;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Fits `spec` on every training split and scores macro-F1 excluding green on
// the coarse-mapped predictions of the held-out fold. Folds are stratified on
// the coarse classes. The deadline is checked before each fold; once it has
// passed the remaining folds are skipped and timed_out is set.
CVResult CrossValidate(const PipelineSpec& spec, const Matrix& x,
                       std::span<const std::string> y_granular,
                       const LabelMap& label_map, const CVPlan& plan,
                       int threads = 1, Deadline deadline = std::nullopt);

}  // namespace triagekit

#endif  // TRIAGEKIT_EVAL_CV_HPP_
