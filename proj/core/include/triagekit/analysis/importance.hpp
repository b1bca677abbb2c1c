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

#ifndef TRIAGEKIT_ANALYSIS_IMPORTANCE_HPP_
#define TRIAGEKIT_ANALYSIS_IMPORTANCE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triagekit/featurize/feature_table.hpp"
#include "triagekit/model/pipeline.hpp"

namespace triagekit {

enum class ScoreMetric { kMacroF1ExclGreen, kMacroF1All };

std::string_view ScoreMetricName(ScoreMetric m) noexcept;

struct ImportanceEntry {
  std::size_t column = 0;
  std::string name;
  double mean_drop = 0.0;
  double std = 0.0;  // population, over repeats
  std::size_t n_repeats = 0;
};

struct ImportanceReport {
  ScoreMetric metric = ScoreMetric::kMacroF1ExclGreen;
  double base_score = 0.0;
  // Sorted by mean drop descending, ties by column index.
  std::vector<ImportanceEntry> entries;
};

// For each column and repeat, shuffles that column of `x` with stream
// (seed, "importance/<column>", repeat), re-predicts and records
// base score - shuffled score. Columns the model cannot see score exactly 0
// without being evaluated. The model is never refit.
ImportanceReport PermutationImportance(const FittedPipeline& model,
                                       const FeatureTable& x,
                                       std::span<const std::string> y_granular,
                                       ScoreMetric metric = ScoreMetric::kMacroF1ExclGreen,
                                       std::size_t n_repeats = 5,
                                       std::uint64_t seed = 0, int threads = 1);

// TSV `feature<TAB>column<TAB>mean_drop<TAB>std<TAB>n_repeats`, report order.
std::string SerializeImportance(const ImportanceReport& report);
ImportanceReport ParseImportance(std::string_view content);

}  // namespace triagekit

#endif  // TRIAGEKIT_ANALYSIS_IMPORTANCE_HPP_
