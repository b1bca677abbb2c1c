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

#ifndef TRIAGEKIT_REPORT_REPORT_HPP_
#define TRIAGEKIT_REPORT_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triagekit/analysis/explain.hpp"
#include "triagekit/analysis/importance.hpp"
#include "triagekit/corpus/labels.hpp"
#include "triagekit/eval/metrics.hpp"
#include "triagekit/featurize/feature_table.hpp"

namespace triagekit {

// (v - min) / (max - min); a constant input maps to zeros.
std::vector<double> NormalizeMinMax(std::span<const double> values);

struct ViolinDatum {
  std::string feature;
  Coarse coarse = Coarse::kGreen;
  double value = 0.0;
};

// Long-format rows for the top_k mean-aggregated features of `importance`
// (clamped to the number available), most important first, one row per table
// row. Values are min-max normalized per feature over all rows of `table`.
std::vector<ViolinDatum> EmitViolinData(const FeatureTable& table,
                                        std::span<const Coarse> labels,
                                        const ImportanceReport& importance,
                                        std::size_t top_k = 10);

// TSV `feature<TAB>class<TAB>value`.
std::string SerializeViolinData(std::span<const ViolinDatum> rows);

enum class HighlightFormat { kHtml, kMarkdown };

// One section per explanation, headed by the prediction ("Red
// (currentAcuteDistress)"). Tagged tokens become
// <span class="shift-yellow|shift-red|shift-green"> in HTML or
// [y:word] / [r:word] / [g:word] in markdown; untagged text is copied.
std::string EmitHighlightDoc(std::span<const Explanation> explanations,
                             HighlightFormat format);

struct BenchmarkEntry {
  std::string feature_set;
  std::string trainer;
  std::size_t feature_count = 0;
  double cv_score = 0.0;
  std::optional<MetricReport> test;
  std::optional<MetricReport> external;
};

struct BenchmarkRow {
  std::string feature_set;
  std::string trainer;
  std::size_t feature_count = 0;
  double cv_score = 0.0;
  std::optional<double> test_score;
  std::optional<double> external_score;
  bool better_than_chance = false;
  friend bool operator==(const BenchmarkRow&, const BenchmarkRow&) = default;
};

// Scores are macro-F1 excluding green. The marker column holds "*" iff the
// external score exceeds `chance_threshold`. Missing scores are written "-".
// Throws UsageError on an empty list.
std::string EmitBenchmarkTable(std::span<const BenchmarkEntry> entries,
                               double chance_threshold);
std::vector<BenchmarkRow> ParseBenchmarkTable(std::string_view content);

}  // namespace triagekit

#endif  // TRIAGEKIT_REPORT_REPORT_HPP_
