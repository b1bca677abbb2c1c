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

#ifndef TRIAGEKIT_EVAL_METRICS_HPP_
#define TRIAGEKIT_EVAL_METRICS_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triagekit/corpus/labels.hpp"
#include "triagekit/featurize/feature_table.hpp"
#include "triagekit/model/pipeline.hpp"

namespace triagekit {

// Unweighted mean of per-class F1 over `included`. Classes with no true and
// no predicted members score 0. Throws DataError on a length mismatch and
// UsageError when `included` is empty.
double MacroF1(std::span<const int> y_true, std::span<const int> y_pred,
               std::span<const int> included);
double MacroF1(std::span<const Coarse> y_true, std::span<const Coarse> y_pred,
               std::span<const Coarse> included);

// Over the classes present in either vector.
double MacroF1All(std::span<const int> y_true, std::span<const int> y_pred);
double MacroF1All(std::span<const Coarse> y_true, std::span<const Coarse> y_pred);

// Over amber, red and crisis.
double MacroF1ExclGreen(std::span<const Coarse> y_true,
                        std::span<const Coarse> y_pred);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

struct MetricReport {
  std::size_t n = 0;
  std::array<ClassMetrics, kNumCoarse> per_class{};
  // confusion[true][predicted], indexed by coarse ordinal.
  std::array<std::array<std::size_t, kNumCoarse>, kNumCoarse> confusion{};
  double macro_f1_all = 0.0;
  double macro_f1_excl_green = 0.0;

  const ClassMetrics& of(Coarse c) const {
    return per_class[static_cast<std::size_t>(Ordinal(c))];
  }
  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

MetricReport BuildMetricReport(std::span<const Coarse> y_true,
                               std::span<const Coarse> y_pred);

// Scores `model` on `x` against granular labels mapped through the model's
// label map. Throws DataError on a column mismatch or misaligned rows.
MetricReport EvaluateHeldout(const FittedPipeline& model, const FeatureTable& x,
                             std::span<const std::string> y_granular,
                             int threads = 1);

// Key-value text with one block per class; first line "triagekit-metrics/1".
std::string SerializeMetricReport(const MetricReport& report);
MetricReport ParseMetricReport(std::string_view content);

}  // namespace triagekit

#endif  // TRIAGEKIT_EVAL_METRICS_HPP_
