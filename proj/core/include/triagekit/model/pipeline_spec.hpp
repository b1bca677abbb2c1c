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

#ifndef TRIAGEKIT_MODEL_PIPELINE_SPEC_HPP_
#define TRIAGEKIT_MODEL_PIPELINE_SPEC_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace triagekit {

// Per-column z-scoring; zero-variance columns keep scale 1.
struct ScaleStep {
  friend bool operator==(const ScaleStep&, const ScaleStep&) = default;
};
// x -> (x > threshold) ? 1 : 0
struct BinarizeStep {
  double threshold = 0.0;
  friend bool operator==(const BinarizeStep&, const BinarizeStep&) = default;
};
// Keeps the k columns with the largest ANOVA F statistic.
struct SelectKAnovaStep {
  std::size_t k = 1;
  friend bool operator==(const SelectKAnovaStep&, const SelectKAnovaStep&) = default;
};
// k-nearest neighbours, Euclidean metric.
struct KnnSpec {
  std::size_t k = 1;
  friend bool operator==(const KnnSpec&, const KnnSpec&) = default;
};
// One-vs-rest L2-regularized squared-hinge linear classifier.
struct LinearSvmSpec {
  double c = 1.0;
  std::size_t epochs = 50;
  friend bool operator==(const LinearSvmSpec&, const LinearSvmSpec&) = default;
};
// One-vs-rest L2-regularized logistic regression.
struct LogisticSpec {
  double l2 = 0.01;
  std::size_t epochs = 50;
  friend bool operator==(const LogisticSpec&, const LogisticSpec&) = default;
};
// Predicts the most frequent training label.
struct MajoritySpec {
  friend bool operator==(const MajoritySpec&, const MajoritySpec&) = default;
};

using Component = std::variant<ScaleStep, BinarizeStep, SelectKAnovaStep,
                               KnnSpec, LinearSvmSpec, LogisticSpec,
                               MajoritySpec>;

bool IsClassifier(const Component& c) noexcept;

// Canonical text of one component, e.g. "knn(21)" or "binarize(0.0)".
std::string FormatComponent(const Component& c);

// Ordered preprocessing chain ending in exactly one classifier.
class PipelineSpec {
 public:
  PipelineSpec() = default;
  // Throws UsageError if the invariants do not hold.
  explicit PipelineSpec(std::vector<Component> components);

  // Parses canonical text such as "select_k_anova(100)|binarize(0.0)|knn(21)".
  // Whitespace around tokens is ignored. Throws UsageError.
  static PipelineSpec Parse(std::string_view text);

  std::string ToString() const;

  const std::vector<Component>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const Component& classifier() const { return components_.back(); }

  friend bool operator==(const PipelineSpec&, const PipelineSpec&) = default;

 private:
  std::vector<Component> components_;
};

// Throws UsageError when `components` has no classifier, a classifier that is
// not last, or a count parameter below 1.
void ValidateComponents(const std::vector<Component>& components);

// select_k_anova(min(100, num_columns)) | binarize(0.0) | knn(21)
PipelineSpec ReferencePipeline(std::size_t num_columns);

}  // namespace triagekit

#endif  // TRIAGEKIT_MODEL_PIPELINE_SPEC_HPP_
