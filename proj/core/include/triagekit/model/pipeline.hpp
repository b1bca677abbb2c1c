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

#ifndef TRIAGEKIT_MODEL_PIPELINE_HPP_
#define TRIAGEKIT_MODEL_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "triagekit/corpus/labels.hpp"
#include "triagekit/featurize/feature_table.hpp"
#include "triagekit/model/matrix.hpp"
#include "triagekit/model/pipeline_spec.hpp"

namespace triagekit {

// Learned state of each component.
struct ScaleState {
  std::vector<double> means;
  std::vector<double> scales;
};
struct BinarizeState {
  double threshold = 0.0;
};
struct SelectState {
  std::vector<std::size_t> indices;  // strictly increasing
};
using StepState = std::variant<ScaleState, BinarizeState, SelectState>;

struct KnnState {
  std::size_t k = 1;
  Matrix train;
  std::vector<int> codes;
};
struct LinearState {
  bool logistic = false;
  // One row per label code; last entry of each row is the bias.
  std::vector<std::vector<double>> weights;
  // Per code: objective value before the first pass and after each pass.
  std::vector<std::vector<double>> loss_history;
};
struct MajorityState {
  int code = 0;
};
using ClassifierState = std::variant<KnnState, LinearState, MajorityState>;

// Immutable result of Fit. Safe for concurrent prediction.
class FittedPipeline {
 public:
  const PipelineSpec& spec() const { return spec_; }
  const LabelMap& label_map() const { return label_map_; }
  // Sorted distinct training labels; predictions are indices into it.
  const std::vector<std::string>& codebook() const { return codebook_; }
  const std::vector<std::size_t>& class_counts() const { return class_counts_; }
  const std::vector<ColumnDescriptor>& columns() const { return columns_; }
  const std::vector<StepState>& steps() const { return steps_; }
  const ClassifierState& classifier() const { return classifier_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::uint64_t seed() const { return seed_; }

  // Input columns that can influence a prediction, ascending.
  std::vector<std::size_t> UsedInputColumns() const;

  // Throws DataError listing missing and extra column descriptors when
  // `x` does not carry the training columns in training order.
  void CheckColumns(const FeatureTable& x) const;

  std::vector<std::string> Predict(const FeatureTable& x, int threads = 1) const;
  std::vector<Coarse> PredictCoarse(const FeatureTable& x, int threads = 1) const;

  // Raw-matrix path (no descriptor check). Returns codebook indices.
  std::vector<int> PredictCodes(const Matrix& x, int threads = 1) const;
  Matrix Transform(const Matrix& x) const;

  Coarse CoarseOf(int code) const { return coarse_of_code_[static_cast<std::size_t>(code)]; }

 private:
  friend FittedPipeline Fit(const PipelineSpec&, const FeatureTable&,
                            std::span<const std::string>, const LabelMap&,
                            std::uint64_t);
  friend FittedPipeline FitMatrix(const PipelineSpec&, const Matrix&,
                                  std::span<const std::string>, const LabelMap&,
                                  std::uint64_t);
  friend class ModelReader;

  void Finalize();
  int PreferredOf(std::span<const int> candidates) const;

  PipelineSpec spec_;
  LabelMap label_map_;
  std::vector<std::string> codebook_;
  std::vector<std::size_t> class_counts_;
  std::vector<ColumnDescriptor> columns_;
  std::size_t input_width_ = 0;
  std::vector<StepState> steps_;
  ClassifierState classifier_;
  std::vector<std::string> warnings_;
  std::uint64_t seed_ = 0;

  // Derived.
  std::vector<Coarse> coarse_of_code_;
  // Tie-break order: higher training frequency, then lower coarse ordinal,
  // then lexicographically smaller tag. preference_[code] is the position.
  std::vector<int> preference_;
};

// Fits `spec` on rows of `x` labeled with granular tags `y`. Deterministic in
// all arguments. Throws DataError on an empty training set, misaligned
// labels, or a label absent from `label_map`.
FittedPipeline Fit(const PipelineSpec& spec, const FeatureTable& x,
                   std::span<const std::string> y, const LabelMap& label_map,
                   std::uint64_t seed = 0);

// Same, on a bare matrix; column descriptors are synthesized as "x/c<i>/post".
FittedPipeline FitMatrix(const PipelineSpec& spec, const Matrix& x,
                         std::span<const std::string> y,
                         const LabelMap& label_map, std::uint64_t seed = 0);

// Versioned text container, first line "triagekit-model/1".
inline constexpr std::string_view kModelFormat = "triagekit-model/1";
std::string SerializeModel(const FittedPipeline& model);
// Throws DataError on a version mismatch, truncation, or malformed content;
// nothing is returned unless the whole file parsed.
FittedPipeline ParseModel(std::string_view content);
void SaveModel(const FittedPipeline& model, const std::filesystem::path& path);
FittedPipeline LoadModel(const std::filesystem::path& path);

}  // namespace triagekit

#endif  // TRIAGEKIT_MODEL_PIPELINE_HPP_
