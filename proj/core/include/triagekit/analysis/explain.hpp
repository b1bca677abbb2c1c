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

#ifndef TRIAGEKIT_ANALYSIS_EXPLAIN_HPP_
#define TRIAGEKIT_ANALYSIS_EXPLAIN_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "triagekit/corpus/labels.hpp"
#include "triagekit/featurize/featurizer.hpp"
#include "triagekit/model/pipeline.hpp"

namespace triagekit {

inline constexpr std::string_view kUnknownToken = "unkunkunk";

struct TokenAttribution {
  std::size_t index = 0;
  std::string text;
  Coarse original = Coarse::kGreen;
  Coarse masked = Coarse::kGreen;
  int shift = 0;  // Ordinal(masked) - Ordinal(original)
};

struct Explanation {
  std::string post_id;
  std::string text;  // cleaned body that was tokenized
  Coarse coarse = Coarse::kGreen;
  std::string granular;
  std::vector<TokenAttribution> tokens;
};

// Report colour for a shift: -1 yellow, <= -2 red, >= +1 green, 0 none.
enum class ShiftTag { kNone, kYellow, kRed, kGreen };
ShiftTag TagForShift(int shift) noexcept;

// Masks each token of the cleaned body in turn (its punctuation-stripped core
// is replaced by `unk`), re-runs cleaning, sentence splitting, featurization
// and prediction, and records the coarse shift. Throws DataError when the
// featurizer's columns differ from the model's.
Explanation MaskExplain(const Featurizer& featurizer, const FittedPipeline& model,
                        std::string_view body_raw, std::string post_id = {},
                        std::string_view unk = kUnknownToken, int threads = 1);

// TSV `post_id<TAB>index<TAB>token<TAB>original<TAB>masked<TAB>shift`.
std::string SerializeAttributions(const std::vector<Explanation>& explanations);

}  // namespace triagekit

#endif  // TRIAGEKIT_ANALYSIS_EXPLAIN_HPP_
