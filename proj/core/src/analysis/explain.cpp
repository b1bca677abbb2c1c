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

#include "triagekit/analysis/explain.hpp"

#include <string>
#include <vector>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/parallel.hpp"
#include "triagekit/common/text.hpp"
#include "triagekit/corpus/markup.hpp"

namespace triagekit {
namespace {

int PredictOne(const FittedPipeline& model, const std::vector<double>& row) {
  Matrix m(1, row.size());
  m.data = row;
  return model.PredictCodes(m).front();
}

}  // namespace

ShiftTag TagForShift(int shift) noexcept {
  if (shift >= 1) return ShiftTag::kGreen;
  if (shift == -1) return ShiftTag::kYellow;
  if (shift <= -2) return ShiftTag::kRed;
  return ShiftTag::kNone;
}

Explanation MaskExplain(const Featurizer& featurizer, const FittedPipeline& model,
                        std::string_view body_raw, std::string post_id,
                        std::string_view unk, int threads) {
  if (featurizer.Columns() != model.columns()) {
    throw DataError("the featurizer does not produce the columns the model was trained on");
  }
  Explanation ex;
  ex.post_id = std::move(post_id);
  ex.text = StripMarkup(body_raw);
  const int original = PredictOne(model, featurizer.FeaturizeText(ex.text));
  ex.coarse = model.CoarseOf(original);
  ex.granular = model.codebook()[static_cast<std::size_t>(original)];

  const auto tokens = Tokenize(ex.text);
  ex.tokens.resize(tokens.size());
  ParallelFor(tokens.size(), threads, [&](std::size_t t) {
    std::string masked = ex.text.substr(0, tokens[t].begin);
    masked += unk;
    masked += ex.text.substr(tokens[t].end);
    const Coarse m = model.CoarseOf(PredictOne(model, featurizer.FeaturizeText(masked)));
    auto& a = ex.tokens[t];
    a.index = t;
    a.text = tokens[t].text;
    a.original = ex.coarse;
    a.masked = m;
    a.shift = Ordinal(m) - Ordinal(ex.coarse);
  });
  return ex;
}

std::string SerializeAttributions(const std::vector<Explanation>& explanations) {
  std::string out = "post_id\tindex\ttoken\toriginal\tmasked\tshift\n";
  for (const auto& ex : explanations) {
    for (const auto& a : ex.tokens) {
      out += EscapeField(ex.post_id) + "\t" + std::to_string(a.index) + "\t" +
             EscapeField(a.text) + "\t" + std::string(CoarseName(a.original)) + "\t" +
             std::string(CoarseName(a.masked)) + "\t" + std::to_string(a.shift) + "\n";
    }
  }
  return out;
}

}  // namespace triagekit
