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

#ifndef TRIAGEKIT_FEATURIZE_FEATURIZER_HPP_
#define TRIAGEKIT_FEATURIZE_FEATURIZER_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "triagekit/corpus/corpus.hpp"
#include "triagekit/featurize/category.hpp"
#include "triagekit/featurize/embeddings.hpp"
#include "triagekit/featurize/feature_table.hpp"
#include "triagekit/featurize/vader.hpp"

namespace triagekit {

using SentenceEncoder = std::function<std::vector<double>(std::string_view)>;

// Sentence-level VADER scores (pos, neg, neu, compound), aggregated.
struct VaderExtractor {
  std::string name = "vader";
  std::shared_ptr<const ValenceLexicon> lexicon;
};

// Post-level category proportions, no sentence splitting.
struct CategoryExtractor {
  std::string name;
  std::shared_ptr<const CategoryLexicon> lexicon;
};

// Sentence vectors computed on the fly, aggregated.
struct EncoderExtractor {
  std::string name;
  std::size_t dim = 0;
  SentenceEncoder encode;
};

// Sentence vectors read from an embedding file, aggregated. Only posts present
// in the file can be featurized.
struct IngestedExtractor {
  std::string name;
  std::shared_ptr<const EmbeddingSet> embeddings;
};

using Extractor = std::variant<VaderExtractor, CategoryExtractor,
                               EncoderExtractor, IngestedExtractor>;

EncoderExtractor MakeStubExtractor(std::string name, std::size_t dim,
                                   std::uint64_t seed);

// Ordered list of extractors producing one post-level feature row.
class Featurizer {
 public:
  void Add(Extractor extractor);
  const std::vector<Extractor>& extractors() const { return extractors_; }

  std::vector<ColumnDescriptor> Columns() const;

  std::vector<double> FeaturizePost(const Post& post) const;
  // Cleans, re-splits and featurizes free text. Throws UsageError when an
  // ingested extractor is present (there is no encoder to call).
  std::vector<double> FeaturizeText(std::string_view body_raw) const;

  // Rows in the order of `ids` (all posts when empty). Parallel over posts.
  FeatureTable Build(const Corpus& corpus, std::span<const std::string> ids = {},
                     int threads = 1) const;

 private:
  std::vector<Extractor> extractors_;
};

// Convenience wrapper matching the library's table-building entry point.
inline FeatureTable BuildFeatureTable(const Corpus& corpus,
                                      const Featurizer& featurizer,
                                      int threads = 1) {
  return featurizer.Build(corpus, {}, threads);
}

}  // namespace triagekit

#endif  // TRIAGEKIT_FEATURIZE_FEATURIZER_HPP_
