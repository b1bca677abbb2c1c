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

#ifndef TRIAGEKIT_FEATURIZE_EMBEDDINGS_HPP_
#define TRIAGEKIT_FEATURIZE_EMBEDDINGS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "triagekit/corpus/corpus.hpp"

namespace triagekit {

// Sentence vectors keyed by post id, indexed by sentence position.
class EmbeddingSet {
 public:
  explicit EmbeddingSet(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }

  // vectors.size() must equal the post's sentence count.
  void SetPost(std::string post_id, std::vector<std::vector<double>> vectors);
  const std::vector<std::vector<double>>* Find(std::string_view post_id) const;

  const std::map<std::string, std::vector<std::vector<double>>, std::less<>>&
  posts() const {
    return posts_;
  }

 private:
  std::size_t dim_;
  std::map<std::string, std::vector<std::vector<double>>, std::less<>> posts_;
};

// Embedding file:
//   #dim=D
//   post_id<TAB>sentence_index<TAB>values
//   <id><TAB><index><TAB>v1,v2,...,vD
// The result covers every sentence of every non-empty post of `corpus`
// exactly once. Throws DataError on a dimension mismatch, an unknown post, an
// out-of-range or duplicate sentence index, or a missing (post, sentence).
EmbeddingSet LoadEmbeddings(const std::filesystem::path& path,
                            const Corpus& corpus);
EmbeddingSet ParseEmbeddings(std::string_view content, const Corpus& corpus);

// Rows sorted by (post_id, sentence_index); values in shortest round-trip
// decimal form.
std::string SerializeEmbeddings(const EmbeddingSet& set);

// Deterministic offline sentence encoder.
//
// For each token t of the shared tokenizer (case preserved):
//   key    = FNV-1a-64(bytes of t)
//   h      = Mix64(key XOR Mix64(seed))
//   for d in [0, D):
//     c_d  = int32(high 32 bits of Mix64(h + d)) >> 8   (arithmetic shift)
//     s_d += c_d                                        (uint32, wrapping)
// with every s_d starting at 2^31. Then s'_d = (s_d mod 2^32) - 2^31,
// x_d = s'_d / 2^31, and the output is x / ||x||, or the zero vector when
// ||x|| = 0 (empty sentence). Mix64 is the SplitMix64 finalizer
// (triagekit/common/rng.hpp).
std::vector<double> StubEncode(std::string_view sentence, std::size_t dim,
                               std::uint64_t seed);

// Embedding file for every sentence of every post, using StubEncode.
EmbeddingSet StubEmbeddings(const Corpus& corpus, std::size_t dim,
                            std::uint64_t seed);

}  // namespace triagekit

#endif  // TRIAGEKIT_FEATURIZE_EMBEDDINGS_HPP_
