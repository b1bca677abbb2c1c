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

#include "triagekit/featurize/embeddings.hpp"

#include <cmath>
#include <optional>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit {

void EmbeddingSet::SetPost(std::string post_id,
                           std::vector<std::vector<double>> vectors) {
  for (const auto& v : vectors) {
    if (v.size() != dim_) {
      throw DataError("embedding for post '" + post_id + "' has dimension " +
                      std::to_string(v.size()) + ", expected " +
                      std::to_string(dim_));
    }
  }
  posts_.insert_or_assign(std::move(post_id), std::move(vectors));
}

const std::vector<std::vector<double>>* EmbeddingSet::Find(
    std::string_view post_id) const {
  auto it = posts_.find(post_id);
  return it == posts_.end() ? nullptr : &it->second;
}

EmbeddingSet LoadEmbeddings(const std::filesystem::path& path,
                            const Corpus& corpus) {
  try {
    return ParseEmbeddings(ReadFile(path), corpus);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

EmbeddingSet ParseEmbeddings(std::string_view content, const Corpus& corpus) {
  const auto lines = SplitLines(content);
  if (lines.empty() || !StartsWith(lines[0], "#dim=")) {
    throw DataError("line 1: missing '#dim=D' header");
  }
  const auto dim = ParseInt(std::string_view(lines[0]).substr(5));
  if (!dim || *dim < 1) throw DataError("line 1: invalid dimension");
  if (lines.size() < 2 || lines[1] != "post_id\tsentence_index\tvalues") {
    throw DataError("line 2: expected header 'post_id<TAB>sentence_index<TAB>values'");
  }
  const std::size_t d = static_cast<std::size_t>(*dim);

  std::map<std::string, std::vector<std::optional<std::vector<double>>>, std::less<>>
      slots;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string where = "line " + std::to_string(i + 1) + ": ";
    const auto fields = SplitOn(lines[i], '\t');
    if (fields.size() != 3) throw DataError(where + "expected 3 fields");
    const std::string post_id(fields[0]);
    const auto index = ParseInt(fields[1]);
    if (!index || *index < 0) throw DataError(where + "invalid sentence index");
    const auto post_index = corpus.IndexOf(post_id);
    if (!post_index) throw DataError(where + "unknown post id '" + post_id + "'");
    const Post& post = corpus.posts()[*post_index];
    const auto s = static_cast<std::size_t>(*index);
    if (s >= post.sentences.size()) {
      throw DataError(where + "sentence index " + std::to_string(s) +
                      " out of range for post '" + post_id + "' (" +
                      std::to_string(post.sentences.size()) + " sentences)");
    }
    const auto parts = SplitOn(fields[2], ',');
    if (parts.size() != d) {
      throw DataError(where + "dimension mismatch: expected " + std::to_string(d) +
                      " values, found " + std::to_string(parts.size()));
    }
    std::vector<double> vec;
    vec.reserve(d);
    for (std::string_view part : parts) {
      const auto v = ParseDouble(part);
      if (!v || !std::isfinite(*v)) {
        throw DataError(where + "invalid value '" + std::string(part) + "'");
      }
      vec.push_back(*v);
    }
    auto& post_slots = slots[post_id];
    post_slots.resize(post.sentences.size());
    if (post_slots[s]) {
      throw DataError(where + "duplicate row for (" + post_id + ", " +
                      std::to_string(s) + ")");
    }
    post_slots[s] = std::move(vec);
  }

  EmbeddingSet set(d);
  for (const auto& post : corpus.posts()) {
    if (post.sentences.empty()) continue;
    auto it = slots.find(post.id);
    std::vector<std::vector<double>> vectors;
    for (std::size_t s = 0; s < post.sentences.size(); ++s) {
      if (it == slots.end() || !it->second[s]) {
        throw DataError("missing sentence (" + post.id + ", " +
                        std::to_string(s) + ")");
      }
      vectors.push_back(std::move(*it->second[s]));
    }
    set.SetPost(post.id, std::move(vectors));
  }
  return set;
}

std::string SerializeEmbeddings(const EmbeddingSet& set) {
  std::string out = "#dim=" + std::to_string(set.dim()) +
                    "\npost_id\tsentence_index\tvalues\n";
  for (const auto& [id, vectors] : set.posts()) {
    for (std::size_t s = 0; s < vectors.size(); ++s) {
      out += id;
      out += '\t';
      out += std::to_string(s);
      out += '\t';
      for (std::size_t k = 0; k < vectors[s].size(); ++k) {
        if (k > 0) out += ',';
        out += FormatDouble(vectors[s][k]);
      }
      out += '\n';
    }
  }
  return out;
}

std::vector<double> StubEncode(std::string_view sentence, std::size_t dim,
                               std::uint64_t seed) {
  std::vector<std::uint32_t> acc(dim, std::uint32_t{1} << 31);
  const std::uint64_t seed_mix = Mix64(seed);
  for (const auto& token : Tokenize(sentence)) {
    const std::uint64_t h = Mix64(Fnv1a64(token.text) ^ seed_mix);
    for (std::size_t d = 0; d < dim; ++d) {
      const auto high = static_cast<std::int32_t>(
          static_cast<std::uint32_t>(Mix64(h + d) >> 32));
      const std::int32_t contribution = high >> 8;
      acc[d] += static_cast<std::uint32_t>(contribution);
    }
  }
  std::vector<double> out(dim);
  double norm_sq = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const std::int64_t centered =
        static_cast<std::int64_t>(acc[d]) - (std::int64_t{1} << 31);
    out[d] = static_cast<double>(centered) / 2147483648.0;
    norm_sq += out[d] * out[d];
  }
  if (norm_sq == 0.0) return std::vector<double>(dim, 0.0);
  const double norm = std::sqrt(norm_sq);
  for (double& v : out) v /= norm;
  return out;
}

EmbeddingSet StubEmbeddings(const Corpus& corpus, std::size_t dim,
                            std::uint64_t seed) {
  EmbeddingSet set(dim);
  for (const auto& post : corpus.posts()) {
    if (post.sentences.empty()) continue;
    std::vector<std::vector<double>> vectors;
    vectors.reserve(post.sentences.size());
    for (const auto& s : post.sentences) vectors.push_back(StubEncode(s, dim, seed));
    set.SetPost(post.id, std::move(vectors));
  }
  return set;
}

}  // namespace triagekit
