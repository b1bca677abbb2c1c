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

#include "triagekit/featurize/featurizer.hpp"

#include <array>

#include "triagekit/common/error.hpp"
#include "triagekit/common/parallel.hpp"

namespace triagekit {
namespace {

constexpr std::array<const char*, 4> kVaderBases = {"pos", "neg", "neu",
                                                    "compound"};

void AppendAggregated(std::vector<ColumnDescriptor>& out,
                      const std::string& extractor,
                      const std::vector<std::string>& bases) {
  for (auto agg : {Aggregation::kMean, Aggregation::kMax, Aggregation::kMin}) {
    for (const auto& base : bases) out.push_back({extractor, base, agg});
  }
}

std::vector<std::string> IndexedBases(char prefix, std::size_t dim) {
  std::vector<std::string> bases;
  bases.reserve(dim);
  for (std::size_t d = 0; d < dim; ++d) bases.push_back(prefix + std::to_string(d));
  return bases;
}

const std::string& NameOf(const Extractor& e) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, e);
}

void Append(std::vector<double>& row, const AggregatedPost& agg) {
  row.insert(row.end(), agg.values.begin(), agg.values.end());
}

}  // namespace

EncoderExtractor MakeStubExtractor(std::string name, std::size_t dim,
                                   std::uint64_t seed) {
  if (dim < 1) throw UsageError("stub encoder dimension must be >= 1");
  return EncoderExtractor{std::move(name), dim, [dim, seed](std::string_view s) {
                            return StubEncode(s, dim, seed);
                          }};
}

void Featurizer::Add(Extractor extractor) {
  const std::string& name = NameOf(extractor);
  if (name.empty() || name.find_first_of("/\t\n") != std::string::npos) {
    throw UsageError("extractor name '" + name +
                     "' must be non-empty without '/', tab or newline");
  }
  for (const auto& e : extractors_) {
    if (NameOf(e) == name) {
      throw UsageError("duplicate extractor name '" + name + "'");
    }
  }
  extractors_.push_back(std::move(extractor));
}

std::vector<ColumnDescriptor> Featurizer::Columns() const {
  std::vector<ColumnDescriptor> out;
  for (const auto& extractor : extractors_) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, VaderExtractor>) {
            AppendAggregated(out, e.name, {kVaderBases.begin(), kVaderBases.end()});
          } else if constexpr (std::is_same_v<T, CategoryExtractor>) {
            for (const auto& c : e.lexicon->categories()) {
              out.push_back({e.name, c.name, Aggregation::kPost});
            }
          } else if constexpr (std::is_same_v<T, EncoderExtractor>) {
            AppendAggregated(out, e.name, IndexedBases('d', e.dim));
          } else {
            AppendAggregated(out, e.name, IndexedBases('e', e.embeddings->dim()));
          }
        },
        extractor);
  }
  return out;
}

std::vector<double> Featurizer::FeaturizePost(const Post& post) const {
  std::vector<double> row;
  for (const auto& extractor : extractors_) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, VaderExtractor>) {
            std::vector<std::vector<double>> block;
            block.reserve(post.sentences.size());
            for (const auto& s : post.sentences) {
              const SentimentScores sc = VaderSentence(s, *e.lexicon);
              block.push_back({sc.pos, sc.neg, sc.neu, sc.compound});
            }
            Append(row, AggregatePost(block, kVaderBases.size()));
          } else if constexpr (std::is_same_v<T, CategoryExtractor>) {
            const auto v = CategoryFeatures(post.body_clean, *e.lexicon);
            row.insert(row.end(), v.begin(), v.end());
          } else if constexpr (std::is_same_v<T, EncoderExtractor>) {
            std::vector<std::vector<double>> block;
            block.reserve(post.sentences.size());
            for (const auto& s : post.sentences) {
              block.push_back(e.encode(s));
              if (block.back().size() != e.dim) {
                throw DataError("encoder '" + e.name + "' returned " +
                                std::to_string(block.back().size()) +
                                " values, expected " + std::to_string(e.dim));
              }
            }
            Append(row, AggregatePost(block, e.dim));
          } else {
            const auto* vectors = e.embeddings->Find(post.id);
            if (vectors == nullptr && !post.sentences.empty()) {
              throw DataError("embeddings '" + e.name + "' have no entry for post '" +
                              post.id + "'");
            }
            static const std::vector<std::vector<double>> kNone;
            Append(row, AggregatePost(vectors ? *vectors : kNone,
                                      e.embeddings->dim()));
          }
        },
        extractor);
  }
  return row;
}

std::vector<double> Featurizer::FeaturizeText(std::string_view body_raw) const {
  for (const auto& e : extractors_) {
    if (std::holds_alternative<IngestedExtractor>(e)) {
      throw UsageError("extractor '" + NameOf(e) +
                       "' reads precomputed embeddings and cannot featurize new text");
    }
  }
  return FeaturizePost(MakePost("text", "", std::string(body_raw)));
}

FeatureTable Featurizer::Build(const Corpus& corpus,
                               std::span<const std::string> ids,
                               int threads) const {
  std::vector<std::string> row_ids;
  if (ids.empty()) {
    for (const auto& p : corpus.posts()) row_ids.push_back(p.id);
  } else {
    row_ids.assign(ids.begin(), ids.end());
  }
  std::vector<const Post*> posts;
  posts.reserve(row_ids.size());
  for (const auto& id : row_ids) posts.push_back(&corpus.post(id));

  const auto columns = Columns();
  const std::size_t width = columns.size();
  std::vector<double> values(row_ids.size() * width);
  std::vector<bool> degenerate(row_ids.size());
  for (std::size_t r = 0; r < posts.size(); ++r) degenerate[r] = posts[r]->degenerate();
  ParallelFor(posts.size(), threads, [&](std::size_t r) {
    const auto row = FeaturizePost(*posts[r]);
    std::copy(row.begin(), row.end(), values.begin() + static_cast<std::ptrdiff_t>(r * width));
  });
  return FeatureTable(std::move(row_ids), columns, std::move(values),
                      std::move(degenerate));
}

}  // namespace triagekit
