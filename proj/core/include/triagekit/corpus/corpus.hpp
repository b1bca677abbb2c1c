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

#ifndef TRIAGEKIT_CORPUS_CORPUS_HPP_
#define TRIAGEKIT_CORPUS_CORPUS_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triagekit/corpus/labels.hpp"

namespace triagekit {

enum class Split { kTrain, kTest, kExternal };

std::string_view SplitName(Split s) noexcept;
std::optional<Split> ParseSplit(std::string_view name) noexcept;

struct Post {
  std::string id;
  std::string thread_id;  // empty when absent
  std::string body_raw;
  std::string body_clean;
  std::vector<std::string> sentences;

  // True when nothing is left after markup stripping. Such posts stay in the
  // corpus and featurize to zero vectors.
  bool degenerate() const { return sentences.empty(); }
};

// Builds a post from raw text, filling body_clean and sentences.
Post MakePost(std::string id, std::string thread_id, std::string body_raw);

class Corpus {
 public:
  // Throws DataError on a duplicate id.
  void AddPost(Post post);
  // Throws DataError if the post does not exist.
  void SetLabel(std::string_view id, TriageLabel label, Split split);
  void SetSplit(std::string_view id, Split split);

  const std::vector<Post>& posts() const { return posts_; }
  std::size_t size() const { return posts_.size(); }
  const Post& post(std::string_view id) const;
  std::optional<std::size_t> IndexOf(std::string_view id) const;

  const TriageLabel* label(std::string_view id) const;
  std::optional<Split> split(std::string_view id) const;

  // Ids of labeled posts with the given split, in corpus order.
  std::vector<std::string> LabeledIds(std::optional<Split> split = {}) const;

  const std::map<std::string, TriageLabel, std::less<>>& labels() const {
    return labels_;
  }

  // Checks coarse == map(granular) for every label carrying a granular tag
  // and that every granular tag is known. Throws DataError.
  void ValidateLabels(const LabelMap& map) const;

 private:
  std::vector<Post> posts_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, TriageLabel, std::less<>> labels_;
  std::map<std::string, Split, std::less<>> splits_;
};

// Header names for the columns of a corpus file. Defaults are the canonical
// header `id thread_id split coarse granular body`.
struct CorpusSchema {
  std::string id = "id";
  std::string thread_id = "thread_id";
  std::string split = "split";
  std::string coarse = "coarse";
  std::string granular = "granular";
  std::string body = "body";
  // Optional separate label file with header `id coarse granular [split]`;
  // rows referencing unknown posts are rejected.
  std::optional<std::filesystem::path> labels_path;
};

Corpus LoadCorpus(const std::filesystem::path& path,
                  const CorpusSchema& schema = {});
Corpus ParseCorpus(std::string_view content, const CorpusSchema& schema = {});

// Canonical serialization (the inverse of ParseCorpus with the default
// schema). Byte-stable: ParseCorpus(SerializeCorpus(c)) re-serializes to the
// same bytes.
std::string SerializeCorpus(const Corpus& corpus);
void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace triagekit

#endif  // TRIAGEKIT_CORPUS_CORPUS_HPP_
