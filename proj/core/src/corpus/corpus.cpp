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

#include "triagekit/corpus/corpus.hpp"

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/text.hpp"
#include "triagekit/corpus/markup.hpp"
#include "triagekit/corpus/sentences.hpp"

namespace triagekit {

std::string_view SplitName(Split s) noexcept {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kTest: return "test";
    case Split::kExternal: return "external";
  }
  return "train";
}

std::optional<Split> ParseSplit(std::string_view name) noexcept {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  if (name == "external") return Split::kExternal;
  return std::nullopt;
}

Post MakePost(std::string id, std::string thread_id, std::string body_raw) {
  Post post;
  post.id = std::move(id);
  post.thread_id = std::move(thread_id);
  post.body_raw = std::move(body_raw);
  post.body_clean = StripMarkup(post.body_raw);
  post.sentences = SplitSentences(post.body_clean);
  return post;
}

void Corpus::AddPost(Post post) {
  if (post.id.empty()) throw DataError("post with empty id");
  if (index_.count(post.id) != 0) {
    throw DataError("duplicate post id '" + post.id + "'");
  }
  index_.emplace(post.id, posts_.size());
  posts_.push_back(std::move(post));
}

void Corpus::SetLabel(std::string_view id, TriageLabel label, Split split) {
  if (!IndexOf(id)) {
    throw DataError("label references missing post '" + std::string(id) + "'");
  }
  labels_.insert_or_assign(std::string(id), std::move(label));
  splits_.insert_or_assign(std::string(id), split);
}

void Corpus::SetSplit(std::string_view id, Split split) {
  if (!IndexOf(id)) {
    throw DataError("split references missing post '" + std::string(id) + "'");
  }
  splits_.insert_or_assign(std::string(id), split);
}

const Post& Corpus::post(std::string_view id) const {
  auto idx = IndexOf(id);
  if (!idx) throw DataError("unknown post id '" + std::string(id) + "'");
  return posts_[*idx];
}

std::optional<std::size_t> Corpus::IndexOf(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const TriageLabel* Corpus::label(std::string_view id) const {
  auto it = labels_.find(id);
  return it == labels_.end() ? nullptr : &it->second;
}

std::optional<Split> Corpus::split(std::string_view id) const {
  auto it = splits_.find(id);
  if (it == splits_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Corpus::LabeledIds(std::optional<Split> split) const {
  std::vector<std::string> ids;
  for (const auto& post : posts_) {
    if (labels_.count(post.id) == 0) continue;
    if (split && this->split(post.id) != split) continue;
    ids.push_back(post.id);
  }
  return ids;
}

void Corpus::ValidateLabels(const LabelMap& map) const {
  for (const auto& [id, label] : labels_) {
    if (label.granular.empty()) continue;
    const Coarse mapped = map.Map(label.granular);
    if (mapped != label.coarse) {
      throw DataError("post '" + id + "': coarse label " +
                      std::string(CoarseName(label.coarse)) +
                      " disagrees with granular '" + label.granular +
                      "' (maps to " + std::string(CoarseName(mapped)) + ")");
    }
  }
}

namespace {

struct Columns {
  std::optional<std::size_t> id, thread_id, split, coarse, granular, body;
};

std::optional<std::size_t> FindColumn(const std::vector<std::string_view>& header,
                                      std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

std::string_view Field(const std::vector<std::string_view>& row,
                       std::optional<std::size_t> col) {
  return col ? row[*col] : std::string_view{};
}

std::string LineRef(std::size_t line) {
  return "line " + std::to_string(line + 1) + ": ";
}

std::optional<TriageLabel> ParseLabel(std::string_view coarse,
                                      std::string_view granular,
                                      std::size_t line) {
  if (coarse.empty()) {
    if (!granular.empty()) {
      throw DataError(LineRef(line) + "granular label '" +
                      std::string(granular) + "' without a coarse label");
    }
    return std::nullopt;
  }
  const auto parsed = ParseCoarse(coarse);
  if (!parsed) {
    throw DataError(LineRef(line) + "unknown coarse label '" +
                    std::string(coarse) + "'");
  }
  return TriageLabel{*parsed, std::string(granular)};
}

Split ParseSplitField(std::string_view field, std::size_t line) {
  if (field.empty()) return Split::kTrain;
  const auto split = ParseSplit(field);
  if (!split) {
    throw DataError(LineRef(line) + "unknown split '" + std::string(field) +
                    "'");
  }
  return *split;
}

void ApplyLabelFile(Corpus& corpus, const std::filesystem::path& path) {
  const auto lines = SplitLines(ReadFile(path));
  if (lines.empty()) throw DataError("label file is empty: " + path.string());
  const auto header = SplitOn(lines[0], '\t');
  const auto id_col = FindColumn(header, "id");
  const auto coarse_col = FindColumn(header, "coarse");
  if (!id_col || !coarse_col) {
    throw DataError("label file needs 'id' and 'coarse' columns: " +
                    path.string());
  }
  const auto granular_col = FindColumn(header, "granular");
  const auto split_col = FindColumn(header, "split");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto row = SplitOn(lines[i], '\t');
    if (row.size() != header.size()) {
      throw DataError(path.string() + " " + LineRef(i) + "expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(row.size()));
    }
    auto label = ParseLabel(Field(row, coarse_col), Field(row, granular_col), i);
    if (!label) continue;
    corpus.SetLabel(Field(row, id_col), std::move(*label),
                    ParseSplitField(Field(row, split_col), i));
  }
}

}  // namespace

Corpus ParseCorpus(std::string_view content, const CorpusSchema& schema) {
  const auto lines = SplitLines(content);
  if (lines.empty()) throw DataError("corpus file is empty (no header)");
  const auto header = SplitOn(lines[0], '\t');
  Columns cols;
  cols.id = FindColumn(header, schema.id);
  cols.thread_id = FindColumn(header, schema.thread_id);
  cols.split = FindColumn(header, schema.split);
  cols.coarse = FindColumn(header, schema.coarse);
  cols.granular = FindColumn(header, schema.granular);
  cols.body = FindColumn(header, schema.body);
  if (!cols.id) throw DataError("corpus header lacks column '" + schema.id + "'");
  if (!cols.body) {
    throw DataError("corpus header lacks column '" + schema.body + "'");
  }

  Corpus corpus;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto row = SplitOn(lines[i], '\t');
    if (row.size() != header.size()) {
      throw DataError(LineRef(i) + "expected " + std::to_string(header.size()) +
                      " fields, found " + std::to_string(row.size()));
    }
    const std::string id(Field(row, cols.id));
    if (id.empty()) throw DataError(LineRef(i) + "empty post id");
    if (corpus.IndexOf(id)) {
      throw DataError(LineRef(i) + "duplicate post id '" + id + "'");
    }
    corpus.AddPost(MakePost(id, std::string(Field(row, cols.thread_id)),
                            UnescapeField(Field(row, cols.body))));
    const std::string_view split_field = Field(row, cols.split);
    auto label =
        ParseLabel(Field(row, cols.coarse), Field(row, cols.granular), i);
    if (label) {
      corpus.SetLabel(id, std::move(*label), ParseSplitField(split_field, i));
    } else if (!split_field.empty()) {
      corpus.SetSplit(id, ParseSplitField(split_field, i));
    }
  }
  if (schema.labels_path) ApplyLabelFile(corpus, *schema.labels_path);
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path,
                  const CorpusSchema& schema) {
  try {
    return ParseCorpus(ReadFile(path), schema);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out = "id\tthread_id\tsplit\tcoarse\tgranular\tbody\n";
  for (const auto& post : corpus.posts()) {
    out += post.id;
    out += '\t';
    out += post.thread_id;
    out += '\t';
    if (auto split = corpus.split(post.id)) out += SplitName(*split);
    out += '\t';
    if (const TriageLabel* label = corpus.label(post.id)) {
      out += CoarseName(label->coarse);
      out += '\t';
      out += label->granular;
    } else {
      out += '\t';
    }
    out += '\t';
    out += EscapeField(post.body_raw);
    out += '\n';
  }
  return out;
}

void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializeCorpus(corpus));
}

}  // namespace triagekit
