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

#include "triagekit/featurize/category.hpp"

#include <set>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit {

void CategoryLexicon::AddCategory(std::string name, std::vector<Entry> entries) {
  if (name.empty()) throw DataError("category lexicon: empty category name");
  for (const auto& c : categories_) {
    if (c.name == name) {
      throw DataError("category lexicon: duplicate category '" + name + "'");
    }
  }
  for (const auto& e : entries) {
    if (e.stem.empty()) {
      throw DataError("category lexicon: empty entry in category '" + name + "'");
    }
  }
  categories_.push_back(Category{std::move(name), std::move(entries)});
}

CategoryLexicon CategoryLexicon::Load(const std::filesystem::path& path) {
  try {
    return Parse(ReadFile(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

CategoryLexicon CategoryLexicon::Parse(std::string_view content) {
  CategoryLexicon lex;
  const auto lines = SplitLines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const auto fields = SplitOn(lines[i], '\t');
    if (fields.size() != 2) {
      throw DataError("line " + std::to_string(i + 1) +
                      ": expected category<TAB>entries");
    }
    std::vector<Entry> entries;
    for (std::string_view raw : SplitOn(fields[1], ',')) {
      std::string_view item = Trim(raw);
      if (item.empty()) continue;
      Entry entry;
      if (item.back() == '*') {
        entry.wildcard = true;
        item.remove_suffix(1);
      }
      entry.stem = AsciiLower(item);
      if (entry.stem.empty()) {
        throw DataError("line " + std::to_string(i + 1) + ": bare wildcard");
      }
      entries.push_back(std::move(entry));
    }
    lex.AddCategory(std::string(Trim(fields[0])), std::move(entries));
  }
  return lex;
}

bool CategoryLexicon::Matches(std::size_t category,
                              std::string_view lower_token) const {
  for (const auto& e : categories_[category].entries) {
    if (e.wildcard ? StartsWith(lower_token, e.stem) : lower_token == e.stem) {
      return true;
    }
  }
  return false;
}

std::vector<double> CategoryFeatures(std::string_view body_clean,
                                     const CategoryLexicon& lexicon) {
  std::vector<double> out(lexicon.size(), 0.0);
  const auto tokens = Tokenize(body_clean);
  if (tokens.empty()) return out;
  std::vector<std::size_t> counts(lexicon.size(), 0);
  for (const auto& token : tokens) {
    const std::string lower = AsciiLower(token.text);
    for (std::size_t c = 0; c < lexicon.size(); ++c) {
      if (lexicon.Matches(c, lower)) ++counts[c];
    }
  }
  const double total = static_cast<double>(tokens.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = static_cast<double>(counts[c]) / total;
  }
  return out;
}

}  // namespace triagekit
