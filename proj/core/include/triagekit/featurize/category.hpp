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

#ifndef TRIAGEKIT_FEATURIZE_CATEGORY_HPP_
#define TRIAGEKIT_FEATURIZE_CATEGORY_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace triagekit {

// LIWC/Empath-style category dictionary.
class CategoryLexicon {
 public:
  struct Entry {
    std::string stem;       // lower case, non-empty
    bool wildcard = false;  // "abandon*" matches by prefix
  };
  struct Category {
    std::string name;
    std::vector<Entry> entries;
  };

  // Throws DataError on a duplicate category name or an empty stem.
  void AddCategory(std::string name, std::vector<Entry> entries);

  // `category<TAB>entry1,entry2,...`, a trailing '*' marking a wildcard.
  static CategoryLexicon Load(const std::filesystem::path& path);
  static CategoryLexicon Parse(std::string_view content);

  const std::vector<Category>& categories() const { return categories_; }
  std::size_t size() const { return categories_.size(); }

  bool Matches(std::size_t category, std::string_view lower_token) const;

 private:
  std::vector<Category> categories_;
};

// Per category: (tokens matching any entry) / (total tokens). Zero vector when
// the text has no tokens.
std::vector<double> CategoryFeatures(std::string_view body_clean,
                                     const CategoryLexicon& lexicon);

}  // namespace triagekit

#endif  // TRIAGEKIT_FEATURIZE_CATEGORY_HPP_
