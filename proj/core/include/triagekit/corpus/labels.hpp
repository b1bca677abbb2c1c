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

#ifndef TRIAGEKIT_CORPUS_LABELS_HPP_
#define TRIAGEKIT_CORPUS_LABELS_HPP_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace triagekit {

// Moderator-urgency classes, ordered by severity.
enum class Coarse : int { kGreen = 0, kAmber = 1, kRed = 2, kCrisis = 3 };

inline constexpr int kNumCoarse = 4;
inline constexpr std::array<Coarse, kNumCoarse> kAllCoarse = {
    Coarse::kGreen, Coarse::kAmber, Coarse::kRed, Coarse::kCrisis};
// The classes scored by the triage metric.
inline constexpr std::array<Coarse, 3> kNonGreen = {
    Coarse::kAmber, Coarse::kRed, Coarse::kCrisis};

constexpr int Ordinal(Coarse c) noexcept { return static_cast<int>(c); }

// "green", "amber", "red", "crisis".
std::string_view CoarseName(Coarse c) noexcept;
// "Green", "Amber", ...
std::string_view CoarseTitle(Coarse c) noexcept;
std::optional<Coarse> ParseCoarse(std::string_view name) noexcept;

struct TriageLabel {
  Coarse coarse = Coarse::kGreen;
  std::string granular;  // empty when the annotation carries no granular tag

  friend bool operator==(const TriageLabel&, const TriageLabel&) = default;
};

// Total mapping from granular annotation tags onto coarse classes.
class LabelMap {
 public:
  LabelMap() = default;

  // Throws DataError if `granular` is already mapped to a different class.
  void Add(std::string granular, Coarse coarse);

  bool Contains(std::string_view granular) const;
  // Throws DataError naming the tag when it is unknown.
  Coarse Map(std::string_view granular) const;

  const std::map<std::string, Coarse, std::less<>>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }

  // Two-column TSV `granular<TAB>coarse`. A header row whose first field is
  // "granular" is skipped.
  static LabelMap Load(const std::filesystem::path& path);
  static LabelMap Parse(std::string_view content);
  std::string Serialize() const;

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

 private:
  std::map<std::string, Coarse, std::less<>> entries_;
};

// Free-function form used throughout the docs and tests.
inline Coarse MapLabel(std::string_view granular, const LabelMap& map) {
  return map.Map(granular);
}

std::vector<Coarse> MapLabels(const std::vector<std::string>& granular,
                              const LabelMap& map);

}  // namespace triagekit

#endif  // TRIAGEKIT_CORPUS_LABELS_HPP_
