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

#ifndef TRIAGEKIT_FEATURIZE_VADER_HPP_
#define TRIAGEKIT_FEATURIZE_VADER_HPP_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace triagekit {

struct SentimentScores {
  double pos = 0.0;
  double neg = 0.0;
  double neu = 0.0;
  double compound = 0.0;
};

// Valence lexicon plus the rule tables of the VADER algorithm. Lookups use
// lower-cased tokens; the all-caps emphasis rule looks at the original case.
struct ValenceLexicon {
  std::map<std::string, double, std::less<>> valence;
  // Degree modifiers (single words and multi-word phrases).
  std::map<std::string, double, std::less<>> boosters;
  std::set<std::string, std::less<>> negations;
  // Phrases whose valence overrides the word-level score.
  std::map<std::string, double, std::less<>> special_cases;

  // Empty valence table with the standard rule tables.
  static ValenceLexicon WithDefaultRules();
  // `token<TAB>valence[<TAB>...]` lines; extra columns are ignored.
  static ValenceLexicon Load(const std::filesystem::path& path);
  static ValenceLexicon Parse(std::string_view content);

  bool Contains(std::string_view lower_token) const {
    return valence.find(lower_token) != valence.end();
  }
};

namespace vader {
inline constexpr double kBoosterIncrement = 0.293;
inline constexpr double kCapsIncrement = 0.733;
inline constexpr double kNegationScalar = -0.74;
// compound = s / sqrt(s^2 + kAlpha)
inline constexpr double kAlpha = 15.0;
}  // namespace vader

// Scores one sentence. Empty text scores all zeros.
SentimentScores VaderSentence(std::string_view sentence,
                              const ValenceLexicon& lexicon);

}  // namespace triagekit

#endif  // TRIAGEKIT_FEATURIZE_VADER_HPP_
