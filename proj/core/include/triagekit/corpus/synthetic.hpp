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

#ifndef TRIAGEKIT_CORPUS_SYNTHETIC_HPP_
#define TRIAGEKIT_CORPUS_SYNTHETIC_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "triagekit/corpus/corpus.hpp"
#include "triagekit/corpus/labels.hpp"

namespace triagekit {

// Class-indicative vocabulary, indexed by Ordinal(Coarse).
using PlantedLexicon = std::array<std::vector<std::string>, kNumCoarse>;

// Default vocabulary: words carrying graded valence in the bundled VADER
// lexicon, with crisis words (including "pistol", which is not in it).
const PlantedLexicon& DefaultPlantedLexicon();

// Granular tags used for synthetic labels, indexed by Ordinal(Coarse).
const std::array<std::vector<std::string>, kNumCoarse>& DefaultGranularTags();

// LabelMap covering DefaultGranularTags().
LabelMap DefaultLabelMap();

// Neutral filler vocabulary (absent from the VADER lexicon and the planted
// words).
const std::vector<std::string>& FillerWords();

// Class shares of the labeled training data in the reference forum corpus, as
// published (they total 1.011 through rounding).
inline constexpr std::array<double, kNumCoarse> kForumClassShares = {
    0.586, 0.256, 0.117, 0.052};

struct SyntheticOptions {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::array<double, kNumCoarse> class_probs = kForumClassShares;
  PlantedLexicon planted = DefaultPlantedLexicon();
  // Probability that a sentence carries a planted word of its post's granular
  // tag. Tags split their class vocabulary: word i goes to tag i mod #tags.
  double plant_rate = 1.0;
  std::size_t min_sentences = 1;
  std::size_t max_sentences = 4;
  std::size_t min_words = 1;
  std::size_t max_words = 3;
  Split split = Split::kTrain;
  std::string id_prefix = "syn";
};

// Generates a labeled corpus whose bodies embed class-indicative words among
// filler. Deterministic in the options. class_probs are relative weights and
// are normalized; UsageError when one is negative or non-finite or all are 0.
Corpus GenerateSynthetic(const SyntheticOptions& options);

}  // namespace triagekit

#endif  // TRIAGEKIT_CORPUS_SYNTHETIC_HPP_
