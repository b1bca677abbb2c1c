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

#include "triagekit/corpus/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "triagekit/common/error.hpp"
#include "triagekit/common/rng.hpp"

namespace triagekit {

const PlantedLexicon& DefaultPlantedLexicon() {
  static const PlantedLexicon lexicon = {{
      {"happy", "great", "thanks", "love", "glad", "awesome", "fun"},
      {"worried", "stressed", "anxious", "lonely", "upset"},
      {"hopeless", "depressed", "miserable", "worthless", "hurt"},
      {"suicide", "kill", "die", "pistol", "dead"},
  }};
  return lexicon;
}

const std::array<std::vector<std::string>, kNumCoarse>& DefaultGranularTags() {
  static const std::array<std::vector<std::string>, kNumCoarse> tags = {{
      {"allClear"},
      {"followupOk", "underserved"},
      {"currentAcuteDistress", "followupWorse"},
      {"crisis"},
  }};
  return tags;
}

LabelMap DefaultLabelMap() {
  LabelMap map;
  for (Coarse c : kAllCoarse) {
    for (const auto& tag : DefaultGranularTags()[Ordinal(c)]) map.Add(tag, c);
  }
  return map;
}

const std::vector<std::string>& FillerWords() {
  static const std::vector<std::string> words = {
      "i",     "the",   "today", "went",  "to",      "school", "and",
      "my",    "mum",   "dad",   "said",  "we",      "walked", "home",
      "after", "class", "it",    "was",   "a",       "day",    "morning",
      "night", "house", "work",  "bus",   "phone",   "week",   "think",
      "about", "some",  "time",  "again", "forum",   "people", "this",
      "that",  "then",  "there", "went",  "weekend", "around", "here"};
  return words;
}

Corpus GenerateSynthetic(const SyntheticOptions& options) {
  double total = 0.0;
  for (double p : options.class_probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw UsageError("class weights must be finite and non-negative");
    }
    total += p;
  }
  if (!(total > 0.0)) throw UsageError("class weights must not all be zero");
  std::array<double, kNumCoarse> probs{};
  for (int c = 0; c < kNumCoarse; ++c) probs[c] = options.class_probs[c] / total;
  if (options.min_sentences < 1 || options.max_sentences < options.min_sentences ||
      options.min_words < 1 || options.max_words < options.min_words) {
    throw UsageError("synthetic sentence/word ranges are invalid");
  }

  const auto& filler = FillerWords();
  const auto& tags = DefaultGranularTags();
  Corpus corpus;
  for (std::size_t n = 0; n < options.n; ++n) {
    Rng rng(options.seed, "synthetic-post", n);

    const double u = rng.Uniform();
    int cls = kNumCoarse - 1;
    double cumulative = 0.0;
    for (int c = 0; c < kNumCoarse; ++c) {
      cumulative += probs[c];
      if (u < cumulative) {
        cls = c;
        break;
      }
    }
    // Guard against a zero-probability class being picked by rounding.
    while (probs[cls] == 0.0 && cls > 0) --cls;

    const auto& granular_tags = tags[cls];
    const std::size_t tag_index = rng.Below(granular_tags.size());
    const std::string& granular = granular_tags[tag_index];
    // Each granular tag draws from its own slice of the class vocabulary
    // (word i belongs to tag i mod #tags).
    std::vector<std::string> planted;
    for (std::size_t i = 0; i < options.planted[cls].size(); ++i) {
      if (i % granular_tags.size() == tag_index) planted.push_back(options.planted[cls][i]);
    }

    const std::size_t n_sentences =
        options.min_sentences +
        rng.Below(options.max_sentences - options.min_sentences + 1);
    std::string body;
    for (std::size_t s = 0; s < n_sentences; ++s) {
      const std::size_t n_words =
          options.min_words + rng.Below(options.max_words - options.min_words + 1);
      std::vector<std::string> words;
      words.reserve(n_words);
      for (std::size_t w = 0; w < n_words; ++w) {
        words.push_back(filler[rng.Below(filler.size())]);
      }
      if (!planted.empty() && rng.Bernoulli(options.plant_rate)) {
        words[rng.Below(n_words)] = planted[rng.Below(planted.size())];
      }
      std::string sentence;
      for (std::size_t w = 0; w < words.size(); ++w) {
        if (w > 0) sentence += ' ';
        sentence += words[w];
      }
      if (sentence[0] >= 'a' && sentence[0] <= 'z') {
        sentence[0] = static_cast<char>(sentence[0] - 'a' + 'A');
      }
      sentence += '.';
      if (!body.empty()) body += ' ';
      body += sentence;
    }

    char id[64];
    std::snprintf(id, sizeof(id), "%s-%06zu", options.id_prefix.c_str(), n);
    corpus.AddPost(MakePost(id, "", body));
    corpus.SetLabel(id, TriageLabel{static_cast<Coarse>(cls), granular},
                    options.split);
  }
  return corpus;
}

}  // namespace triagekit
