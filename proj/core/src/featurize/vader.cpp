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

#include "triagekit/featurize/vader.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit {
namespace {

using vader::kBoosterIncrement;
using vader::kCapsIncrement;
using vader::kNegationScalar;

constexpr const char* kNegations[] = {
    "aint",     "arent",   "cannot",   "cant",     "couldnt",  "darent",
    "didnt",    "doesnt",  "ain't",    "aren't",   "can't",    "couldn't",
    "daren't",  "didn't",  "doesn't",  "dont",     "hadnt",    "hasnt",
    "havent",   "isnt",    "mightnt",  "mustnt",   "neither",  "don't",
    "hadn't",   "hasn't",  "haven't",  "isn't",    "mightn't", "mustn't",
    "neednt",   "needn't", "never",    "none",     "nope",     "nor",
    "not",      "nothing", "nowhere",  "oughtnt",  "shant",    "shouldnt",
    "uhuh",     "wasnt",   "werent",   "oughtn't", "shan't",   "shouldn't",
    "uh-uh",    "wasn't",  "weren't",  "without",  "wont",     "wouldnt",
    "won't",    "wouldn't", "rarely",  "seldom",   "despite"};

constexpr const char* kIncrements[] = {
    "absolutely", "amazingly",  "awfully",      "completely",  "considerable",
    "considerably", "decidedly", "deeply",      "effing",      "enormous",
    "enormously", "entirely",   "especially",   "exceptional", "exceptionally",
    "extreme",    "extremely",  "fabulously",   "flipping",    "flippin",
    "frackin",    "fracking",   "fricking",     "frickin",     "frigging",
    "friggin",    "fully",      "fuckin",       "fucking",     "fuggin",
    "fugging",    "greatly",    "hella",        "highly",      "hugely",
    "incredible", "incredibly", "intensely",    "major",       "majorly",
    "more",       "most",       "particularly", "purely",      "quite",
    "really",     "remarkably", "so",           "substantially", "thoroughly",
    "total",      "totally",    "tremendous",   "tremendously", "uber",
    "unbelievably", "unusually", "utter",       "utterly",     "very"};

constexpr const char* kDecrements[] = {
    "almost",   "barely",   "hardly",    "just enough", "kind of",
    "kinda",    "kindof",   "kind-of",   "less",        "little",
    "marginal", "marginally", "occasional", "occasionally", "partly",
    "scarce",   "scarcely", "slight",    "slightly",    "somewhat",
    "sort of",  "sorta",    "sortof",    "sort-of"};

struct SpecialCase {
  const char* phrase;
  double valence;
};
constexpr SpecialCase kSpecialCases[] = {
    {"the shit", 3},      {"the bomb", 3},    {"bad ass", 1.5},
    {"badass", 1.5},      {"bus stop", 0.0},  {"yeah right", -2},
    {"kiss of death", -1.5}, {"to die for", 3}, {"beating heart", 3.5}};

// Number of code points in UTF-8 text.
std::size_t CodePoints(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

// Strips surrounding punctuation unless that leaves two or fewer characters,
// in which case the piece is probably an emoticon and is kept whole.
std::string StripPunctIfWord(std::string_view piece) {
  std::size_t b = 0;
  std::size_t e = piece.size();
  while (b < e && IsAsciiPunct(piece[b])) ++b;
  while (e > b && IsAsciiPunct(piece[e - 1])) --e;
  const std::string_view stripped = piece.substr(b, e - b);
  if (CodePoints(stripped) <= 2) return std::string(piece);
  return std::string(stripped);
}

class SentenceScorer {
 public:
  SentenceScorer(std::string_view text, const ValenceLexicon& lexicon)
      : text_(Trim(text)), lex_(lexicon) {
    for (std::string_view piece : SplitWhitespace(text_)) {
      words_.push_back(StripPunctIfWord(piece));
      lower_.push_back(AsciiLower(words_.back()));
    }
    std::size_t caps = 0;
    for (const auto& w : words_) caps += IsAllCaps(w) ? 1 : 0;
    const std::size_t differential = words_.size() - caps;
    is_cap_diff_ = differential > 0 && differential < words_.size();
  }

  SentimentScores Score() {
    std::vector<double> sentiments;
    sentiments.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (lex_.boosters.count(lower_[i]) != 0) {
        sentiments.push_back(0.0);
        continue;
      }
      if (i + 1 < words_.size() && lower_[i] == "kind" &&
          lower_[i + 1] == "of") {
        sentiments.push_back(0.0);
        continue;
      }
      sentiments.push_back(Valence(i));
    }
    ButCheck(sentiments);
    return ScoreValence(sentiments);
  }

 private:
  bool InLexicon(std::size_t i) const { return lex_.Contains(lower_[i]); }

  bool Negated(std::string_view lower_word) const {
    return lex_.negations.count(lower_word) != 0 ||
           lower_word.find("n't") != std::string_view::npos;
  }

  double ScalarIncDec(std::size_t j, double valence) const {
    auto it = lex_.boosters.find(lower_[j]);
    if (it == lex_.boosters.end()) return 0.0;
    double scalar = it->second;
    if (valence < 0) scalar *= -1;
    if (IsAllCaps(words_[j]) && is_cap_diff_) {
      scalar += valence > 0 ? kCapsIncrement : -kCapsIncrement;
    }
    return scalar;
  }

  double Valence(std::size_t i) const {
    if (!InLexicon(i)) return 0.0;
    const double base = lex_.valence.find(lower_[i])->second;
    double valence = base;
    const std::size_t n = words_.size();
    if (lower_[i] == "no" && i != n - 1 && InLexicon(i + 1)) valence = 0.0;
    if ((i > 0 && lower_[i - 1] == "no") || (i > 1 && lower_[i - 2] == "no") ||
        (i > 2 && lower_[i - 3] == "no" &&
         (lower_[i - 1] == "or" || lower_[i - 1] == "nor"))) {
      valence = base * kNegationScalar;
    }
    if (IsAllCaps(words_[i]) && is_cap_diff_) {
      valence += valence > 0 ? kCapsIncrement : -kCapsIncrement;
    }
    for (std::size_t start = 0; start < 3; ++start) {
      if (i > start && !InLexicon(i - (start + 1))) {
        double s = ScalarIncDec(i - (start + 1), valence);
        if (start == 1 && s != 0) s *= 0.95;
        if (start == 2 && s != 0) s *= 0.9;
        valence += s;
        valence = NegationCheck(valence, start, i);
        if (start == 2) valence = SpecialIdioms(valence, i);
      }
    }
    return LeastCheck(valence, i);
  }

  double NegationCheck(double valence, std::size_t start, std::size_t i) const {
    const auto& w = lower_;
    if (start == 0) {
      if (Negated(w[i - 1])) valence *= kNegationScalar;
    } else if (start == 1) {
      if (w[i - 2] == "never" && (w[i - 1] == "so" || w[i - 1] == "this")) {
        valence *= 1.25;
      } else if (w[i - 2] == "without" && w[i - 1] == "doubt") {
        // unchanged
      } else if (Negated(w[i - 2])) {
        valence *= kNegationScalar;
      }
    } else {
      if ((w[i - 3] == "never" && (w[i - 2] == "so" || w[i - 2] == "this")) ||
          (w[i - 1] == "so" || w[i - 1] == "this")) {
        valence *= 1.25;
      } else if (w[i - 3] == "without" &&
                 (w[i - 2] == "doubt" || w[i - 1] == "doubt")) {
        // unchanged
      } else if (Negated(w[i - 3])) {
        valence *= kNegationScalar;
      }
    }
    return valence;
  }

  // Only reached with i > 2.
  double SpecialIdioms(double valence, std::size_t i) const {
    const auto& w = lower_;
    const std::string onezero = w[i - 1] + " " + w[i];
    const std::string twoonezero = w[i - 2] + " " + w[i - 1] + " " + w[i];
    const std::string twoone = w[i - 2] + " " + w[i - 1];
    const std::string threetwoone = w[i - 3] + " " + w[i - 2] + " " + w[i - 1];
    const std::string threetwo = w[i - 3] + " " + w[i - 2];
    for (const std::string* seq :
         {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
      auto it = lex_.special_cases.find(*seq);
      if (it != lex_.special_cases.end()) {
        valence = it->second;
        break;
      }
    }
    if (w.size() - 1 > i) {
      auto it = lex_.special_cases.find(w[i] + " " + w[i + 1]);
      if (it != lex_.special_cases.end()) valence = it->second;
    }
    if (w.size() - 1 > i + 1) {
      auto it = lex_.special_cases.find(w[i] + " " + w[i + 1] + " " + w[i + 2]);
      if (it != lex_.special_cases.end()) valence = it->second;
    }
    for (const std::string* gram : {&threetwoone, &threetwo, &twoone}) {
      auto it = lex_.boosters.find(*gram);
      if (it != lex_.boosters.end()) valence += it->second;
    }
    return valence;
  }

  double LeastCheck(double valence, std::size_t i) const {
    const auto& w = lower_;
    if (i > 1 && !InLexicon(i - 1) && w[i - 1] == "least") {
      if (w[i - 2] != "at" && w[i - 2] != "very") valence *= kNegationScalar;
    } else if (i > 0 && !InLexicon(i - 1) && w[i - 1] == "least") {
      valence *= kNegationScalar;
    }
    return valence;
  }

  // Sentiment before "but" is halved, after it boosted by half. The lookup of
  // each value's first occurrence reproduces the reference algorithm, which
  // rescales the earliest equal entry rather than the current one.
  void ButCheck(std::vector<double>& sentiments) const {
    auto but = std::find(lower_.begin(), lower_.end(), "but");
    if (but == lower_.end()) return;
    const std::size_t bi = static_cast<std::size_t>(but - lower_.begin());
    for (std::size_t k = 0; k < sentiments.size(); ++k) {
      const double value = sentiments[k];
      const std::size_t si = static_cast<std::size_t>(
          std::find(sentiments.begin(), sentiments.end(), value) -
          sentiments.begin());
      if (si < bi) {
        sentiments[si] = value * 0.5;
      } else if (si > bi) {
        sentiments[si] = value * 1.5;
      }
    }
  }

  double PunctuationEmphasis() const {
    const auto ep = std::min<std::ptrdiff_t>(
        std::count(text_.begin(), text_.end(), '!'), 4);
    const auto qm = std::count(text_.begin(), text_.end(), '?');
    double qm_amplifier = 0.0;
    if (qm > 1) qm_amplifier = qm <= 3 ? static_cast<double>(qm) * 0.18 : 0.96;
    return static_cast<double>(ep) * 0.292 + qm_amplifier;
  }

  SentimentScores ScoreValence(const std::vector<double>& sentiments) const {
    SentimentScores out;
    if (sentiments.empty()) return out;
    double sum = 0.0;
    for (double s : sentiments) sum += s;
    const double punct = PunctuationEmphasis();
    if (sum > 0) {
      sum += punct;
    } else if (sum < 0) {
      sum -= punct;
    }
    out.compound = std::clamp(sum / std::sqrt(sum * sum + vader::kAlpha), -1.0, 1.0);

    double pos_sum = 0.0;
    double neg_sum = 0.0;
    double neu_count = 0.0;
    for (double s : sentiments) {
      if (s > 0) pos_sum += s + 1;
      if (s < 0) neg_sum += s - 1;
      if (s == 0) neu_count += 1;
    }
    if (pos_sum > std::fabs(neg_sum)) {
      pos_sum += punct;
    } else if (pos_sum < std::fabs(neg_sum)) {
      neg_sum -= punct;
    }
    const double total = pos_sum + std::fabs(neg_sum) + neu_count;
    out.pos = std::fabs(pos_sum / total);
    out.neg = std::fabs(neg_sum / total);
    out.neu = std::fabs(neu_count / total);
    return out;
  }

  std::string_view text_;
  const ValenceLexicon& lex_;
  std::vector<std::string> words_;
  std::vector<std::string> lower_;
  bool is_cap_diff_ = false;
};

}  // namespace

ValenceLexicon ValenceLexicon::WithDefaultRules() {
  ValenceLexicon lex;
  for (const char* w : kNegations) lex.negations.emplace(w);
  for (const char* w : kIncrements) lex.boosters.emplace(w, kBoosterIncrement);
  for (const char* w : kDecrements) lex.boosters.emplace(w, -kBoosterIncrement);
  for (const auto& sc : kSpecialCases) lex.special_cases.emplace(sc.phrase, sc.valence);
  return lex;
}

ValenceLexicon ValenceLexicon::Load(const std::filesystem::path& path) {
  try {
    return Parse(ReadFile(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

ValenceLexicon ValenceLexicon::Parse(std::string_view content) {
  ValenceLexicon lex = WithDefaultRules();
  const auto lines = SplitLines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = Trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = SplitOn(line, '\t');
    if (fields.size() < 2) {
      throw DataError("valence lexicon line " + std::to_string(i + 1) +
                      ": expected token<TAB>valence");
    }
    const auto v = ParseDouble(fields[1]);
    if (!v || *v < -4.0 || *v > 4.0) {
      throw DataError("valence lexicon line " + std::to_string(i + 1) +
                      ": valence must be a number in [-4, 4]");
    }
    lex.valence.insert_or_assign(std::string(fields[0]), *v);
  }
  return lex;
}

SentimentScores VaderSentence(std::string_view sentence,
                              const ValenceLexicon& lexicon) {
  return SentenceScorer(sentence, lexicon).Score();
}

}  // namespace triagekit
