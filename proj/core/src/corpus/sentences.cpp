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

#include "triagekit/corpus/sentences.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "triagekit/common/text.hpp"

namespace triagekit {
namespace {

constexpr std::array<std::string_view, 22> kAbbreviations = {
    "mr.",  "mrs.", "ms.",  "dr.",   "prof.",   "sr.",   "jr.",   "st.",
    "vs.",  "etc.", "e.g.", "i.e.",  "approx.", "dept.", "fig.",  "inc.",
    "ltd.", "mt.",  "a.m.", "p.m.",  "u.s.",    "cf."};

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }
bool IsCloser(char c) { return c != '\0' && std::strchr("\"')]}", c); }

bool SuppressesBoundary(std::string_view text, std::size_t period) {
  std::size_t start = period;
  while (start > 0 && !IsAsciiSpace(text[start - 1])) --start;
  while (start < period && IsAsciiPunct(text[start])) ++start;
  const std::string word = AsciiLower(text.substr(start, period + 1 - start));
  if (std::find(kAbbreviations.begin(), kAbbreviations.end(), word) !=
      kAbbreviations.end()) {
    return true;
  }
  // Single capital initial such as "J." (but not the pronoun "I.").
  const std::string_view raw = text.substr(start, period + 1 - start);
  return raw.size() == 2 && raw[0] >= 'A' && raw[0] <= 'Z' && raw[0] != 'I';
}

void Emit(std::string_view span, std::vector<std::string>& out) {
  const std::string_view trimmed = Trim(span);
  if (!trimmed.empty()) out.emplace_back(trimmed);
}

}  // namespace

std::span<const std::string_view> SentenceAbbreviations() {
  return kAbbreviations;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '\n') {
      Emit(text.substr(start, i - start), out);
      start = ++i;
      continue;
    }
    if (!IsTerminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && IsTerminal(text[j])) ++j;
    const bool single_period = text[i] == '.' && j == i + 1;
    while (j < text.size() && IsCloser(text[j])) ++j;
    if (j < text.size() && !IsAsciiSpace(text[j])) {
      i = j;
      continue;
    }
    if (single_period && SuppressesBoundary(text, i)) {
      i = j;
      continue;
    }
    Emit(text.substr(start, j - start), out);
    start = i = j;
  }
  Emit(text.substr(start), out);
  return out;
}

}  // namespace triagekit
