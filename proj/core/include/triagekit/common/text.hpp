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

#ifndef TRIAGEKIT_COMMON_TEXT_HPP_
#define TRIAGEKIT_COMMON_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace triagekit {

// A token of the shared tokenizer: whitespace-separated piece with leading
// and trailing ASCII punctuation removed. [begin, end) locates the token in
// the source text; in-token apostrophes ("can't") survive.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

bool IsAsciiSpace(char c) noexcept;
// Python's string.punctuation.
bool IsAsciiPunct(char c) noexcept;

std::string AsciiLower(std::string_view s);

// str.isupper() restricted to ASCII letters: at least one cased character and
// no lowercase ones.
bool IsAllCaps(std::string_view s) noexcept;

// str.split() with no arguments.
std::vector<std::string_view> SplitWhitespace(std::string_view s);

// The tokenizer shared by sentiment scoring, category counts, the stub
// encoder and token masking.
std::vector<Token> Tokenize(std::string_view text);

std::string_view Trim(std::string_view s) noexcept;

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string_view> SplitOn(std::string_view s, char delim);

bool StartsWith(std::string_view s, std::string_view prefix) noexcept;

}  // namespace triagekit

#endif  // TRIAGEKIT_COMMON_TEXT_HPP_
