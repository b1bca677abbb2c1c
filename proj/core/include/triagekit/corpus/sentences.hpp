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

#ifndef TRIAGEKIT_CORPUS_SENTENCES_HPP_
#define TRIAGEKIT_CORPUS_SENTENCES_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace triagekit {

// Lower-cased tokens (including the final period) that never end a sentence.
std::span<const std::string_view> SentenceAbbreviations();

// Rule-based sentence segmentation. A boundary follows a run of terminal
// punctuation (. ! ?), optionally followed by closing quotes or brackets,
// when whitespace comes next, unless the token ending there is one of
// SentenceAbbreviations() or a single-letter initial ("J."). Every line break
// is also a boundary. Spans are trimmed and empty spans dropped.
std::vector<std::string> SplitSentences(std::string_view body_clean);

}  // namespace triagekit

#endif  // TRIAGEKIT_CORPUS_SENTENCES_HPP_
