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

#ifndef TRIAGEKIT_CORPUS_MARKUP_HPP_
#define TRIAGEKIT_CORPUS_MARKUP_HPP_

#include <string>
#include <string_view>

namespace triagekit {

// Removes quoted replies and links from a raw forum post body:
//   * <blockquote ...>...</blockquote> elements (nesting respected, case
//     insensitive; an unterminated element runs to the end of the text),
//   * lines whose first non-blank character is '>',
//   * <img ...> tags,
//   * whitespace-delimited tokens that contain "scheme://" or start with
//     "www." (after any leading punctuation).
// Whitespace runs are then collapsed: a run containing a line break becomes a
// single '\n', any other run a single ' '; the result is trimmed. The passes
// repeat until the text stops changing, which makes the function idempotent.
std::string StripMarkup(std::string_view body_raw);

}  // namespace triagekit

#endif  // TRIAGEKIT_CORPUS_MARKUP_HPP_
