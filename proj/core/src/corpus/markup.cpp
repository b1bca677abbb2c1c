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

#include "triagekit/corpus/markup.hpp"

#include "triagekit/common/text.hpp"

namespace triagekit {
namespace {

bool MatchesAt(std::string_view text, std::size_t pos,
               std::string_view lower_pattern) {
  if (pos + lower_pattern.size() > text.size()) return false;
  for (std::size_t k = 0; k < lower_pattern.size(); ++k) {
    char c = text[pos + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != lower_pattern[k]) return false;
  }
  return true;
}

// "<name" followed by '>', '/', or whitespace.
bool OpensTag(std::string_view text, std::size_t pos, std::string_view name) {
  if (text[pos] != '<' || !MatchesAt(text, pos + 1, name)) return false;
  const std::size_t after = pos + 1 + name.size();
  return after == text.size() || text[after] == '>' || text[after] == '/' ||
         IsAsciiSpace(text[after]);
}

std::size_t TagEnd(std::string_view text, std::size_t pos) {
  const std::size_t close = text.find('>', pos);
  return close == std::string_view::npos ? text.size() : close + 1;
}

std::string RemoveBlockquotes(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  int depth = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<' && OpensTag(text, i, "blockquote")) {
      ++depth;
      i = TagEnd(text, i);
      out += ' ';
      continue;
    }
    if (text[i] == '<' && MatchesAt(text, i, "</blockquote")) {
      if (depth > 0) --depth;
      i = TagEnd(text, i);
      out += ' ';
      continue;
    }
    if (depth == 0) out += text[i];
    ++i;
  }
  return out;
}

std::string RemoveImageTags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<' && OpensTag(text, i, "img")) {
      i = TagEnd(text, i);
      out += ' ';
      continue;
    }
    out += text[i++];
  }
  return out;
}

std::string RemoveQuoteLines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    const bool last = nl == std::string_view::npos;
    if (last) nl = text.size();
    const std::string_view line = text.substr(start, nl - start);
    const std::string_view body = Trim(line);
    if (body.empty() || body.front() != '>') out += line;
    if (last) break;
    out += '\n';
    start = nl + 1;
  }
  return out;
}

bool IsUrlToken(std::string_view token) {
  if (token.find("://") != std::string_view::npos) return true;
  std::size_t b = 0;
  while (b < token.size() && IsAsciiPunct(token[b])) ++b;
  return MatchesAt(token, b, "www.");
}

std::string RemoveUrls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (IsAsciiSpace(text[i])) {
      out += text[i++];
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !IsAsciiSpace(text[i])) ++i;
    const std::string_view token = text.substr(start, i - start);
    if (IsUrlToken(token)) {
      out += ' ';
    } else {
      out += token;
    }
  }
  return out;
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsAsciiSpace(text[i])) {
      out += text[i++];
      continue;
    }
    bool newline = false;
    while (i < text.size() && IsAsciiSpace(text[i])) {
      newline = newline || text[i] == '\n';
      ++i;
    }
    out += newline ? '\n' : ' ';
  }
  return std::string(Trim(out));
}

std::string StripOnce(std::string_view text) {
  std::string s = RemoveBlockquotes(text);
  s = RemoveImageTags(s);
  s = RemoveQuoteLines(s);
  s = RemoveUrls(s);
  return CollapseWhitespace(s);
}

}  // namespace

std::string StripMarkup(std::string_view body_raw) {
  std::string current = StripOnce(body_raw);
  for (;;) {
    std::string next = StripOnce(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

}  // namespace triagekit
