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

#include "triagekit/corpus/labels.hpp"

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit {

std::string_view CoarseName(Coarse c) noexcept {
  switch (c) {
    case Coarse::kGreen: return "green";
    case Coarse::kAmber: return "amber";
    case Coarse::kRed: return "red";
    case Coarse::kCrisis: return "crisis";
  }
  return "green";
}

std::string_view CoarseTitle(Coarse c) noexcept {
  switch (c) {
    case Coarse::kGreen: return "Green";
    case Coarse::kAmber: return "Amber";
    case Coarse::kRed: return "Red";
    case Coarse::kCrisis: return "Crisis";
  }
  return "Green";
}

std::optional<Coarse> ParseCoarse(std::string_view name) noexcept {
  for (Coarse c : kAllCoarse) {
    if (CoarseName(c) == name) return c;
  }
  return std::nullopt;
}

void LabelMap::Add(std::string granular, Coarse coarse) {
  if (granular.empty()) throw DataError("label map: empty granular tag");
  auto [it, inserted] = entries_.emplace(granular, coarse);
  if (!inserted && it->second != coarse) {
    throw DataError("label map: granular tag '" + granular +
                    "' mapped to both " + std::string(CoarseName(it->second)) +
                    " and " + std::string(CoarseName(coarse)));
  }
}

bool LabelMap::Contains(std::string_view granular) const {
  return entries_.find(granular) != entries_.end();
}

Coarse LabelMap::Map(std::string_view granular) const {
  auto it = entries_.find(granular);
  if (it == entries_.end()) {
    throw DataError("unknown granular label '" + std::string(granular) + "'");
  }
  return it->second;
}

LabelMap LabelMap::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path));
}

LabelMap LabelMap::Parse(std::string_view content) {
  LabelMap map;
  const auto lines = SplitLines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const auto fields = SplitOn(lines[i], '\t');
    if (fields.size() != 2) {
      throw DataError("label map line " + std::to_string(i + 1) +
                      ": expected 2 tab-separated fields");
    }
    if (i == 0 && fields[0] == "granular") continue;
    const auto coarse = ParseCoarse(fields[1]);
    if (!coarse) {
      throw DataError("label map line " + std::to_string(i + 1) +
                      ": unknown coarse label '" + std::string(fields[1]) +
                      "'");
    }
    map.Add(std::string(fields[0]), *coarse);
  }
  return map;
}

std::string LabelMap::Serialize() const {
  std::string out = "granular\tcoarse\n";
  for (const auto& [tag, coarse] : entries_) {
    out += tag;
    out += '\t';
    out += CoarseName(coarse);
    out += '\n';
  }
  return out;
}

std::vector<Coarse> MapLabels(const std::vector<std::string>& granular,
                              const LabelMap& map) {
  std::vector<Coarse> out;
  out.reserve(granular.size());
  for (const auto& g : granular) out.push_back(map.Map(g));
  return out;
}

}  // namespace triagekit
