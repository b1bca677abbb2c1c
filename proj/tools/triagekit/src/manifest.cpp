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

#include <cstdio>

#include "triagekit/common/io.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit_cli/commands.hpp"

namespace triagekit::cli {
namespace {

std::string Hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void Manifest::AddInput(const std::filesystem::path& path) {
  for (const auto& in : inputs_) {
    if (in["path"] == path.string()) return;
  }
  inputs_.push_back({{"path", path.string()}, {"fnv1a64", Hex(Fnv1a64(ReadFile(path)))}});
}

void Manifest::Write(const std::filesystem::path& path, std::string_view content) {
  WriteFileAtomic(path, content);
  outputs_.push_back(path);
}

Json Manifest::ToJson() const {
  Json outs = Json::array();
  for (const auto& p : outputs_) outs.push_back(p.string());
  return {{"inputs", inputs_}, {"outputs", outs}};
}

}  // namespace triagekit::cli
