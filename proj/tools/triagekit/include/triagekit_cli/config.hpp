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

#ifndef TRIAGEKIT_CLI_CONFIG_HPP_
#define TRIAGEKIT_CLI_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace triagekit::cli {

using Json = nlohmann::json;

// Effective configuration: the config file with `--set` overrides and the
// global flags applied on top. Paths are resolved against the config file's
// directory (or the working directory without a file).
class RunConfig {
 public:
  RunConfig() = default;
  RunConfig(Json root, std::filesystem::path base_dir);

  // Reads a JSON config file. Throws UsageError when it is missing or
  // malformed.
  static RunConfig Load(const std::filesystem::path& path);

  // `dotted.key=value`; the value is parsed as JSON when possible and kept as
  // a string otherwise.
  void Set(std::string_view assignment);
  void SetValue(std::string_view dotted_key, Json value);

  const Json& root() const { return root_; }
  bool Has(std::string_view dotted_key) const;
  const Json* Find(std::string_view dotted_key) const;

  std::string String(std::string_view key, std::string fallback) const;
  std::optional<std::string> OptString(std::string_view key) const;
  std::uint64_t Unsigned(std::string_view key, std::uint64_t fallback) const;
  double Real(std::string_view key, double fallback) const;
  bool Bool(std::string_view key, bool fallback) const;

  // Required path; UsageError naming `key` when absent, or when
  // `must_exist` and the file does not exist.
  std::filesystem::path Path(std::string_view key, bool must_exist = true) const;
  std::optional<std::filesystem::path> OptPath(std::string_view key,
                                               bool must_exist = true) const;

  // Master seed; UsageError when absent (there is no clock-based default).
  std::uint64_t Seed() const;
  int Threads() const;
  std::filesystem::path OutDir() const;

  // FNV-1a-64 of the canonical dump, hex.
  std::string Hash() const;

  // Relative paths are taken from the config file's directory.
  std::filesystem::path Resolve(const std::string& p) const;

 private:
  Json root_ = Json::object();
  std::filesystem::path base_dir_;
};

}  // namespace triagekit::cli

#endif  // TRIAGEKIT_CLI_CONFIG_HPP_
