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

#ifndef TRIAGEKIT_CLI_COMMANDS_HPP_
#define TRIAGEKIT_CLI_COMMANDS_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "triagekit_cli/config.hpp"

namespace triagekit::cli {

// Inputs read and artifacts written by one run, persisted as
// `<out>/manifest-<subcommand>.json`.
class Manifest {
 public:
  void AddInput(const std::filesystem::path& path);
  // Writes atomically and records the output.
  void Write(const std::filesystem::path& path, std::string_view content);

  const std::vector<std::filesystem::path>& outputs() const { return outputs_; }
  Json ToJson() const;

 private:
  Json inputs_ = Json::array();
  std::vector<std::filesystem::path> outputs_;
};

const std::vector<std::string>& SubcommandNames();

// Executes `name`; throws triagekit::Error subclasses on failure.
void RunSubcommand(std::string_view name, const RunConfig& config, Manifest& manifest,
                   std::ostream& out);

}  // namespace triagekit::cli

#endif  // TRIAGEKIT_CLI_COMMANDS_HPP_
