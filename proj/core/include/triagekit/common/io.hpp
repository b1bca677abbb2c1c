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

#ifndef TRIAGEKIT_COMMON_IO_HPP_
#define TRIAGEKIT_COMMON_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace triagekit {

// Reads a whole file; throws DataError if it cannot be opened.
std::string ReadFile(const std::filesystem::path& path);

// Splits file content into lines, dropping a trailing '\r' on each line and
// the empty tail after a final newline.
std::vector<std::string> SplitLines(std::string_view content);

// Writes via a temporary sibling and rename, so readers never observe a
// partially written file. Creates parent directories as needed.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view content);

// Backslash escaping for single-line TSV fields: \\ \t \n \r.
std::string EscapeField(std::string_view raw);
std::string UnescapeField(std::string_view escaped);

}  // namespace triagekit

#endif  // TRIAGEKIT_COMMON_IO_HPP_
