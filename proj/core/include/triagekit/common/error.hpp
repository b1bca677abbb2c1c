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

#ifndef TRIAGEKIT_COMMON_ERROR_HPP_
#define TRIAGEKIT_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace triagekit {

// Error categories. The command-line front end maps them onto exit codes
// (usage 1, data 2, runtime 3).
enum class ErrorKind { kUsage, kData, kRuntime };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Bad configuration or invocation.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ErrorKind::kUsage, message) {}
};

// Input files or values violate a documented format or invariant.
class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ErrorKind::kData, message) {}
};

// Failure while computing (budget exhausted, numerical breakdown, I/O).
class RuntimeFailure : public Error {
 public:
  explicit RuntimeFailure(const std::string& message)
      : Error(ErrorKind::kRuntime, message) {}
};

}  // namespace triagekit

#endif  // TRIAGEKIT_COMMON_ERROR_HPP_
