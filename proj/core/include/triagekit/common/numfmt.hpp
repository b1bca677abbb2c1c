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

#ifndef TRIAGEKIT_COMMON_NUMFMT_HPP_
#define TRIAGEKIT_COMMON_NUMFMT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace triagekit {

// Shortest decimal text that parses back to the same double. Non-finite
// values print as "inf", "-inf" and "nan".
std::string FormatDouble(double v);

// Like FormatDouble but always carries a decimal point or exponent, so that
// 0 prints as "0.0" (the canonical pipeline text uses this form).
std::string FormatDoubleLiteral(double v);

// Strict parses: the whole string must be consumed.
std::optional<double> ParseDouble(std::string_view s);
std::optional<std::int64_t> ParseInt(std::string_view s);

}  // namespace triagekit

#endif  // TRIAGEKIT_COMMON_NUMFMT_HPP_
