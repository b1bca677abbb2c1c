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

#ifndef TRIAGEKIT_MODEL_ANOVA_HPP_
#define TRIAGEKIT_MODEL_ANOVA_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "triagekit/model/matrix.hpp"

namespace triagekit {

// Returned when the within-group sum of squares is zero but groups differ.
inline constexpr double kInfiniteF = std::numeric_limits<double>::infinity();

// One-way ANOVA F statistic of `column` grouped by `classes`:
//   F = (SS_between / (K - 1)) / (SS_within / (N - K)).
// A constant column scores 0. Throws DataError with fewer than two classes,
// N <= K, or mismatched lengths.
double AnovaF(std::span<const double> column, std::span<const int> classes);

// F for every column of `x`.
std::vector<double> AnovaFColumns(const Matrix& x, std::span<const int> classes);

// Indices (ascending) of the k columns with the largest F; ties favour the
// lower column index. k is clamped to the column count.
std::vector<std::size_t> SelectTopK(std::span<const double> scores, std::size_t k);

}  // namespace triagekit

#endif  // TRIAGEKIT_MODEL_ANOVA_HPP_
