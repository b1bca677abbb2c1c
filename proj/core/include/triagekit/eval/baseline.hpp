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

#ifndef TRIAGEKIT_EVAL_BASELINE_HPP_
#define TRIAGEKIT_EVAL_BASELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace triagekit {

struct BaselineReport {
  std::size_t n = 0;
  std::size_t n_shuffles = 0;
  double alpha = 0.05;
  std::size_t n_tests = 8;
  double mean = 0.0;
  std::size_t threshold_rank = 0;
  double threshold = 0.0;
  // Trial scores in trial order. Not serialized.
  std::vector<double> trials;
};

// floor(alpha / n_tests * n_shuffles); 62 for the defaults.
std::size_t ThresholdRank(double alpha, std::size_t n_tests, std::size_t n_shuffles);

// Trial t scores MacroF1All(y, shuffle(y)) with the shuffle drawn from stream
// (seed, "shuffle", t). The threshold is the rank-th largest trial score.
// Throws UsageError when the rank is 0 or exceeds n_shuffles, DataError on
// empty labels.
BaselineReport RandomBaseline(std::span<const int> y, std::size_t n_shuffles = 10000,
                              double alpha = 0.05, std::size_t n_tests = 8,
                              std::uint64_t seed = 0, int threads = 1);

// Labels given as a count per class, laid out class by class.
std::vector<int> LabelsFromCounts(std::span<const std::size_t> counts);

std::string SerializeBaselineReport(const BaselineReport& report);
BaselineReport ParseBaselineReport(std::string_view content);

}  // namespace triagekit

#endif  // TRIAGEKIT_EVAL_BASELINE_HPP_
