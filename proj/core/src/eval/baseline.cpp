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

#include "triagekit/eval/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/parallel.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/common/text.hpp"
#include "triagekit/eval/metrics.hpp"

namespace triagekit {
namespace {

constexpr std::string_view kBaselineFormat = "triagekit-baseline/1";

}  // namespace

std::size_t ThresholdRank(double alpha, std::size_t n_tests, std::size_t n_shuffles) {
  if (n_tests == 0) throw UsageError("n_tests must be at least 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in (0, 1]");
  // The epsilon absorbs representation error in products that are integral.
  const double r = alpha / static_cast<double>(n_tests) * static_cast<double>(n_shuffles);
  return static_cast<std::size_t>(std::floor(r + 1e-9));
}

BaselineReport RandomBaseline(std::span<const int> y, std::size_t n_shuffles,
                              double alpha, std::size_t n_tests, std::uint64_t seed,
                              int threads) {
  if (y.empty()) throw DataError("random baseline needs at least one label");
  const std::size_t rank = ThresholdRank(alpha, n_tests, n_shuffles);
  if (rank == 0 || rank > n_shuffles) {
    throw UsageError("threshold rank " + std::to_string(rank) +
                     " is outside 1.." + std::to_string(n_shuffles) +
                     "; increase n_shuffles");
  }
  std::set<int> present(y.begin(), y.end());
  const std::vector<int> included(present.begin(), present.end());

  BaselineReport report;
  report.n = y.size();
  report.n_shuffles = n_shuffles;
  report.alpha = alpha;
  report.n_tests = n_tests;
  report.threshold_rank = rank;
  report.trials.assign(n_shuffles, 0.0);
  ParallelFor(n_shuffles, threads, [&](std::size_t t) {
    std::vector<int> shuffled(y.begin(), y.end());
    Rng rng(seed, "shuffle", t);
    rng.Shuffle(std::span<int>(shuffled));
    // A shuffle preserves the label multiset, so the present classes are fixed.
    report.trials[t] = MacroF1(y, shuffled, included);
  });
  double sum = 0.0;
  for (double v : report.trials) sum += v;
  report.mean = sum / static_cast<double>(n_shuffles);
  std::vector<double> sorted = report.trials;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   sorted.end(), std::greater<>());
  report.threshold = sorted[rank - 1];
  return report;
}

std::vector<int> LabelsFromCounts(std::span<const std::size_t> counts) {
  std::vector<int> y;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    y.insert(y.end(), counts[c], static_cast<int>(c));
  }
  return y;
}

std::string SerializeBaselineReport(const BaselineReport& r) {
  std::string out(kBaselineFormat);
  out += "\nn\t" + std::to_string(r.n);
  out += "\nn_shuffles\t" + std::to_string(r.n_shuffles);
  out += "\nalpha\t" + FormatDouble(r.alpha);
  out += "\nn_tests\t" + std::to_string(r.n_tests);
  out += "\nmean\t" + FormatDouble(r.mean);
  out += "\nthreshold_rank\t" + std::to_string(r.threshold_rank);
  out += "\nthreshold\t" + FormatDouble(r.threshold);
  out += "\n";
  return out;
}

BaselineReport ParseBaselineReport(std::string_view content) {
  const auto lines = SplitLines(content);
  if (lines.empty() || lines[0] != kBaselineFormat) {
    throw DataError("not a baseline file (expected '" + std::string(kBaselineFormat) + "')");
  }
  BaselineReport r;
  std::size_t fields = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = SplitOn(lines[i], '\t');
    if (f.size() != 2) throw DataError("baseline line " + std::to_string(i + 1) + " malformed");
    const auto num = ParseDouble(f[1]);
    const auto count = ParseInt(f[1]);
    if (!num) throw DataError("baseline line " + std::to_string(i + 1) + ": bad value");
    auto as_count = [&] {
      if (!count || *count < 0) {
        throw DataError("baseline line " + std::to_string(i + 1) + ": bad count");
      }
      return static_cast<std::size_t>(*count);
    };
    if (f[0] == "n") r.n = as_count();
    else if (f[0] == "n_shuffles") r.n_shuffles = as_count();
    else if (f[0] == "alpha") r.alpha = *num;
    else if (f[0] == "n_tests") r.n_tests = as_count();
    else if (f[0] == "mean") r.mean = *num;
    else if (f[0] == "threshold_rank") r.threshold_rank = as_count();
    else if (f[0] == "threshold") r.threshold = *num;
    else throw DataError("baseline line " + std::to_string(i + 1) + ": unknown key");
    ++fields;
  }
  if (fields != 7) throw DataError("baseline file is incomplete");
  return r;
}

}  // namespace triagekit
