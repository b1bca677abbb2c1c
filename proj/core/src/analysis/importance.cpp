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

#include "triagekit/analysis/importance.hpp"

#include <algorithm>
#include <cmath>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/parallel.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/common/text.hpp"
#include "triagekit/eval/metrics.hpp"

namespace triagekit {
namespace {

double Score(const FittedPipeline& model, const Matrix& x,
             std::span<const Coarse> truth, ScoreMetric metric) {
  std::vector<Coarse> pred;
  pred.reserve(x.rows);
  for (int code : model.PredictCodes(x)) pred.push_back(model.CoarseOf(code));
  return metric == ScoreMetric::kMacroF1All ? MacroF1All(truth, pred)
                                            : MacroF1ExclGreen(truth, pred);
}

}  // namespace

std::string_view ScoreMetricName(ScoreMetric m) noexcept {
  return m == ScoreMetric::kMacroF1All ? "macro_f1_all" : "macro_f1_excl_green";
}

ImportanceReport PermutationImportance(const FittedPipeline& model,
                                       const FeatureTable& x,
                                       std::span<const std::string> y_granular,
                                       ScoreMetric metric, std::size_t n_repeats,
                                       std::uint64_t seed, int threads) {
  if (n_repeats < 1) throw UsageError("importance needs at least one repeat");
  if (x.rows() != y_granular.size()) {
    throw DataError("importance table and labels differ in length");
  }
  model.CheckColumns(x);
  std::vector<Coarse> truth;
  for (const auto& tag : y_granular) truth.push_back(model.label_map().Map(tag));
  const Matrix base = Matrix::FromTable(x);

  ImportanceReport report;
  report.metric = metric;
  report.base_score = Score(model, base, truth, metric);

  std::vector<char> used(x.cols(), 0);
  for (std::size_t c : model.UsedInputColumns()) used[c] = 1;

  report.entries.resize(x.cols());
  std::vector<double> drops(x.cols() * n_repeats, 0.0);
  ParallelFor(x.cols() * n_repeats, threads, [&](std::size_t task) {
    const std::size_t c = task / n_repeats;
    const std::size_t rep = task % n_repeats;
    if (!used[c]) return;
    std::vector<double> column = x.column(c);
    Rng rng(seed, "importance/" + std::to_string(c), rep);
    rng.Shuffle(std::span<double>(column));
    Matrix shuffled = base;
    for (std::size_t r = 0; r < shuffled.rows; ++r) shuffled(r, c) = column[r];
    drops[task] = report.base_score - Score(model, shuffled, truth, metric);
  });
  for (std::size_t c = 0; c < x.cols(); ++c) {
    auto& e = report.entries[c];
    e.column = c;
    e.name = x.columns()[c].Name();
    e.n_repeats = n_repeats;
    double sum = 0.0;
    for (std::size_t rep = 0; rep < n_repeats; ++rep) sum += drops[c * n_repeats + rep];
    e.mean_drop = sum / static_cast<double>(n_repeats);
    double ss = 0.0;
    for (std::size_t rep = 0; rep < n_repeats; ++rep) {
      const double d = drops[c * n_repeats + rep] - e.mean_drop;
      ss += d * d;
    }
    e.std = std::sqrt(ss / static_cast<double>(n_repeats));
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const ImportanceEntry& a, const ImportanceEntry& b) {
              if (a.mean_drop != b.mean_drop) return a.mean_drop > b.mean_drop;
              return a.column < b.column;
            });
  return report;
}

std::string SerializeImportance(const ImportanceReport& report) {
  std::string out = "#metric\t" + std::string(ScoreMetricName(report.metric)) + "\n";
  out += "#base_score\t" + FormatDouble(report.base_score) + "\n";
  out += "feature\tcolumn\tmean_drop\tstd\tn_repeats\n";
  for (const auto& e : report.entries) {
    out += e.name + "\t" + std::to_string(e.column) + "\t" + FormatDouble(e.mean_drop) +
           "\t" + FormatDouble(e.std) + "\t" + std::to_string(e.n_repeats) + "\n";
  }
  return out;
}

ImportanceReport ParseImportance(std::string_view content) {
  ImportanceReport report;
  bool header = false;
  const auto lines = SplitLines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    const auto f = SplitOn(line, '\t');
    auto fail = [&](const std::string& what) {
      return DataError("importance line " + std::to_string(i + 1) + ": " + what);
    };
    if (f[0] == "#metric" && f.size() == 2) {
      if (f[1] == "macro_f1_all") report.metric = ScoreMetric::kMacroF1All;
      else if (f[1] == "macro_f1_excl_green") report.metric = ScoreMetric::kMacroF1ExclGreen;
      else throw fail("unknown metric");
      continue;
    }
    if (f[0] == "#base_score" && f.size() == 2) {
      const auto v = ParseDouble(f[1]);
      if (!v) throw fail("bad base score");
      report.base_score = *v;
      continue;
    }
    if (f[0] == "feature") {
      header = true;
      continue;
    }
    if (!header || f.size() != 5) throw fail("malformed row");
    const auto col = ParseInt(f[1]);
    const auto mean = ParseDouble(f[2]);
    const auto sd = ParseDouble(f[3]);
    const auto reps = ParseInt(f[4]);
    if (!col || *col < 0 || !mean || !sd || !reps || *reps < 1) throw fail("bad value");
    report.entries.push_back(ImportanceEntry{static_cast<std::size_t>(*col),
                                             std::string(f[0]), *mean, *sd,
                                             static_cast<std::size_t>(*reps)});
  }
  if (!header) throw DataError("importance file has no header");
  return report;
}

}  // namespace triagekit
