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

#include "triagekit/eval/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit {
namespace {

constexpr std::string_view kMetricsFormat = "triagekit-metrics/1";

double ClassF1(std::span<const int> y_true, std::span<const int> y_pred, int c) {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool t = y_true[i] == c;
    const bool p = y_pred[i] == c;
    tp += t && p;
    fp += !t && p;
    fn += t && !p;
  }
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

std::vector<int> Codes(std::span<const Coarse> v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (Coarse c : v) out.push_back(Ordinal(c));
  return out;
}

}  // namespace

double MacroF1(std::span<const int> y_true, std::span<const int> y_pred,
               std::span<const int> included) {
  if (y_true.size() != y_pred.size()) {
    throw DataError("macro-F1 length mismatch: " + std::to_string(y_true.size()) +
                    " truths vs " + std::to_string(y_pred.size()) + " predictions");
  }
  if (included.empty()) throw UsageError("macro-F1 needs at least one class");
  double sum = 0.0;
  for (int c : included) sum += ClassF1(y_true, y_pred, c);
  return sum / static_cast<double>(included.size());
}

double MacroF1(std::span<const Coarse> y_true, std::span<const Coarse> y_pred,
               std::span<const Coarse> included) {
  return MacroF1(Codes(y_true), Codes(y_pred), Codes(included));
}

double MacroF1All(std::span<const int> y_true, std::span<const int> y_pred) {
  std::set<int> present(y_true.begin(), y_true.end());
  present.insert(y_pred.begin(), y_pred.end());
  if (present.empty()) return 0.0;
  const std::vector<int> included(present.begin(), present.end());
  return MacroF1(y_true, y_pred, included);
}

double MacroF1All(std::span<const Coarse> y_true, std::span<const Coarse> y_pred) {
  return MacroF1All(Codes(y_true), Codes(y_pred));
}

double MacroF1ExclGreen(std::span<const Coarse> y_true,
                        std::span<const Coarse> y_pred) {
  return MacroF1(y_true, y_pred, kNonGreen);
}

MetricReport BuildMetricReport(std::span<const Coarse> y_true,
                               std::span<const Coarse> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw DataError("metric report length mismatch");
  }
  MetricReport r;
  r.n = y_true.size();
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    ++r.confusion[static_cast<std::size_t>(Ordinal(y_true[i]))]
                 [static_cast<std::size_t>(Ordinal(y_pred[i]))];
  }
  for (std::size_t c = 0; c < kNumCoarse; ++c) {
    std::size_t predicted = 0;
    std::size_t support = 0;
    for (std::size_t o = 0; o < kNumCoarse; ++o) {
      predicted += r.confusion[o][c];
      support += r.confusion[c][o];
    }
    const auto tp = static_cast<double>(r.confusion[c][c]);
    auto& m = r.per_class[c];
    m.support = support;
    m.precision = predicted == 0 ? 0.0 : tp / static_cast<double>(predicted);
    m.recall = support == 0 ? 0.0 : tp / static_cast<double>(support);
    const std::size_t denom = predicted + support;
    m.f1 = denom == 0 ? 0.0 : 2.0 * tp / static_cast<double>(denom);
  }
  r.macro_f1_all = MacroF1All(y_true, y_pred);
  r.macro_f1_excl_green = MacroF1ExclGreen(y_true, y_pred);
  return r;
}

MetricReport EvaluateHeldout(const FittedPipeline& model, const FeatureTable& x,
                             std::span<const std::string> y_granular, int threads) {
  if (x.rows() != y_granular.size()) {
    throw DataError("test table has " + std::to_string(x.rows()) + " rows but " +
                    std::to_string(y_granular.size()) + " labels");
  }
  std::vector<Coarse> truth;
  truth.reserve(y_granular.size());
  for (const auto& tag : y_granular) truth.push_back(model.label_map().Map(tag));
  const auto pred = model.PredictCoarse(x, threads);
  return BuildMetricReport(truth, pred);
}

std::string SerializeMetricReport(const MetricReport& r) {
  std::string out(kMetricsFormat);
  out += "\nn\t" + std::to_string(r.n) + "\n";
  out += "macro_f1_all\t" + FormatDouble(r.macro_f1_all) + "\n";
  out += "macro_f1_excl_green\t" + FormatDouble(r.macro_f1_excl_green) + "\n";
  for (Coarse c : kAllCoarse) {
    const auto& m = r.of(c);
    out += "[class " + std::string(CoarseName(c)) + "]\n";
    out += "support\t" + std::to_string(m.support) + "\n";
    out += "precision\t" + FormatDouble(m.precision) + "\n";
    out += "recall\t" + FormatDouble(m.recall) + "\n";
    out += "f1\t" + FormatDouble(m.f1) + "\n";
  }
  out += "[confusion]\n";
  for (Coarse c : kAllCoarse) {
    out += std::string(CoarseName(c));
    for (std::size_t p = 0; p < kNumCoarse; ++p) {
      out += '\t';
      out += std::to_string(r.confusion[static_cast<std::size_t>(Ordinal(c))][p]);
    }
    out += '\n';
  }
  return out;
}

MetricReport ParseMetricReport(std::string_view content) {
  const auto lines = SplitLines(content);
  if (lines.empty() || lines[0] != kMetricsFormat) {
    throw DataError("not a metrics file (expected '" + std::string(kMetricsFormat) + "')");
  }
  MetricReport r;
  std::string section;
  std::set<std::string> seen;
  auto bad = [](std::size_t line, const std::string& what) {
    return DataError("metrics line " + std::to_string(line + 1) + ": " + what);
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = std::string(line);
      continue;
    }
    const auto f = SplitOn(line, '\t');
    auto num = [&](std::string_view s) {
      auto v = ParseDouble(s);
      if (!v) throw bad(i, "bad number '" + std::string(s) + "'");
      return *v;
    };
    auto count = [&](std::string_view s) {
      auto v = ParseInt(s);
      if (!v || *v < 0) throw bad(i, "bad count '" + std::string(s) + "'");
      return static_cast<std::size_t>(*v);
    };
    if (section == "[confusion]") {
      const auto c = ParseCoarse(f[0]);
      if (!c || f.size() != kNumCoarse + 1) throw bad(i, "bad confusion row");
      for (std::size_t p = 0; p < kNumCoarse; ++p) {
        r.confusion[static_cast<std::size_t>(Ordinal(*c))][p] = count(f[p + 1]);
      }
      continue;
    }
    if (f.size() != 2) throw bad(i, "expected key<TAB>value");
    seen.insert(section + std::string(f[0]));
    if (section.empty()) {
      if (f[0] == "n") r.n = count(f[1]);
      else if (f[0] == "macro_f1_all") r.macro_f1_all = num(f[1]);
      else if (f[0] == "macro_f1_excl_green") r.macro_f1_excl_green = num(f[1]);
      else throw bad(i, "unknown key '" + std::string(f[0]) + "'");
      continue;
    }
    if (!StartsWith(section, "[class ")) throw bad(i, "unknown section " + section);
    const auto c = ParseCoarse(section.substr(7, section.size() - 8));
    if (!c) throw bad(i, "unknown class in " + section);
    auto& m = r.per_class[static_cast<std::size_t>(Ordinal(*c))];
    if (f[0] == "support") m.support = count(f[1]);
    else if (f[0] == "precision") m.precision = num(f[1]);
    else if (f[0] == "recall") m.recall = num(f[1]);
    else if (f[0] == "f1") m.f1 = num(f[1]);
    else throw bad(i, "unknown key '" + std::string(f[0]) + "'");
  }
  for (const char* key : {"n", "macro_f1_all", "macro_f1_excl_green"}) {
    if (seen.count(key) == 0) throw DataError(std::string("metrics file lacks ") + key);
  }
  return r;
}

}  // namespace triagekit
