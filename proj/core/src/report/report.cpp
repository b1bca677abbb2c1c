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

#include "triagekit/report/report.hpp"

#include <algorithm>
#include <map>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit {
namespace {

constexpr std::string_view kBenchmarkHeader =
    "feature_set\ttrainer\tfeatures\tcv\ttest\texternal\tbetter_than_chance";

std::string HtmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Heading(const Explanation& ex) {
  return std::string(CoarseTitle(ex.coarse)) + " (" + ex.granular + ")";
}

std::string OptionalScore(const std::optional<MetricReport>& r) {
  return r ? FormatDouble(r->macro_f1_excl_green) : std::string("-");
}

}  // namespace

std::vector<double> NormalizeMinMax(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (range == 0.0) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = std::clamp((values[i] - *lo) / range, 0.0, 1.0);
  }
  return out;
}

std::vector<ViolinDatum> EmitViolinData(const FeatureTable& table,
                                        std::span<const Coarse> labels,
                                        const ImportanceReport& importance,
                                        std::size_t top_k) {
  if (labels.size() != table.rows()) {
    throw DataError("violin export: labels and table rows differ in length");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < table.cols(); ++c) index[table.columns()[c].Name()] = c;
  std::vector<std::size_t> chosen;
  for (const auto& e : importance.entries) {
    if (chosen.size() == top_k) break;
    const auto it = index.find(e.name);
    if (it == index.end()) {
      throw DataError("importance names column '" + e.name + "' absent from the table");
    }
    if (table.columns()[it->second].aggregation != Aggregation::kMean) continue;
    chosen.push_back(it->second);
  }
  std::vector<ViolinDatum> rows;
  rows.reserve(chosen.size() * table.rows());
  for (std::size_t c : chosen) {
    const auto column = table.column(c);
    const auto norm = NormalizeMinMax(column);
    const std::string name = table.columns()[c].Name();
    for (std::size_t r = 0; r < table.rows(); ++r) {
      rows.push_back(ViolinDatum{name, labels[r], norm[r]});
    }
  }
  return rows;
}

std::string SerializeViolinData(std::span<const ViolinDatum> rows) {
  std::string out = "feature\tclass\tvalue\n";
  for (const auto& d : rows) {
    out += d.feature + "\t" + std::string(CoarseName(d.coarse)) + "\t" +
           FormatDouble(d.value) + "\n";
  }
  return out;
}

std::string EmitHighlightDoc(std::span<const Explanation> explanations,
                             HighlightFormat format) {
  const bool html = format == HighlightFormat::kHtml;
  std::string out;
  if (html) {
    out +=
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
        "<title>Token masking</title>\n<style>\n"
        ".shift-yellow { background: #ffe066; }\n"
        ".shift-red { background: #ff8787; }\n"
        ".shift-green { background: #8ce99a; }\n"
        "</style>\n</head>\n<body>\n";
  }
  for (const auto& ex : explanations) {
    const auto tokens = Tokenize(ex.text);
    if (tokens.size() != ex.tokens.size()) {
      throw DataError("explanation for '" + ex.post_id +
                      "' does not match the tokenization of its text");
    }
    std::string body;
    std::size_t cursor = 0;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      const std::string_view gap(ex.text.data() + cursor, tokens[t].begin - cursor);
      body += html ? HtmlEscape(gap) : std::string(gap);
      const ShiftTag tag = TagForShift(ex.tokens[t].shift);
      const std::string& word = tokens[t].text;
      if (tag == ShiftTag::kNone) {
        body += html ? HtmlEscape(word) : word;
      } else if (html) {
        const char* cls = tag == ShiftTag::kYellow ? "shift-yellow"
                          : tag == ShiftTag::kRed  ? "shift-red"
                                                   : "shift-green";
        body += std::string("<span class=\"") + cls + "\">" + HtmlEscape(word) + "</span>";
      } else {
        const char code = tag == ShiftTag::kYellow ? 'y' : tag == ShiftTag::kRed ? 'r' : 'g';
        body += std::string("[") + code + ":" + word + "]";
      }
      cursor = tokens[t].end;
    }
    const std::string_view tail(ex.text.data() + cursor, ex.text.size() - cursor);
    body += html ? HtmlEscape(tail) : std::string(tail);
    if (html) {
      out += "<section>\n<h2>" + HtmlEscape(Heading(ex)) + "</h2>\n";
      if (!ex.post_id.empty()) out += "<p class=\"post-id\">" + HtmlEscape(ex.post_id) + "</p>\n";
      out += "<p>" + body + "</p>\n</section>\n";
    } else {
      out += "## " + Heading(ex) + "\n\n";
      if (!ex.post_id.empty()) out += "Post " + ex.post_id + "\n\n";
      out += body + "\n\n";
    }
  }
  if (html) out += "</body>\n</html>\n";
  return out;
}

std::string EmitBenchmarkTable(std::span<const BenchmarkEntry> entries,
                               double chance_threshold) {
  if (entries.empty()) throw UsageError("benchmark table needs at least one result");
  std::string out(kBenchmarkHeader);
  out += '\n';
  for (const auto& e : entries) {
    const bool better =
        e.external && e.external->macro_f1_excl_green > chance_threshold;
    out += EscapeField(e.feature_set) + "\t" + EscapeField(e.trainer) + "\t" +
           std::to_string(e.feature_count) + "\t" + FormatDouble(e.cv_score) + "\t" +
           OptionalScore(e.test) + "\t" + OptionalScore(e.external) + "\t" +
           (better ? "*" : "") + "\n";
  }
  return out;
}

std::vector<BenchmarkRow> ParseBenchmarkTable(std::string_view content) {
  const auto lines = SplitLines(content);
  if (lines.empty() || lines[0] != kBenchmarkHeader) {
    throw DataError("benchmark table has an unexpected header");
  }
  std::vector<BenchmarkRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = SplitOn(lines[i], '\t');
    auto fail = [&](const std::string& what) {
      return DataError("benchmark line " + std::to_string(i + 1) + ": " + what);
    };
    if (f.size() != 7) throw fail("expected 7 fields");
    auto score = [&](std::string_view s) -> std::optional<double> {
      if (s == "-") return std::nullopt;
      const auto v = ParseDouble(s);
      if (!v) throw fail("bad score '" + std::string(s) + "'");
      return v;
    };
    BenchmarkRow row;
    row.feature_set = UnescapeField(f[0]);
    row.trainer = UnescapeField(f[1]);
    const auto count = ParseInt(f[2]);
    if (!count || *count < 0) throw fail("bad feature count");
    row.feature_count = static_cast<std::size_t>(*count);
    const auto cv = score(f[3]);
    if (!cv) throw fail("missing cv score");
    row.cv_score = *cv;
    row.test_score = score(f[4]);
    row.external_score = score(f[5]);
    if (f[6] != "" && f[6] != "*") throw fail("bad marker");
    row.better_than_chance = f[6] == "*";
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace triagekit
