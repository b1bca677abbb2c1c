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

#include "triagekit/featurize/feature_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit {

std::string_view AggregationName(Aggregation a) noexcept {
  switch (a) {
    case Aggregation::kMean: return "mean";
    case Aggregation::kMax: return "max";
    case Aggregation::kMin: return "min";
    case Aggregation::kPost: return "post";
  }
  return "post";
}

std::optional<Aggregation> ParseAggregation(std::string_view name) noexcept {
  for (auto a : {Aggregation::kMean, Aggregation::kMax, Aggregation::kMin,
                 Aggregation::kPost}) {
    if (AggregationName(a) == name) return a;
  }
  return std::nullopt;
}

std::string ColumnDescriptor::Name() const {
  return extractor + "/" + base_feature + "/" +
         std::string(AggregationName(aggregation));
}

std::optional<ColumnDescriptor> ColumnDescriptor::FromName(std::string_view name) {
  const auto first = name.find('/');
  const auto last = name.rfind('/');
  if (first == std::string_view::npos || first == last) return std::nullopt;
  const auto agg = ParseAggregation(name.substr(last + 1));
  if (!agg) return std::nullopt;
  ColumnDescriptor d{std::string(name.substr(0, first)),
                     std::string(name.substr(first + 1, last - first - 1)), *agg};
  if (d.extractor.empty() || d.base_feature.empty()) return std::nullopt;
  return d;
}

FeatureTable::FeatureTable(std::vector<std::string> row_ids,
                           std::vector<ColumnDescriptor> columns,
                           std::vector<double> values,
                           std::vector<bool> degenerate)
    : row_ids_(std::move(row_ids)),
      columns_(std::move(columns)),
      values_(std::move(values)),
      degenerate_(std::move(degenerate)) {
  if (degenerate_.empty()) degenerate_.assign(row_ids_.size(), false);
  if (degenerate_.size() != row_ids_.size()) {
    throw DataError("feature table: degenerate flags do not match row count");
  }
  if (values_.size() != row_ids_.size() * columns_.size()) {
    throw DataError("feature table: expected " +
                    std::to_string(row_ids_.size() * columns_.size()) +
                    " values, found " + std::to_string(values_.size()));
  }
  std::set<std::string> names;
  for (const auto& c : columns_) {
    if (!names.insert(c.Name()).second) {
      throw DataError("feature table: duplicate column '" + c.Name() + "'");
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("feature table: non-finite value at row '" +
                      row_ids_[i / columns_.size()] + "', column '" +
                      columns_[i % columns_.size()].Name() + "'");
    }
  }
}

std::vector<double> FeatureTable::column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

std::optional<std::size_t> FeatureTable::RowOf(std::string_view id) const {
  auto it = std::find(row_ids_.begin(), row_ids_.end(), id);
  if (it == row_ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - row_ids_.begin());
}

FeatureTable FeatureTable::SelectRows(std::span<const std::string> ids) const {
  std::map<std::string_view, std::size_t> index;
  for (std::size_t r = 0; r < rows(); ++r) index.emplace(row_ids_[r], r);
  std::vector<std::string> out_ids;
  std::vector<double> out_values;
  std::vector<bool> out_degenerate;
  out_values.reserve(ids.size() * cols());
  for (const auto& id : ids) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw DataError("feature table has no row for post '" + id + "'");
    }
    out_ids.push_back(id);
    const auto r = row(it->second);
    out_values.insert(out_values.end(), r.begin(), r.end());
    out_degenerate.push_back(degenerate_[it->second]);
  }
  return FeatureTable(std::move(out_ids), columns_, std::move(out_values),
                      std::move(out_degenerate));
}

FeatureTable FeatureTable::Concat(const FeatureTable& left,
                                  const FeatureTable& right) {
  if (left.row_ids_ != right.row_ids_) {
    throw DataError("cannot concatenate feature tables with different rows");
  }
  std::vector<ColumnDescriptor> columns = left.columns_;
  columns.insert(columns.end(), right.columns_.begin(), right.columns_.end());
  std::vector<double> values;
  values.reserve(left.values_.size() + right.values_.size());
  std::vector<bool> degenerate(left.rows());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    auto a = left.row(r);
    auto b = right.row(r);
    values.insert(values.end(), a.begin(), a.end());
    values.insert(values.end(), b.begin(), b.end());
    degenerate[r] = left.degenerate_[r] || right.degenerate_[r];
  }
  return FeatureTable(left.row_ids_, std::move(columns), std::move(values),
                      std::move(degenerate));
}

std::string FeatureTable::Serialize() const {
  std::string out = "#triagekit-features/1\n";
  std::string flagged;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (!degenerate_[r]) continue;
    if (!flagged.empty()) flagged += ',';
    flagged += row_ids_[r];
  }
  if (!flagged.empty()) out += "#degenerate\t" + flagged + "\n";
  out += "post_id";
  for (const auto& c : columns_) {
    out += '\t';
    out += c.Name();
  }
  out += '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    out += row_ids_[r];
    for (double v : row(r)) {
      out += '\t';
      out += FormatDouble(v);
    }
    out += '\n';
  }
  return out;
}

FeatureTable FeatureTable::Parse(std::string_view content) {
  const auto lines = SplitLines(content);
  if (lines.empty() || lines[0] != "#triagekit-features/1") {
    throw DataError("feature table: missing '#triagekit-features/1' header");
  }
  std::size_t next = 1;
  std::set<std::string, std::less<>> flagged;
  if (next < lines.size() && StartsWith(lines[next], "#degenerate\t")) {
    for (auto id : SplitOn(std::string_view(lines[next]).substr(12), ',')) {
      flagged.emplace(id);
    }
    ++next;
  }
  if (next >= lines.size()) throw DataError("feature table: missing column header");
  const auto header = SplitOn(lines[next], '\t');
  if (header.empty() || header[0] != "post_id") {
    throw DataError("feature table: header must start with 'post_id'");
  }
  std::vector<ColumnDescriptor> columns;
  for (std::size_t c = 1; c < header.size(); ++c) {
    auto d = ColumnDescriptor::FromName(header[c]);
    if (!d) {
      throw DataError("feature table: bad column name '" +
                      std::string(header[c]) + "'");
    }
    columns.push_back(std::move(*d));
  }
  std::vector<std::string> ids;
  std::vector<double> values;
  std::vector<bool> degenerate;
  for (std::size_t i = next + 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = SplitOn(lines[i], '\t');
    if (fields.size() != header.size()) {
      throw DataError("feature table line " + std::to_string(i + 1) +
                      ": expected " + std::to_string(header.size()) + " fields");
    }
    ids.emplace_back(fields[0]);
    degenerate.push_back(flagged.count(fields[0]) != 0);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto v = ParseDouble(fields[c]);
      if (!v) {
        throw DataError("feature table line " + std::to_string(i + 1) +
                        ": invalid number '" + std::string(fields[c]) + "'");
      }
      values.push_back(*v);
    }
  }
  return FeatureTable(std::move(ids), std::move(columns), std::move(values),
                      std::move(degenerate));
}

FeatureTable FeatureTable::Load(const std::filesystem::path& path) {
  try {
    return Parse(ReadFile(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void FeatureTable::Save(const std::filesystem::path& path) const {
  WriteFileAtomic(path, Serialize());
}

AggregatedPost AggregatePost(std::span<const std::vector<double>> block,
                             std::size_t dim) {
  AggregatedPost out;
  out.values.assign(3 * dim, 0.0);
  if (block.empty()) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t s = 0; s < block.size(); ++s) {
    if (block[s].size() != dim) {
      throw DataError("ragged sentence block: row " + std::to_string(s) +
                      " has " + std::to_string(block[s].size()) +
                      " values, expected " + std::to_string(dim));
    }
  }
  for (std::size_t d = 0; d < dim; ++d) {
    double sum = 0.0;
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& row : block) {
      sum += row[d];
      hi = std::max(hi, row[d]);
      lo = std::min(lo, row[d]);
    }
    // The mean can drift outside [min, max] by rounding; clamp keeps the
    // ordering invariant exact.
    out.values[d] = std::clamp(sum / static_cast<double>(block.size()), lo, hi);
    out.values[dim + d] = hi;
    out.values[2 * dim + d] = lo;
  }
  return out;
}

}  // namespace triagekit
